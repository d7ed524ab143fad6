// Copyright 2026 The spinbus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPINBUS_ERRORS_HPP
#define SPINBUS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spinbus {

// Bad input files, schema violations, missing unit suffixes. CLI exit code 2.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Any failure of the numerics themselves (integrator breakdown, Fock
// truncation overflow, amplitude tuning hitting a ceiling). CLI exit code 3.
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

class TruncationError : public NumericalError {
  public:
    explicit TruncationError(const std::string& msg) : NumericalError(msg) {}
};

class TuningError : public NumericalError {
  public:
    explicit TuningError(const std::string& msg) : NumericalError(msg) {}
};

}  // namespace spinbus

#endif  // SPINBUS_ERRORS_HPP
