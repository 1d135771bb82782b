// Copyright 2026 The cowwit Authors
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

#ifndef COWWIT_ERROR_H
#define COWWIT_ERROR_H

#include <stdexcept>
#include <string>
#include <utility>

namespace cowwit {

/// Base of every exception thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-finite witness parameters.
struct InvalidParameter : Error {
    using Error::Error;
};

/// Bloch vector outside the unit ball.
struct InvalidState : Error {
    using Error::Error;
};

/// Bad ranges, grid sizes, or other call arguments.
struct InvalidArgument : Error {
    using Error::Error;
};

/// Input breaks a documented precondition (e.g. a non-symmetric matrix).
struct ContractViolation : Error {
    using Error::Error;
};

/// A detection-pattern group has no conclusive events to renormalize.
struct InsufficientData : Error {
    InsufficientData(std::string group_name)
        : Error("insufficient data: no conclusive counts in group '" + group_name + "'"),
          group(std::move(group_name)) {}
    std::string group;
};

/// A link configuration value is missing or out of range.
struct ConfigError : Error {
    ConfigError(std::string field_name, const std::string &why)
        : Error("config error: " + field_name + ": " + why), field(std::move(field_name)) {}
    std::string field;
};

/// A file could not be opened, read, or written.
struct IoError : Error {
    using Error::Error;
};

struct InputError : IoError {
    using IoError::IoError;
};

struct OutputError : IoError {
    using IoError::IoError;
};

/// Malformed counts document or config file.
struct FormatError : Error {
    using Error::Error;
};

}  // namespace cowwit

#endif
