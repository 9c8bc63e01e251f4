// Copyright 2026 The wigtel Authors
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

#ifndef WIGTEL_ERRORS_H
#define WIGTEL_ERRORS_H

#include <stdexcept>
#include <string>

namespace wigtel {

/// Bad user input: an unsupported dimension, an unknown state descriptor,
/// a malformed file. The CLI maps these to exit status 2.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A numerical validation failed on otherwise well-formed input.
/// The CLI maps these to exit status 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownSpec : ConfigError {
    using ConfigError::ConfigError;
};

struct InvalidResource : NumericalError {
    using NumericalError::NumericalError;
};

struct ZeroProbability : NumericalError {
    using NumericalError::NumericalError;
};

struct NegativeProbability : NumericalError {
    using NumericalError::NumericalError;
};

struct NonHermitianInput : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace wigtel

#endif
