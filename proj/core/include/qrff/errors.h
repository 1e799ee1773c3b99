// Copyright 2026 The qrff Authors
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

#ifndef QRFF_ERRORS_H_
#define QRFF_ERRORS_H_

#include <stdexcept>
#include <string>

namespace qrff {

/// Root of every error raised by the library. `kind()` is a stable, short
/// machine-readable tag used by the CLI error line.
class Error : public std::runtime_error {
   public:
    explicit Error(const std::string &what) : std::runtime_error(what) {}
    virtual const char *kind() const noexcept = 0;
};

/// Invalid input values (non-finite coordinates, bad hyperparameters, shape mismatch).
class DomainError : public Error {
   public:
    using Error::Error;
    const char *kind() const noexcept override { return "domain"; }
};

/// Invalid run configuration or a configuration the algorithm cannot honor.
class ConfigError : public Error {
   public:
    using Error::Error;
    const char *kind() const noexcept override { return "config"; }
};

/// An eigenvalue the inversion must handle decodes below QPE resolution (bin 0).
class ResolutionError : public ConfigError {
   public:
    using ConfigError::ConfigError;
    const char *kind() const noexcept override { return "resolution"; }
};

/// Requested circuit exceeds the simulator's qubit cap.
class CapacityError : public Error {
   public:
    using Error::Error;
    const char *kind() const noexcept override { return "capacity"; }
};

/// A post-selected branch has vanishing probability (or received zero shots).
class PostselectionError : public Error {
   public:
    using Error::Error;
    const char *kind() const noexcept override { return "postselection"; }
};

/// Factorization or decomposition failed.
class NumericalError : public Error {
   public:
    using Error::Error;
    const char *kind() const noexcept override { return "numerical"; }
};

class IoError : public Error {
   public:
    using Error::Error;
    const char *kind() const noexcept override { return "io"; }
};

}  // namespace qrff

#endif  // QRFF_ERRORS_H_
