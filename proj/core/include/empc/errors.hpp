// Copyright 2026 The empc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace empc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes of matrices/ensembles that must agree do not.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A value violates a type invariant (negative std, E < 2, non-finite entry...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Non-finite update, failed decomposition or singular inertia matrix.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Forward propagation produced a non-finite state.
class PropagationError : public Error {
public:
    explicit PropagationError(const std::string& what, int member = -1)
        : Error(what), member_(member) {}

    /// Ensemble member that failed, or -1 when not propagating an ensemble.
    int member() const noexcept { return member_; }

private:
    int member_;
};

/// Malformed configuration file or command-line value.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace empc
