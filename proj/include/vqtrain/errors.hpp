// Copyright 2026 The vqtrain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>

namespace vqtrain {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dimension or length mismatch between arguments.
class SizeError : public Error {
public:
    using Error::Error;
};

/// Caller violated an operation's contract (missing angle, non-Hermitian input, ...).
class ContractError : public Error {
public:
    using Error::Error;
};

/// Qubit or parameter index out of range.
class IndexError : public Error {
public:
    using Error::Error;
};

/// Requested matrix power is numerically ill-defined.
class ConditioningError : public Error {
public:
    ConditioningError(const std::string& what, double eigenvalue)
        : Error(what), eigenvalue_(eigenvalue) {}
    double eigenvalue() const noexcept { return eigenvalue_; }

private:
    double eigenvalue_;
};

/// Argument outside the mathematical domain of a formula (log of zero, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Step direction carries no information (zero metric norm, zero learning rate).
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Root search failed to bracket the requested value.
class SearchError : public Error {
public:
    using Error::Error;
};

} // namespace vqtrain
