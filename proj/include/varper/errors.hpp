// Copyright 2026 The varper Authors
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

namespace varper {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// Domain and validation failures: arguments outside a phase domain,
/// undefined backward periods, non-monotone phase parameters,
/// incompatible basis functions, bad flag values.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Iterative machinery (root bracketing, adaptive quadrature) failed to
/// reach the requested accuracy.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Malformed input file; the message carries the offending line number.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace varper
