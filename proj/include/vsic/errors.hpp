// Copyright 2026 The vsic Authors
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

namespace vsic {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or a value outside an operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A caller passed a matrix that violates a structural precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A pulse sequence is malformed.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure did not reach its target.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace vsic
