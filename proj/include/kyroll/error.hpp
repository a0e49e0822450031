// Copyright 2026 The kyroll Authors
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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kyroll {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A replay source ran out of scripted bits before the sampler terminated.
class SourceExhausted : public Error {
 public:
  using Error::Error;
};

/// Probability vector is empty, has a negative entry, or does not sum to 1.
class InvalidDistribution : public Error {
 public:
  using Error::Error;
};

/// Argument outside the representable or supported range (e.g. die too large).
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Tree leaf masses do not reproduce the probability vector they are checked against.
class MassMismatch : public Error {
 public:
  using Error::Error;
};

/// An expected-flip bound failed for some die size.
class BoundViolation : public Error {
 public:
  BoundViolation(std::uint64_t n, const std::string& what) : Error(what), n_(n) {}
  std::uint64_t n() const noexcept { return n_; }

 private:
  std::uint64_t n_;
};

}  // namespace kyroll
