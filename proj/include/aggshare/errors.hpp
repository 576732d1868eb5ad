// Copyright 2026 The aggshare Authors.
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

#ifndef AGGSHARE_ERRORS_HPP
#define AGGSHARE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace aggshare {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two vectors that must describe the same set of suppliers differ in length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A value violates a type invariant (negative capacity, bad probability, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An enumeration (joint outcomes, joint contract grid) would exceed its cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Malformed scenario input. `path()` addresses the offending field.
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace aggshare

#endif  // AGGSHARE_ERRORS_HPP
