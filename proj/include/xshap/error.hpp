/*
 * Copyright 2026 The xshap Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef XSHAP_ERROR_HPP
#define XSHAP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace xshap {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed an argument outside the operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidCoalitionError : public Error {
 public:
  using Error::Error;
};

class PairMismatchError : public Error {
 public:
  using Error::Error;
};

// Exact enumeration refused because the player count exceeds the guard.
class GuardError : public Error {
 public:
  using Error::Error;
};

// Malformed game files, CSV datasets and other external inputs.
class FormatError : public Error {
 public:
  using Error::Error;
};

// A game oracle failed while evaluating a coalition. `coalition()` holds the
// canonical key of the offending coalition.
class OracleError : public Error {
 public:
  OracleError(const std::string& what, std::string coalition)
      : Error(what + " (coalition {" + coalition + "})"),
        coalition_(std::move(coalition)) {}

  const std::string& coalition() const noexcept { return coalition_; }

 private:
  std::string coalition_;
};

}  // namespace xshap

#endif  // XSHAP_ERROR_HPP
