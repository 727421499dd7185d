// Copyright 2026 The eltip Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ELTIP_ERROR_HPP
#define ELTIP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace eltip {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed problems, out-of-range indices, parse failures, bad arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Eigensolver failure or an ill-defined spectral quantity.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The two lowest instantaneous levels coincide at schedule point `s`.
class DegenerateLevelError : public NumericalError {
 public:
  DegenerateLevelError(const std::string& what, double s)
      : NumericalError(what + " (s = " + std::to_string(s) + ")"), s_(s) {}

  double s() const noexcept { return s_; }

 private:
  double s_;
};

}  // namespace eltip

#endif  // ELTIP_ERROR_HPP
