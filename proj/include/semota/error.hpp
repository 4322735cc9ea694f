// SPDX-License-Identifier: Apache-2.0
//
// semota - multi-sensor remote state estimation over MIMO fading channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace semota {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Incompatible matrix/vector shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Caller violated a documented precondition (e.g. singular covariance).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Roundoff beyond tolerance, failed factorization, non-finite result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Exhaustive computation refused because it exceeds the configured budget.
class SizeError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class SearchError : public Error {
 public:
  using Error::Error;
};

// File could not be read or written; the message names the path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace semota
