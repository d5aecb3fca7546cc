// Copyright 2026 The gmdlab Authors
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

#ifndef GMDLAB_ERRORS_H_
#define GMDLAB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace gmdlab {

// Base for every error raised by the library. The CLI maps ValidationError to
// exit code 1 and CapExceeded to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

// Raised when a problem size exceeds a configured enumeration or LP cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace gmdlab

#endif  // GMDLAB_ERRORS_H_
