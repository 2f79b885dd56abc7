// Copyright 2026 The thermosup Authors
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

#ifndef THERMOSUP_ERRORS_H_
#define THERMOSUP_ERRORS_H_

#include <stdexcept>
#include <string>

namespace thermosup {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument violates a documented precondition (range, dimension, unitarity).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A simulation would exceed the configured memory budget.
class ResourceExhausted : public Error {
 public:
  using Error::Error;
};

// An iterative criterion was not met within the allowed number of steps.
class ThresholdNotReached : public Error {
 public:
  using Error::Error;
};

}  // namespace thermosup

#endif  // THERMOSUP_ERRORS_H_
