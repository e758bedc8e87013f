// Copyright 2026 The Zest Authors. All Rights Reserved.
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

#ifndef ZEST_ERRORS_HPP_
#define ZEST_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace zest {

// Malformed or out-of-range input data.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An external compression program failed or could not be run.
class CompressorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zest

#endif  // ZEST_ERRORS_HPP_
