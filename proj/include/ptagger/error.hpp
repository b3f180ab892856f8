// Copyright 2026 The ptagger Authors.
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

#ifndef PTAGGER_ERROR_HPP_
#define PTAGGER_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ptagger {

// Raised for malformed input data: bad files, invalid spans, desynchronized
// standoff, empty entities. The CLI maps it to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Raised by fetch_article when the remote side answers with a non-200 status.
class FetchError : public DataError {
 public:
  FetchError(const std::string& what, int status)
      : DataError(what), status_(status) {}

  int status() const { return status_; }
  bool not_found() const { return status_ == 404; }

 private:
  int status_;
};

}  // namespace ptagger

#endif  // PTAGGER_ERROR_HPP_
