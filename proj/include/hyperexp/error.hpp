// Copyright 2026 The hyperexp Authors.
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

#ifndef HYPEREXP_ERROR_HPP
#define HYPEREXP_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperexp {

// Stable error codes; the CLI maps them to exit statuses.
enum class ErrorCode {
  kDimensionMismatch,
  kDimensionTooLarge,
  kInvalidInput,
  kSizeLimit,
  kAttemptsExhausted,
  kNotConverged,
  kUnsupported,
  kParse,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by random_sidon when the rejection budget runs out.
class AttemptsExhausted : public Error {
 public:
  AttemptsExhausted(std::size_t reached, std::size_t target)
      : Error(ErrorCode::kAttemptsExhausted,
              "attempts exhausted: reached " + std::to_string(reached) +
                  " of " + std::to_string(target) + " elements"),
        reached_(reached),
        target_(target) {}

  std::size_t reached() const noexcept { return reached_; }
  std::size_t target() const noexcept { return target_; }

 private:
  std::size_t reached_;
  std::size_t target_;
};

}  // namespace hyperexp

#endif  // HYPEREXP_ERROR_HPP
