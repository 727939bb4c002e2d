/*
 * Copyright 2026 The slist Authors.
 *
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

#ifndef SLIST_ERROR_H_
#define SLIST_ERROR_H_

#include <stdexcept>
#include <string>

namespace slist {

// Broad failure classes. The CLI maps these onto process exit codes.
enum class ErrorCode {
  kUsage,      // bad configuration or arguments
  kIo,         // unreadable / unwritable stream
  kSchema,     // missing column, bad container header
  kData,       // empty corpus, failed split, vocabulary mismatch
  kNumerical,  // factorization failure, non-finite result
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace slist

#endif  // SLIST_ERROR_H_
