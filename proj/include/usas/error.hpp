// Copyright 2026 The usas-hybrid Authors.
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

#ifndef USAS_ERROR_HPP_
#define USAS_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace usas {

enum class ErrorKind {
  kMalformedTag,
  kDuplicateLabel,
  kMissingTitle,
  kMalformedTemplate,
  kMalformedInput,
  kIndexOutOfRange,
  kEmptyGloss,
  kDimensionMismatch,
  kEmptyDataset,
  kEmptyTable,
  kInsufficientLabels,
  kEmptyCorpus,
  kAlignment,
  kUnknownLabel,
  kSchema,
  kIo,
};

const char *ErrorKindName(ErrorKind kind);

// Errors caused by bad input data (as opposed to bugs) carry a kind and,
// when known, the 1-based line of the offending record.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &message, std::size_t line = 0);

  ErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  ErrorKind kind_;
  std::size_t line_;
};

}  // namespace usas

#endif  // USAS_ERROR_HPP_
