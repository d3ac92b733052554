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

#include "usas/error.hpp"

namespace usas {

const char *ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMalformedTag: return "MalformedTag";
    case ErrorKind::kDuplicateLabel: return "DuplicateLabel";
    case ErrorKind::kMissingTitle: return "MissingTitle";
    case ErrorKind::kMalformedTemplate: return "MalformedTemplate";
    case ErrorKind::kMalformedInput: return "MalformedInput";
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kEmptyGloss: return "EmptyGloss";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kEmptyDataset: return "EmptyDataset";
    case ErrorKind::kEmptyTable: return "EmptyTable";
    case ErrorKind::kInsufficientLabels: return "InsufficientLabels";
    case ErrorKind::kEmptyCorpus: return "EmptyCorpus";
    case ErrorKind::kAlignment: return "AlignmentError";
    case ErrorKind::kUnknownLabel: return "UnknownLabel";
    case ErrorKind::kSchema: return "SchemaMismatch";
    case ErrorKind::kIo: return "IoError";
  }
  return "Error";
}

static std::string Decorate(ErrorKind kind, const std::string &message,
                            std::size_t line) {
  std::string out = ErrorKindName(kind);
  if (line > 0) out += " at line " + std::to_string(line);
  out += ": ";
  out += message;
  return out;
}

Error::Error(ErrorKind kind, const std::string &message, std::size_t line)
    : std::runtime_error(Decorate(kind, message, line)),
      kind_(kind),
      line_(line) {}

}  // namespace usas
