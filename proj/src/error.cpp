// Copyright 2026 The parshake Authors
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

#include "parshake/error.hpp"

namespace parshake {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotBlockAligned: return "NotBlockAligned";
    case ErrorCode::ZeroOutputLength: return "ZeroOutputLength";
    case ErrorCode::TooManyCVs: return "TooManyCVs";
    case ErrorCode::GrammarViolation: return "GrammarViolation";
    case ErrorCode::MisalignedNode: return "MisalignedNode";
    case ErrorCode::SliceTooLarge: return "SliceTooLarge";
    case ErrorCode::MessageTooShort: return "MessageTooShort";
    case ErrorCode::KTooSmall: return "KTooSmall";
    case ErrorCode::CyclicDependency: return "CyclicDependency";
    case ErrorCode::SliceOutOfRange: return "SliceOutOfRange";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace parshake
