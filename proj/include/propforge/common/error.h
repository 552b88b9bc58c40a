// Copyright 2026 The PropForge Authors.
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

#ifndef PROPFORGE_COMMON_ERROR_H_
#define PROPFORGE_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace propforge {

// Every failure surfaced by the library carries one of these codes. Callers
// that need to branch on the failure kind inspect Error::code().
enum class ErrorCode {
  // capture
  kMalformedDocument,
  kMalformedBounds,
  kEmptyIdentity,
  kOutOfRange,
  // grounding / llm
  kMissingDemos,
  kProviderError,
  kMalformedAnnotation,
  kMixedApps,
  kEmptyQuery,
  // propdsl
  kParseError,
  kUnsupportedNode,
  // synthesis
  kMissingSegment,
  kEmptySteps,
  kEmptyResponse,
  kSynthesisFailed,
  kUnrecognizedStep,
  kUnresolvedWidget,
  // simulator / evaluation
  kSchemaError,
  kDanglingReference,
  kModelPairMissing,
  // robustness
  kTooFew,
  kEmptySet,
  kPoolTooSmall,
  kUnparseableList,
  // cli
  kNoCaptures,
  kMissingContext,
  kNameMismatch,
  kWorkspaceLocked,
  kIo,
  kInvalidArgument,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace propforge

#endif  // PROPFORGE_COMMON_ERROR_H_
