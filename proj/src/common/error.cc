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

#include "propforge/common/error.h"

namespace propforge {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedDocument: return "MalformedDocument";
    case ErrorCode::kMalformedBounds: return "MalformedBounds";
    case ErrorCode::kEmptyIdentity: return "EmptyIdentity";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kMissingDemos: return "MissingDemos";
    case ErrorCode::kProviderError: return "ProviderError";
    case ErrorCode::kMalformedAnnotation: return "MalformedAnnotation";
    case ErrorCode::kMixedApps: return "MixedApps";
    case ErrorCode::kEmptyQuery: return "EmptyQuery";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnsupportedNode: return "UnsupportedNode";
    case ErrorCode::kMissingSegment: return "MissingSegment";
    case ErrorCode::kEmptySteps: return "EmptySteps";
    case ErrorCode::kEmptyResponse: return "EmptyResponse";
    case ErrorCode::kSynthesisFailed: return "SynthesisFailed";
    case ErrorCode::kUnrecognizedStep: return "UnrecognizedStep";
    case ErrorCode::kUnresolvedWidget: return "UnresolvedWidget";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kDanglingReference: return "DanglingReference";
    case ErrorCode::kModelPairMissing: return "ModelPairMissing";
    case ErrorCode::kTooFew: return "TooFew";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kPoolTooSmall: return "PoolTooSmall";
    case ErrorCode::kUnparseableList: return "UnparseableList";
    case ErrorCode::kNoCaptures: return "NoCaptures";
    case ErrorCode::kMissingContext: return "MissingContext";
    case ErrorCode::kNameMismatch: return "NameMismatch";
    case ErrorCode::kWorkspaceLocked: return "WorkspaceLocked";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace propforge
