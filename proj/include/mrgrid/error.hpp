/**************************************************************************
 * error.hpp
 *
 * Copyright 2026 The mrgrid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mrgrid {

enum class ErrorCode {
    kNonPrimeCharacteristic,
    kReducibleModulus,
    kInvalidField,
    kDivisionByZero,
    kFieldMismatch,
    kNoDesignatedSubfield,
    kIncompatibleSubfield,
    kIndexOutOfRange,
    kShapeMismatch,
    kRankDeficient,
    kDuplicateEvaluationPoints,
    kFieldTooSmall,
    kDependentLocators,
    kLengthExceedsExtensionDegree,
    kWrongSize,
    kTooLargeToEnumerate,
    kAmbiguousErasure,
    kInconsistentWord,
    kInvalidTopology,
    kEnumerationTooLarge,
    kFieldTooSmallForMDS,
    kNotMDS,
    kZeroGamma,
    kPaddingBreaksRegularity,
    kDimensionMismatch,
    kParse,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::kNonPrimeCharacteristic: return "NonPrimeCharacteristic";
        case ErrorCode::kReducibleModulus: return "ReducibleModulus";
        case ErrorCode::kInvalidField: return "InvalidField";
        case ErrorCode::kDivisionByZero: return "DivisionByZero";
        case ErrorCode::kFieldMismatch: return "FieldMismatch";
        case ErrorCode::kNoDesignatedSubfield: return "NoDesignatedSubfield";
        case ErrorCode::kIncompatibleSubfield: return "IncompatibleSubfield";
        case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::kShapeMismatch: return "ShapeMismatch";
        case ErrorCode::kRankDeficient: return "RankDeficient";
        case ErrorCode::kDuplicateEvaluationPoints: return "DuplicateEvaluationPoints";
        case ErrorCode::kFieldTooSmall: return "FieldTooSmall";
        case ErrorCode::kDependentLocators: return "DependentLocators";
        case ErrorCode::kLengthExceedsExtensionDegree: return "LengthExceedsExtensionDegree";
        case ErrorCode::kWrongSize: return "WrongSize";
        case ErrorCode::kTooLargeToEnumerate: return "TooLargeToEnumerate";
        case ErrorCode::kAmbiguousErasure: return "AmbiguousErasure";
        case ErrorCode::kInconsistentWord: return "InconsistentWord";
        case ErrorCode::kInvalidTopology: return "InvalidTopology";
        case ErrorCode::kEnumerationTooLarge: return "EnumerationTooLarge";
        case ErrorCode::kFieldTooSmallForMDS: return "FieldTooSmallForMDS";
        case ErrorCode::kNotMDS: return "NotMDS";
        case ErrorCode::kZeroGamma: return "ZeroGamma";
        case ErrorCode::kPaddingBreaksRegularity: return "PaddingBreaksRegularity";
        case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
        case ErrorCode::kParse: return "Parse";
    }
    return "Unknown";
}

/// Base exception for every contract violation raised by the library.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace mrgrid
