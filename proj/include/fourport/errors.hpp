// Copyright 2026 The fourport Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fourport {

enum class ErrorCode {
    NotHermitian,
    NegativeEigenvalue,
    NotUnitary,
    TooLarge,
    Superunitary,
    SingularCommutator,
    ParseError,
    ValidationError,
    InvalidDevice,
    NonUnitaryGauge,
    ZeroTransmittance,
    CapExceeded,
    DeviceExcited,
    ConventionError,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NegativeEigenvalue: return "NegativeEigenvalue";
        case ErrorCode::NotUnitary: return "NotUnitary";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::Superunitary: return "Superunitary";
        case ErrorCode::SingularCommutator: return "SingularCommutator";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::InvalidDevice: return "InvalidDevice";
        case ErrorCode::NonUnitaryGauge: return "NonUnitaryGauge";
        case ErrorCode::ZeroTransmittance: return "ZeroTransmittance";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::DeviceExcited: return "DeviceExcited";
        case ErrorCode::ConventionError: return "ConventionError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it without parsing messages.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

}  // namespace fourport
