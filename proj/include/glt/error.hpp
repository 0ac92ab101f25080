// Copyright 2026 The glt Authors
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

#ifndef GLT_ERROR_HPP
#define GLT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace glt {

enum class ErrorKind {
    InvalidArgument,
    DimensionMismatch,
    NonFinite,
    Parse,
    RankDeficient,
    ZeroColumn,
    NotGlt,
    NotIdentified,
    BudgetExceeded,
    VarianceUnderflow,
    PivotCollision,
    InvalidLayout,
    EmptyArchive,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::ZeroColumn: return "ZeroColumn";
    case ErrorKind::NotGlt: return "NotGlt";
    case ErrorKind::NotIdentified: return "NotIdentified";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::VarianceUnderflow: return "VarianceUnderflow";
    case ErrorKind::PivotCollision: return "PivotCollision";
    case ErrorKind::InvalidLayout: return "InvalidLayout";
    case ErrorKind::EmptyArchive: return "EmptyArchive";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }
    /// The message without the kind prefix.
    const std::string& message() const noexcept { return message_; }

private:
    ErrorKind kind_;
    std::string message_;
};

} // namespace glt

#endif // GLT_ERROR_HPP
