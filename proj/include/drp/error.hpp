// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace drp
{
enum class Errc
{
    not_top_of_stack,
    insufficient_balance,
    unknown_code_id,
    deploy_reverted,
    malformed_call,
    unknown_target,
    argument_too_large,
    truncated_encoding,
    unknown_argument_type,
    unknown_env_kind,
    trailing_bytes,
    call_data_out_of_range,
    empty_implementation_list,
    scenario_setup_error,
    scenario_divergence,
};

/// Names as they appear in CLI diagnostics, e.g. "ArgumentTooLarge".
[[nodiscard]] std::string_view error_name(Errc code) noexcept;

/// Raised for API misuse and malformed input. Contract-level failures are
/// reverts and never surface as this type.
class Error : public std::runtime_error
{
public:
    Error(Errc code, const std::string& detail)
      : std::runtime_error{std::string{error_name(code)} + (detail.empty() ? "" : ": " + detail)},
        code_{code}
    {}
    explicit Error(Errc code) : Error{code, {}} {}

    [[nodiscard]] Errc code() const noexcept { return code_; }

private:
    Errc code_;
};
}  // namespace drp
