// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

#include <drp/error.hpp>

namespace drp
{
std::string_view error_name(Errc code) noexcept
{
    switch (code)
    {
    case Errc::not_top_of_stack:
        return "NotTopOfStack";
    case Errc::insufficient_balance:
        return "InsufficientBalance";
    case Errc::unknown_code_id:
        return "UnknownCodeId";
    case Errc::deploy_reverted:
        return "DeployReverted";
    case Errc::malformed_call:
        return "MalformedCall";
    case Errc::unknown_target:
        return "UnknownTarget";
    case Errc::argument_too_large:
        return "ArgumentTooLarge";
    case Errc::truncated_encoding:
        return "TruncatedEncoding";
    case Errc::unknown_argument_type:
        return "UnknownArgumentType";
    case Errc::unknown_env_kind:
        return "UnknownEnvKind";
    case Errc::trailing_bytes:
        return "TrailingBytes";
    case Errc::call_data_out_of_range:
        return "CallDataOutOfRange";
    case Errc::empty_implementation_list:
        return "EmptyImplementationList";
    case Errc::scenario_setup_error:
        return "ScenarioSetupError";
    case Errc::scenario_divergence:
        return "ScenarioDivergence";
    }
    return "Unknown";
}
}  // namespace drp
