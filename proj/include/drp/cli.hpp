// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

/// @file
/// Command-line front end and the JSON scenario format.
///
/// Scenario file:
///
///     {
///       "genesis_time": 1000000,
///       "accounts": [{"name": "alice", "balance": 1000}],
///       "actors": ["alice"],
///       "deploy": [{"name": "impl0", "code_id": "auction_a", "args": []}],
///       "proxy": {
///         "implementations": ["impl0", "impl1"],
///         "checks": [{"for_sig": "finalize()", "target": "nft",
///                     "check_sig": "ownerOf(uint256)",
///                     "args": [{"static": "0x..."}, {"calldata": [4, 32]}, {"env": "sender"}]}]
///       },
///       "setup": [...],
///       "txs": [{"call": "proxy", "sender": "alice", "value": 5, "sig": "bid()", "args": []},
///               {"advance_time": 3600}]
///     }
///
/// Call arguments and values are JSON numbers, strings of digits (decimal or
/// 0x hex, for values beyond 64 bits), or names. Names cannot start with a
/// digit.

#pragma once

#include <drp/difffuzz.hpp>
#include <drp/gasmeter.hpp>

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace drp::cli
{
inline constexpr int exit_ok = 0;
inline constexpr int exit_error = 1;
inline constexpr int exit_divergence = 2;
inline constexpr int exit_findings = 3;

/// Thrown for documents that parse as JSON but do not describe a scenario.
class FormatError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

[[nodiscard]] Scenario scenario_from_json(const nlohmann::json& doc);
[[nodiscard]] nlohmann::json scenario_to_json(const Scenario& scenario);

/// Throws nlohmann::json::parse_error or FormatError.
[[nodiscard]] Scenario parse_scenario(std::string_view text);

[[nodiscard]] nlohmann::json verdict_to_json(const Verdict& v);
[[nodiscard]] nlohmann::json fuzz_report_to_json(const FuzzReport& report, const FuzzConfig& config);
[[nodiscard]] nlohmann::json cost_report_to_json(const CostReport& report);

/// Entry point; `args` excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);
}  // namespace drp::cli
