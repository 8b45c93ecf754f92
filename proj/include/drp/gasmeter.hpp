// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

/// @file
/// Per-function cost of running a scenario through the proxy versus running
/// each implementation on its own.
///
/// Compared quantities are execution gas: a transaction's gas minus the
/// intrinsic part (base fee plus calldata bytes), which is identical for the
/// proxied and standalone transaction and is paid once either way.

#pragma once

#include <drp/difffuzz.hpp>
#include <drp/engine.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace drp
{
struct PricedCost
{
    double proxied = 0;
    std::vector<double> standalone;
};

struct CostRow
{
    /// "start", "first bid", "subsequent bid", "finalize", or the function
    /// name for anything else.
    std::string function;
    std::uint64_t intrinsic_gas = 0;
    std::uint64_t proxied_gas = 0;
    std::vector<std::uint64_t> standalone_gas;
    /// proxied_gas minus the sum of standalone_gas; negative values would
    /// break the lower bound and are reported as they are.
    std::int64_t overhead_gas = 0;
    double overhead_fraction = 0;
    /// Whole-transaction cost (intrinsic included) once priced.
    std::optional<PricedCost> priced_cost;
};

struct CostReport
{
    std::vector<std::string> implementations;
    std::vector<CostRow> rows;
};

/// Runs the scenario proxied and standalone per implementation on fresh
/// engines with `schedule`. One row per function, taken from its first
/// successful call to the proxy; the second successful bid() becomes
/// "subsequent bid". Throws Error(scenario_divergence) if the proxied run
/// diverges or a standalone run disagrees on success.
[[nodiscard]] CostReport measure(const Scenario& scenario, const GasSchedule& schedule = {});

/// gas * gas_price * 1e-18 * token_price for every column. Throws
/// std::invalid_argument for a negative or non-finite token price.
[[nodiscard]] CostReport to_currency(CostReport report, std::uint64_t gas_price, double token_price);

/// Fixed-width text table.
[[nodiscard]] std::string format_table(const CostReport& report);

/// Start, a first bid, a higher second bid from another account, time
/// advance, finalize.
[[nodiscard]] Scenario canonical_auction_scenario(std::span<const std::string> impls);
[[nodiscard]] Scenario canonical_auction_scenario();
}  // namespace drp
