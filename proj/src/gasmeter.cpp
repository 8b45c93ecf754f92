// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

#include <drp/corpus.hpp>
#include <drp/error.hpp>
#include <drp/gasmeter.hpp>

#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

namespace drp
{
namespace
{
struct Sample
{
    std::string function;
    std::size_t trace_index;
};

std::string function_name(const std::string& sig)
{
    return sig.substr(0, sig.find('('));
}

/// Picks the trace entries that become rows, in order of first appearance.
std::vector<Sample> select_rows(const RunResult& run)
{
    std::vector<Sample> out;
    std::map<std::string, bool> seen;
    std::size_t bids = 0;
    for (std::size_t i = 0; i < run.trace.size(); ++i)
    {
        const auto& step = run.trace[i];
        if (!step.is_call || !step.outcome.ok || !step.to_proxy)
            continue;
        auto name = function_name(step.label);
        if (name == "bid")
        {
            ++bids;
            if (bids > 2)
                continue;
            name = bids == 1 ? "first bid" : "subsequent bid";
        }
        if (seen[name])
            continue;
        seen[name] = true;
        out.push_back(Sample{name, i});
    }
    return out;
}

std::uint64_t execution_gas(const StepOutcome& s)
{
    return s.outcome.gas_used - s.intrinsic_gas;
}
}  // namespace

CostReport measure(const Scenario& scenario, const GasSchedule& schedule)
{
    if (!scenario.proxy)
        throw Error{Errc::scenario_setup_error, "cost measurement needs a proxy section"};

    const auto proxied = run_scenario(scenario, RunOptions{.mode = RunMode::proxied, .schedule = schedule});
    if (proxied.verdict.divergent())
        throw Error{Errc::scenario_divergence, proxied.verdict.message};

    const auto& impls = scenario.proxy->implementations;
    std::vector<RunResult> alone;
    for (std::size_t k = 0; k < impls.size(); ++k)
    {
        alone.push_back(run_scenario(
            scenario, RunOptions{.mode = RunMode::standalone, .standalone_index = k, .schedule = schedule}));
        const auto& t = alone.back().trace;
        if (t.size() != proxied.trace.size())
            throw Error{Errc::scenario_divergence, impls[k] + " ran a different number of steps"};
        for (std::size_t i = 0; i < t.size(); ++i)
            if (t[i].outcome.ok != proxied.trace[i].outcome.ok)
                throw Error{Errc::scenario_divergence, impls[k] + " disagrees on step " + std::to_string(i)};
    }

    CostReport report;
    for (const auto& name : impls)
    {
        const auto it = std::find_if(
            scenario.deploy.begin(), scenario.deploy.end(), [&](const Deployment& d) { return d.name == name; });
        report.implementations.push_back(it == scenario.deploy.end() ? name : it->code_id);
    }

    for (const auto& sample : select_rows(proxied))
    {
        CostRow row;
        row.function = sample.function;
        const auto& p = proxied.trace[sample.trace_index];
        row.intrinsic_gas = p.intrinsic_gas;
        row.proxied_gas = execution_gas(p);
        std::uint64_t sum = 0;
        for (const auto& run : alone)
        {
            const auto g = execution_gas(run.trace[sample.trace_index]);
            row.standalone_gas.push_back(g);
            sum += g;
        }
        row.overhead_gas = static_cast<std::int64_t>(row.proxied_gas) - static_cast<std::int64_t>(sum);
        row.overhead_fraction =
            row.proxied_gas == 0 ? 0.0 : static_cast<double>(row.overhead_gas) / static_cast<double>(row.proxied_gas);
        report.rows.push_back(std::move(row));
    }
    return report;
}

CostReport to_currency(CostReport report, std::uint64_t gas_price, double token_price)
{
    if (!std::isfinite(token_price) || token_price < 0)
        throw std::invalid_argument{"token price must be a non-negative number"};
    const auto price = [&](std::uint64_t gas) {
        return static_cast<double>(gas) * static_cast<double>(gas_price) * 1e-18 * token_price;
    };
    for (auto& row : report.rows)
    {
        PricedCost c;
        c.proxied = price(row.proxied_gas + row.intrinsic_gas);
        for (const auto g : row.standalone_gas)
            c.standalone.push_back(price(g + row.intrinsic_gas));
        row.priced_cost = std::move(c);
    }
    return report;
}

std::string format_table(const CostReport& report)
{
    std::ostringstream out;
    const auto cell = [&](const auto& v, int width) { out << std::setw(width) << v; };

    out << std::left;
    cell("function", 16);
    out << std::right;
    cell("proxied", 10);
    for (const auto& impl : report.implementations)
        cell(impl, 12);
    cell("overhead", 10);
    cell("fraction", 10);
    const bool priced = !report.rows.empty() && report.rows.front().priced_cost;
    if (priced)
        cell("cost(proxied)", 16);
    out << '\n';

    for (const auto& row : report.rows)
    {
        out << std::left;
        cell(row.function, 16);
        out << std::right;
        cell(row.proxied_gas, 10);
        for (const auto g : row.standalone_gas)
            cell(g, 12);
        cell(row.overhead_gas, 10);
        std::ostringstream pct;
        pct << std::fixed << std::setprecision(2) << row.overhead_fraction * 100 << '%';
        cell(pct.str(), 10);
        if (row.priced_cost)
        {
            std::ostringstream c;
            c << std::setprecision(6) << row.priced_cost->proxied;
            cell(c.str(), 16);
        }
        out << '\n';
    }
    return out.str();
}

Scenario canonical_auction_scenario(std::span<const std::string> impls)
{
    constexpr std::uint64_t nft_id = 1;
    constexpr std::uint64_t duration = 3600;
    const std::string proxy{proxy_name};

    Scenario s;
    s.actors = {"alice", "bob"};
    s.accounts = {{"seller", 0}, {"alice", u256{1'000'000}}, {"bob", u256{1'000'000}}};
    s.deploy.push_back(Deployment{"nft", std::string{corpus::nft_a}, {}});
    ProxySetup p;
    for (std::size_t i = 0; i < impls.size(); ++i)
    {
        p.implementations.push_back("impl" + std::to_string(i));
        s.deploy.push_back(Deployment{p.implementations.back(), impls[i], {}});
    }
    p.checks.push_back(CheckRegistration{std::string{corpus::sig::finalize}, "nft", std::string{corpus::sig::owner_of},
        {StaticArg{Bytes(Word::from_u256(nft_id).bytes.begin(), Word::from_u256(nft_id).bytes.end())}}});
    s.proxy = std::move(p);

    s.setup.push_back(CallStep{"seller", "nft", 0, std::string{corpus::sig::mint}, {std::string{"seller"}, u256{nft_id}}});
    s.setup.push_back(CallStep{"seller", "nft", 0, std::string{corpus::sig::approve}, {proxy, u256{nft_id}}});
    s.txs.push_back(CallStep{"seller", proxy, 0, std::string{corpus::sig::start},
        {std::string{"nft"}, u256{nft_id}, u256{s.genesis_time + duration}}});
    s.txs.push_back(CallStep{"alice", proxy, u256{100}, std::string{corpus::sig::bid}, {}});
    s.txs.push_back(CallStep{"bob", proxy, u256{150}, std::string{corpus::sig::bid}, {}});
    s.txs.push_back(AdvanceTime{duration});
    s.txs.push_back(CallStep{"alice", proxy, 0, std::string{corpus::sig::finalize}, {}});
    return s;
}

Scenario canonical_auction_scenario()
{
    const std::vector<std::string> impls{std::string{corpus::auction_a}, std::string{corpus::auction_b}};
    return canonical_auction_scenario(impls);
}
}  // namespace drp
