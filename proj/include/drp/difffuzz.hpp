// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

/// @file
/// Scenarios, differential execution through the proxy, random scenario
/// generation and shrinking of divergent scenarios.

#pragma once

#include <drp/bytes.hpp>
#include <drp/checks.hpp>
#include <drp/engine.hpp>
#include <drp/redundancy.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace drp
{
/// Name that always resolves to the proxy's address.
inline constexpr std::string_view proxy_name = "proxy";

inline constexpr std::uint64_t default_genesis_time = 1'000'000;

/// A scenario argument: a name (account, deployment or "proxy") resolving to
/// an address word, or a number.
using ArgValue = std::variant<std::string, u256>;

struct Account
{
    std::string name;
    u256 balance = 0;
    friend bool operator==(const Account&, const Account&) = default;
};

struct Deployment
{
    std::string name;
    std::string code_id;
    /// Init args, each encoded as one 32-byte word.
    std::vector<ArgValue> args;
    friend bool operator==(const Deployment&, const Deployment&) = default;
};

struct CheckRegistration
{
    std::string for_sig;
    std::string target;
    std::string check_sig;
    std::vector<AbstractArgument> args;
    friend bool operator==(const CheckRegistration&, const CheckRegistration&) = default;
};

struct ProxySetup
{
    /// Deployment names, in execution order.
    std::vector<std::string> implementations;
    std::vector<CheckRegistration> checks;
    friend bool operator==(const ProxySetup&, const ProxySetup&) = default;
};

struct CallStep
{
    std::string sender;
    std::string target;
    u256 value = 0;
    std::string sig;
    std::vector<ArgValue> args;
    friend bool operator==(const CallStep&, const CallStep&) = default;
};

/// Moves the scenario clock forward; never implied by a call.
struct AdvanceTime
{
    std::uint64_t seconds = 0;
    friend bool operator==(const AdvanceTime&, const AdvanceTime&) = default;
};

using Step = std::variant<CallStep, AdvanceTime>;

struct Scenario
{
    std::uint64_t rng_seed = 0;
    std::uint64_t genesis_time = default_genesis_time;
    std::vector<Account> accounts;
    /// Accounts the generator draws senders from; shrinking canonicalizes
    /// senders toward actors.front().
    std::vector<std::string> actors;
    std::vector<Deployment> deploy;
    std::optional<ProxySetup> proxy;
    /// Must all succeed; a failing setup step is a setup error.
    std::vector<Step> setup;
    std::vector<Step> txs;
    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Deterministic account address: low 20 bytes of keccak("account:" | name).
[[nodiscard]] Address account_address(std::string_view name);

enum class VerdictStatus
{
    consistent,
    divergent,
};

struct Verdict
{
    VerdictStatus status = VerdictStatus::consistent;
    /// Index into Scenario::txs.
    std::size_t failing_tx = 0;
    MismatchKind kind = MismatchKind::success;
    std::string message;

    [[nodiscard]] bool divergent() const noexcept { return status == VerdictStatus::divergent; }
    friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct StepOutcome
{
    bool setup = false;
    std::size_t index = 0;
    bool is_call = true;
    /// The call's target is the name "proxy".
    bool to_proxy = false;
    /// Signature of a call, "advance_time" otherwise.
    std::string label;
    Outcome outcome;
    std::uint64_t intrinsic_gas = 0;
};

struct RunResult
{
    Verdict verdict;
    std::vector<StepOutcome> trace;
    Word final_digest;
    Address proxy_address;
};

enum class RunMode
{
    /// Through the redundancy proxy.
    proxied,
    /// One implementation deployed at the proxy's address, without a proxy.
    standalone,
};

struct RunOptions
{
    RunMode mode = RunMode::proxied;
    /// Index into ProxySetup::implementations for standalone runs.
    std::size_t standalone_index = 0;
    GasSchedule schedule{};
    bool metering = true;
    ExecutionObserver* observer = nullptr;
};

/// An engine with the corpus and the proxy registered.
[[nodiscard]] std::unique_ptr<Engine> make_engine(const GasSchedule& schedule = {});

/// Pure function of (scenario, options). Throws Error(scenario_setup_error)
/// for unresolvable names, unknown code ids, bad check registrations or a
/// failing setup step.
[[nodiscard]] RunResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

/// Rebinds the proxy's implementations to `impl_set` code ids, replacing
/// the previous implementation deployments in place. Throws
/// Error(empty_implementation_list) for an empty set.
[[nodiscard]] Scenario with_implementations(Scenario scenario, std::span<const std::string> impl_set);

inline RunResult run_scenario(const Scenario& scenario, std::span<const std::string> impl_set)
{
    return run_scenario(with_implementations(scenario, impl_set));
}

/// Compares a proxied run with standalone runs of every implementation:
/// per-call (ok, ret_data) and the final digest. Returns a description of
/// the first difference.
[[nodiscard]] std::optional<std::string> compare_with_standalone(const Scenario& scenario);

// ---------------------------------------------------------------------------
// generation

enum class ScenarioFamily
{
    auction,
    token,
};

struct GeneratorConfig
{
    std::size_t min_actors = 2;
    std::size_t max_actors = 6;
    std::size_t max_txs = 8;
    std::uint64_t max_value = 8;
    /// Append a time advance past the end time and a finalize call.
    bool finalize = false;
    std::uint64_t auction_duration = 3600;
};

/// Family served by a code id, nullopt if no generator exists for it.
[[nodiscard]] std::optional<ScenarioFamily> family_of(std::string_view code_id) noexcept;

/// Deterministic in (seed, impl_set, config). Throws
/// Error(scenario_setup_error) when the implementations span families or
/// have no generator.
[[nodiscard]] Scenario generate(std::uint64_t seed, std::span<const std::string> impl_set, const GeneratorConfig& config = {});

/// Seed of case `index` in a fuzz run.
[[nodiscard]] std::uint64_t case_seed(std::uint64_t base_seed, std::uint64_t index) noexcept;

// ---------------------------------------------------------------------------
// shrinking and fuzzing

/// Greedy reduction: tx deletion, value and number minimization toward 0,
/// and sender canonicalization toward the first actor, repeated until no
/// step applies. Requires a divergent scenario; every accepted candidate
/// diverges with the original mismatch kind.
[[nodiscard]] Scenario shrink(const Scenario& scenario);

struct FuzzConfig
{
    std::vector<std::string> impls;
    std::size_t cases = 1000;
    std::uint64_t base_seed = 0;
    GeneratorConfig generator{};
    bool shrink = true;
};

struct Finding
{
    std::size_t case_index = 0;
    std::uint64_t seed = 0;
    Verdict verdict;
    Scenario original;
    Scenario shrunk;
    Verdict shrunk_verdict;
};

struct FuzzReport
{
    std::size_t cases = 0;
    std::vector<Finding> findings;
};

[[nodiscard]] FuzzReport fuzz(const FuzzConfig& config);

/// "bid() from actor0 value 1" style rendering of a step.
[[nodiscard]] std::string describe(const Step& step);
}  // namespace drp
