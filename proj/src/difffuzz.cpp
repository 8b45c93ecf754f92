// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

#include <drp/abi.hpp>
#include <drp/corpus.hpp>
#include <drp/difffuzz.hpp>
#include <drp/error.hpp>
#include <drp/keccak.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace drp
{
namespace
{
[[noreturn]] void setup_error(const std::string& detail)
{
    throw Error{Errc::scenario_setup_error, detail};
}

std::string render_payload(ByteView payload)
{
    const bool printable = !payload.empty() &&
        std::all_of(payload.begin(), payload.end(), [](std::uint8_t c) { return c >= 0x20 && c < 0x7f; });
    return printable ? std::string(payload.begin(), payload.end()) : to_hex(payload);
}

class Names
{
public:
    void define(const std::string& name, const Address& addr)
    {
        if (name.empty())
            setup_error("empty name");
        if (!map_.emplace(name, addr).second)
            setup_error("duplicate name '" + name + "'");
    }

    [[nodiscard]] const Address& resolve(const std::string& name) const
    {
        const auto it = map_.find(name);
        if (it == map_.end())
            setup_error("unknown name '" + name + "'");
        return it->second;
    }

    [[nodiscard]] Word word_of(const ArgValue& v) const
    {
        if (const auto* n = std::get_if<std::string>(&v))
            return Word::from_address(resolve(*n));
        return Word::from_u256(std::get<u256>(v));
    }

private:
    std::map<std::string, Address> map_;
};

/// Deterministic across standard library implementations, unlike the
/// std distributions.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : gen_{seed} {}

    /// Uniform in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi)
    {
        if (hi <= lo)
            return lo;
        const std::uint64_t span = hi - lo;
        if (span == std::numeric_limits<std::uint64_t>::max())
            return gen_();
        const std::uint64_t n = span + 1;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x;
        do
            x = gen_();
        while (x >= limit);
        return lo + x % n;
    }

    template <class T>
    const T& pick(const std::vector<T>& v)
    {
        return v[between(0, v.size() - 1)];
    }

private:
    std::mt19937_64 gen_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

CallStep call(std::string sender, std::string target, std::string_view sig, std::vector<ArgValue> args = {},
    u256 value = 0)
{
    return CallStep{std::move(sender), std::move(target), value, std::string{sig}, std::move(args)};
}

std::vector<std::string> make_actors(Rng& rng, const GeneratorConfig& config)
{
    const auto lo = std::max<std::size_t>(1, config.min_actors);
    const auto n = rng.between(lo, std::max(lo, config.max_actors));
    std::vector<std::string> actors;
    for (std::size_t i = 0; i < n; ++i)
        actors.push_back("actor" + std::to_string(i));
    return actors;
}

void add_implementations(Scenario& s, std::span<const std::string> impl_set)
{
    ProxySetup proxy;
    for (std::size_t i = 0; i < impl_set.size(); ++i)
    {
        const auto name = "impl" + std::to_string(i);
        s.deploy.push_back(Deployment{name, impl_set[i], {}});
        proxy.implementations.push_back(name);
    }
    s.proxy = std::move(proxy);
}

Scenario generate_auction(Rng& rng, std::span<const std::string> impl_set, const GeneratorConfig& config)
{
    constexpr std::uint64_t nft_id = 1;
    Scenario s;
    s.actors = make_actors(rng, config);
    s.accounts.push_back(Account{"seller", 0});
    for (const auto& a : s.actors)
        s.accounts.push_back(Account{a, u256{1'000'000'000}});

    s.deploy.push_back(Deployment{"nft", std::string{corpus::nft_a}, {}});
    add_implementations(s, impl_set);
    s.proxy->checks.push_back(CheckRegistration{
        .for_sig = std::string{corpus::sig::finalize},
        .target = "nft",
        .check_sig = std::string{corpus::sig::owner_of},
        .args = {StaticArg{abi::encode_uint(nft_id)}},
    });

    const auto end_time = s.genesis_time + config.auction_duration;
    s.setup.push_back(call("seller", "nft", corpus::sig::mint, {std::string{"seller"}, u256{nft_id}}));
    s.setup.push_back(call("seller", "nft", corpus::sig::approve, {std::string{proxy_name}, u256{nft_id}}));
    s.setup.push_back(
        call("seller", std::string{proxy_name}, corpus::sig::start, {std::string{"nft"}, u256{nft_id}, u256{end_time}}));

    const auto n = rng.between(0, config.max_txs);
    for (std::uint64_t i = 0; i < n; ++i)
    {
        const auto& who = rng.pick(s.actors);
        const auto value = rng.between(0, config.max_value);
        s.txs.push_back(call(who, std::string{proxy_name}, corpus::sig::bid, {}, u256{value}));
    }
    if (config.finalize)
    {
        s.txs.push_back(AdvanceTime{config.auction_duration});
        s.txs.push_back(call(s.actors.front(), std::string{proxy_name}, corpus::sig::finalize));
    }
    return s;
}

Scenario generate_token(Rng& rng, std::span<const std::string> impl_set, const GeneratorConfig& config)
{
    Scenario s;
    s.actors = make_actors(rng, config);
    for (const auto& a : s.actors)
        s.accounts.push_back(Account{a, 0});
    add_implementations(s, impl_set);

    const std::string self{proxy_name};
    const auto calldata = [](std::size_t offset) { return CallDataArg{offset, Word::size}; };
    auto& checks = s.proxy->checks;
    checks.push_back({std::string{corpus::sig::transfer_from}, self, std::string{corpus::sig::balance_of}, {calldata(4)}});
    checks.push_back({std::string{corpus::sig::transfer_from}, self, std::string{corpus::sig::balance_of}, {calldata(36)}});
    checks.push_back({std::string{corpus::sig::transfer_from}, self, std::string{corpus::sig::allowance},
        {calldata(4), EnvArg{EnvKind::sender}}});
    checks.push_back({std::string{corpus::sig::transfer}, self, std::string{corpus::sig::balance_of},
        {EnvArg{EnvKind::sender}}});
    checks.push_back({std::string{corpus::sig::transfer}, self, std::string{corpus::sig::balance_of}, {calldata(4)}});
    checks.push_back({std::string{corpus::sig::mint}, self, std::string{corpus::sig::total_supply}, {}});

    for (const auto& a : s.actors)
        s.setup.push_back(call(a, self, corpus::sig::mint, {a, u256{rng.between(0, 4 * config.max_value)}}));

    const auto n = rng.between(0, config.max_txs);
    for (std::uint64_t i = 0; i < n; ++i)
    {
        const auto& sender = rng.pick(s.actors);
        const auto& a = rng.pick(s.actors);
        const auto& b = rng.pick(s.actors);
        const u256 amount{rng.between(0, config.max_value)};
        switch (rng.between(0, 5))
        {
        case 0:
        case 1:
            s.txs.push_back(call(sender, self, corpus::sig::transfer, {a, amount}));
            break;
        case 2:
            s.txs.push_back(call(sender, self, corpus::sig::approve, {a, amount}));
            break;
        case 3:
        case 4:
            s.txs.push_back(call(sender, self, corpus::sig::transfer_from, {a, b, amount}));
            break;
        default:
            s.txs.push_back(call(sender, self, corpus::sig::mint, {a, amount}));
            break;
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// shrinking helpers

std::vector<u256> smaller_candidates(const u256& v)
{
    std::vector<u256> out;
    if (v == 0)
        return out;
    for (const u256 c : {u256{0}, v / 2, v - 1})
        if (c < v && std::find(out.begin(), out.end(), c) == out.end())
            out.push_back(c);
    return out;
}

class Shrinker
{
public:
    Shrinker(Scenario s, MismatchKind kind) : best_{std::move(s)}, kind_{kind} {}

    Scenario run()
    {
        truncate_after_failure();
        bool changed = true;
        while (changed)
        {
            changed = false;
            changed |= delete_steps();
            changed |= minimize_values();
            changed |= minimize_values_jointly();
            changed |= minimize_numeric_args();
            changed |= minimize_time();
            changed |= canonicalize_actors();
        }
        return best_;
    }

private:
    std::optional<Verdict> diverges(const Scenario& candidate) const
    {
        try
        {
            auto v = run_scenario(candidate).verdict;
            if (v.divergent() && v.kind == kind_)
                return v;
        }
        catch (const Error&)
        {
        }
        return std::nullopt;
    }

    bool accept(Scenario candidate)
    {
        if (candidate == best_ || !diverges(candidate))
            return false;
        best_ = std::move(candidate);
        return true;
    }

    void truncate_after_failure()
    {
        const auto v = diverges(best_);
        if (v && v->failing_tx + 1 < best_.txs.size())
        {
            auto c = best_;
            c.txs.resize(v->failing_tx + 1);
            accept(std::move(c));
        }
    }

    bool delete_steps()
    {
        bool changed = false;
        for (std::size_t i = 0; i < best_.txs.size();)
        {
            auto c = best_;
            c.txs.erase(c.txs.begin() + static_cast<std::ptrdiff_t>(i));
            if (accept(std::move(c)))
                changed = true;
            else
                ++i;
        }
        return changed;
    }

    bool minimize_values()
    {
        bool changed = false;
        for (std::size_t i = 0; i < best_.txs.size(); ++i)
        {
            bool improved = true;
            while (improved)
            {
                improved = false;
                const auto* step = std::get_if<CallStep>(&best_.txs[i]);
                if (!step)
                    break;
                for (const auto& c : smaller_candidates(step->value))
                {
                    auto cand = best_;
                    std::get<CallStep>(cand.txs[i]).value = c;
                    if (accept(std::move(cand)))
                    {
                        improved = changed = true;
                        break;
                    }
                }
            }
        }
        return changed;
    }

    /// Lowers every occurrence of one value at once, which keeps equalities
    /// between transactions that single-step minimization would break.
    bool minimize_values_jointly()
    {
        bool changed = false;
        bool improved = true;
        while (improved)
        {
            improved = false;
            std::set<u256> values;
            for (const auto& step : best_.txs)
                if (const auto* c = std::get_if<CallStep>(&step); c && c->value != 0)
                    values.insert(c->value);
            for (const auto& v : values)
            {
                for (const auto& target : smaller_candidates(v))
                {
                    auto cand = best_;
                    for (auto& step : cand.txs)
                        if (auto* c = std::get_if<CallStep>(&step); c && c->value == v)
                            c->value = target;
                    if (accept(std::move(cand)))
                    {
                        improved = changed = true;
                        break;
                    }
                }
                if (improved)
                    break;
            }
        }
        return changed;
    }

    bool minimize_numeric_args()
    {
        bool changed = false;
        for (std::size_t i = 0; i < best_.txs.size(); ++i)
        {
            if (!std::holds_alternative<CallStep>(best_.txs[i]))
                continue;
            const auto arg_count = std::get<CallStep>(best_.txs[i]).args.size();
            for (std::size_t a = 0; a < arg_count; ++a)
            {
                bool improved = true;
                while (improved)
                {
                    improved = false;
                    const auto& arg = std::get<CallStep>(best_.txs[i]).args[a];
                    const auto* n = std::get_if<u256>(&arg);
                    if (!n)
                        break;
                    for (const auto& c : smaller_candidates(*n))
                    {
                        auto cand = best_;
                        std::get<CallStep>(cand.txs[i]).args[a] = c;
                        if (accept(std::move(cand)))
                        {
                            improved = changed = true;
                            break;
                        }
                    }
                }
            }
        }
        return changed;
    }

    bool minimize_time()
    {
        bool changed = false;
        for (std::size_t i = 0; i < best_.txs.size(); ++i)
        {
            bool improved = true;
            while (improved)
            {
                improved = false;
                const auto* adv = std::get_if<AdvanceTime>(&best_.txs[i]);
                if (!adv)
                    break;
                for (const auto& c : smaller_candidates(u256{adv->seconds}))
                {
                    auto cand = best_;
                    std::get<AdvanceTime>(cand.txs[i]).seconds = static_cast<std::uint64_t>(c);
                    if (accept(std::move(cand)))
                    {
                        improved = changed = true;
                        break;
                    }
                }
            }
        }
        return changed;
    }

    bool canonicalize_actors()
    {
        if (best_.actors.empty())
            return false;
        const std::string first = best_.actors.front();
        const std::set<std::string> actors(best_.actors.begin(), best_.actors.end());
        bool changed = false;
        for (std::size_t i = 0; i < best_.txs.size(); ++i)
        {
            if (!std::holds_alternative<CallStep>(best_.txs[i]))
                continue;
            const auto sender = std::get<CallStep>(best_.txs[i]).sender;
            if (sender != first && actors.contains(sender))
            {
                auto cand = best_;
                std::get<CallStep>(cand.txs[i]).sender = first;
                changed |= accept(std::move(cand));
            }
            const auto arg_count = std::get<CallStep>(best_.txs[i]).args.size();
            for (std::size_t a = 0; a < arg_count; ++a)
            {
                const auto* name = std::get_if<std::string>(&std::get<CallStep>(best_.txs[i]).args[a]);
                if (name && *name != first && actors.contains(*name))
                {
                    auto cand = best_;
                    std::get<CallStep>(cand.txs[i]).args[a] = first;
                    changed |= accept(std::move(cand));
                }
            }
        }
        return changed;
    }

    Scenario best_;
    MismatchKind kind_;
};
}  // namespace

Address account_address(std::string_view name)
{
    return keccak256("account:" + std::string{name}).to_address();
}

std::unique_ptr<Engine> make_engine(const GasSchedule& schedule)
{
    auto engine = std::make_unique<Engine>(schedule);
    corpus::register_all(*engine);
    register_proxy_code(*engine);
    return engine;
}

RunResult run_scenario(const Scenario& scenario, const RunOptions& options)
{
    auto engine = make_engine(options.schedule);
    engine->set_metering(options.metering);
    auto& state = engine->state();
    Names names;

    for (const auto& acct : scenario.accounts)
    {
        names.define(acct.name, account_address(acct.name));
        state.set_balance(account_address(acct.name), acct.balance);
    }

    std::map<std::string, const Deployment*> deployments;
    for (const auto& d : scenario.deploy)
    {
        Bytes args;
        for (const auto& a : d.args)
            append(args, names.word_of(a).view());
        Address addr;
        try
        {
            addr = engine->deploy(d.code_id, args);
        }
        catch (const Error& e)
        {
            setup_error("deploying '" + d.name + "': " + e.what());
        }
        names.define(d.name, addr);
        deployments[d.name] = &d;
    }

    RunResult result;
    if (scenario.proxy)
    {
        const auto& p = *scenario.proxy;
        if (p.implementations.empty())
            setup_error("proxy has no implementations");
        std::vector<Address> impls;
        for (const auto& name : p.implementations)
        {
            if (!deployments.contains(name))
                setup_error("implementation '" + name + "' is not a deployment");
            impls.push_back(names.resolve(name));
        }

        if (options.mode == RunMode::proxied)
            result.proxy_address = deploy_proxy(*engine, impls);
        else
        {
            if (options.standalone_index >= p.implementations.size())
                setup_error("standalone index out of range");
            const auto& impl = *deployments.at(p.implementations[options.standalone_index]);
            result.proxy_address = engine->deploy(impl.code_id);
        }
        names.define(std::string{proxy_name}, result.proxy_address);

        std::vector<std::pair<Selector, CheckSpec>> checks;
        for (const auto& c : p.checks)
        {
            CheckSpec spec{names.resolve(c.target), abi::selector_of(c.check_sig), c.args};
            try
            {
                // validates field widths exactly as an on-chain registration would
                static_cast<void>(decode_abstract(encode_abstract(spec.selector, spec.args)));
            }
            catch (const Error& e)
            {
                setup_error("check on '" + c.for_sig + "': " + e.what());
            }
            checks.emplace_back(abi::selector_of(c.for_sig), std::move(spec));
        }

        if (options.mode == RunMode::proxied)
        {
            auto& registry = proxy_at(*engine, result.proxy_address).config().registry;
            for (auto& [sel, spec] : checks)
                registry.add(sel, std::move(spec));
        }
    }
    else if (options.mode == RunMode::standalone)
        setup_error("standalone run needs a proxy section");

    engine->set_observer(options.observer);

    std::uint64_t now = scenario.genesis_time;
    std::uint64_t block = 0;
    const auto run_step = [&](const Step& step, bool is_setup, std::size_t index) -> bool {
        StepOutcome rec{.setup = is_setup, .index = index};
        if (const auto* adv = std::get_if<AdvanceTime>(&step))
        {
            now += adv->seconds;
            rec.is_call = false;
            rec.label = "advance_time";
            rec.outcome.ok = true;
            result.trace.push_back(std::move(rec));
            return true;
        }
        const auto& c = std::get<CallStep>(step);
        std::vector<Word> words;
        for (const auto& a : c.args)
            words.push_back(names.word_of(a));
        CallContext ctx{
            .sender = names.resolve(c.sender),
            .target = names.resolve(c.target),
            .storage_context = {},
            .value = c.value,
            .calldata = abi::encode_call(abi::selector_of(c.sig), words),
            .block_timestamp = now,
            .block_number = ++block,
        };
        rec.label = c.sig;
        rec.to_proxy = scenario.proxy && ctx.target == result.proxy_address;
        rec.intrinsic_gas = engine->intrinsic_gas(ctx.calldata);
        try
        {
            rec.outcome = engine->call(ctx);
        }
        catch (const Error& e)
        {
            setup_error(std::string{is_setup ? "setup" : "tx"} + " step " + std::to_string(index) + ": " + e.what());
        }
        const auto out = rec.outcome;
        result.trace.push_back(std::move(rec));

        const auto mismatch = options.mode == RunMode::proxied && scenario.proxy && ctx.target == result.proxy_address &&
                !out.ok
            ? classify_revert(out.ret_data)
            : std::nullopt;
        if (is_setup && (!out.ok || mismatch))
            setup_error("setup step " + std::to_string(index) + " (" + c.sig + ") failed: " + render_payload(out.ret_data));
        if (mismatch)
        {
            result.verdict = Verdict{VerdictStatus::divergent, index, *mismatch, render_payload(out.ret_data)};
            return false;
        }
        return true;
    };

    for (std::size_t i = 0; i < scenario.setup.size(); ++i)
        run_step(scenario.setup[i], true, i);
    for (std::size_t i = 0; i < scenario.txs.size(); ++i)
        if (!run_step(scenario.txs[i], false, i))
            break;

    engine->set_observer(nullptr);
    result.final_digest = state.state_digest();
    return result;
}

Scenario with_implementations(Scenario scenario, std::span<const std::string> impl_set)
{
    if (impl_set.empty())
        throw Error{Errc::empty_implementation_list};
    if (!scenario.proxy)
        scenario.proxy = ProxySetup{};
    auto& p = *scenario.proxy;

    const std::set<std::string> old(p.implementations.begin(), p.implementations.end());
    auto insert_at = scenario.deploy.size();
    for (std::size_t i = 0; i < scenario.deploy.size(); ++i)
        if (old.contains(scenario.deploy[i].name))
        {
            insert_at = i;
            break;
        }
    std::vector<Deployment> kept;
    std::size_t kept_before = 0;
    for (std::size_t i = 0; i < scenario.deploy.size(); ++i)
    {
        if (old.contains(scenario.deploy[i].name))
            continue;
        if (i < insert_at)
            ++kept_before;
        kept.push_back(std::move(scenario.deploy[i]));
    }

    std::set<std::string> taken;
    for (const auto& d : kept)
        taken.insert(d.name);
    for (const auto& a : scenario.accounts)
        taken.insert(a.name);

    std::vector<Deployment> fresh;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < impl_set.size(); ++i)
    {
        std::string name = i < p.implementations.size() ? p.implementations[i] : "impl" + std::to_string(i);
        while (taken.contains(name))
            name += "_";
        taken.insert(name);
        fresh.push_back(Deployment{name, impl_set[i], {}});
        names.push_back(name);
    }
    kept.insert(kept.begin() + static_cast<std::ptrdiff_t>(kept_before), fresh.begin(), fresh.end());
    scenario.deploy = std::move(kept);
    p.implementations = std::move(names);
    return scenario;
}

std::optional<std::string> compare_with_standalone(const Scenario& scenario)
{
    if (!scenario.proxy)
        return "scenario has no proxy";
    const auto proxied = run_scenario(scenario);
    if (proxied.verdict.divergent())
        return "proxied run diverged: " + proxied.verdict.message;

    for (std::size_t k = 0; k < scenario.proxy->implementations.size(); ++k)
    {
        const auto alone = run_scenario(scenario, RunOptions{.mode = RunMode::standalone, .standalone_index = k});
        const auto& who = scenario.proxy->implementations[k];
        if (alone.trace.size() != proxied.trace.size())
            return who + ": trace length differs";
        for (std::size_t i = 0; i < alone.trace.size(); ++i)
        {
            const auto& a = alone.trace[i].outcome;
            const auto& b = proxied.trace[i].outcome;
            if (a.ok != b.ok || a.ret_data != b.ret_data)
                return who + ": step " + std::to_string(i) + " (" + alone.trace[i].label + ") differs";
        }
        if (alone.final_digest != proxied.final_digest)
            return who + ": final state digest differs";
    }
    return std::nullopt;
}

std::optional<ScenarioFamily> family_of(std::string_view code_id) noexcept
{
    if (code_id.starts_with("auction_"))
        return ScenarioFamily::auction;
    if (code_id.starts_with("token_"))
        return ScenarioFamily::token;
    return std::nullopt;
}

Scenario generate(std::uint64_t seed, std::span<const std::string> impl_set, const GeneratorConfig& config)
{
    if (impl_set.empty())
        throw Error{Errc::empty_implementation_list};
    const auto family = family_of(impl_set.front());
    if (!family)
        setup_error("no scenario generator for '" + impl_set.front() + "'");
    for (const auto& id : impl_set)
        if (family_of(id) != family)
            setup_error("implementations '" + impl_set.front() + "' and '" + id + "' are not the same contract");

    Rng rng{seed};
    auto s = *family == ScenarioFamily::auction ? generate_auction(rng, impl_set, config)
                                                : generate_token(rng, impl_set, config);
    s.rng_seed = seed;
    return s;
}

std::uint64_t case_seed(std::uint64_t base_seed, std::uint64_t index) noexcept
{
    return splitmix64(base_seed + index * 0x9e3779b97f4a7c15ULL);
}

Scenario shrink(const Scenario& scenario)
{
    Verdict v;
    try
    {
        v = run_scenario(scenario).verdict;
    }
    catch (const Error&)
    {
        return scenario;
    }
    if (!v.divergent())
        return scenario;
    return Shrinker{scenario, v.kind}.run();
}

FuzzReport fuzz(const FuzzConfig& config)
{
    FuzzReport report;
    report.cases = config.cases;
    for (std::size_t i = 0; i < config.cases; ++i)
    {
        const auto seed = case_seed(config.base_seed, i);
        auto s = generate(seed, config.impls, config.generator);
        const auto r = run_scenario(s);
        if (!r.verdict.divergent())
            continue;
        Finding f{.case_index = i, .seed = seed, .verdict = r.verdict, .original = s, .shrunk = s, .shrunk_verdict = r.verdict};
        if (config.shrink)
        {
            f.shrunk = shrink(s);
            f.shrunk_verdict = run_scenario(f.shrunk).verdict;
        }
        report.findings.push_back(std::move(f));
    }
    return report;
}

std::string describe(const Step& step)
{
    if (const auto* adv = std::get_if<AdvanceTime>(&step))
        return "advance_time " + std::to_string(adv->seconds);
    const auto& c = std::get<CallStep>(step);
    std::string out = c.target + "." + c.sig.substr(0, c.sig.find('(')) + "(";
    for (std::size_t i = 0; i < c.args.size(); ++i)
    {
        if (i)
            out += ", ";
        if (const auto* n = std::get_if<std::string>(&c.args[i]))
            out += *n;
        else
            out += to_string(std::get<u256>(c.args[i]));
    }
    out += ") from " + c.sender;
    if (c.value != 0)
        out += " value " + to_string(c.value);
    return out;
}
}  // namespace drp
