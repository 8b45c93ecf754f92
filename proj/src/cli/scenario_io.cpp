// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

#include <drp/cli.hpp>

#include <cctype>
#include <limits>

namespace drp::cli
{
using nlohmann::json;

namespace
{
[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw FormatError{where + ": " + what};
}

const json& member(const json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object() || !obj.contains(key))
        fail(where, std::string{"missing \""} + key + "\"");
    return obj.at(key);
}

std::string string_field(const json& obj, const char* key, const std::string& where)
{
    const auto& v = member(obj, key, where);
    if (!v.is_string())
        fail(where, std::string{"\""} + key + "\" must be a string");
    return v.get<std::string>();
}

const json& array_field(const json& obj, const char* key, const std::string& where)
{
    static const json empty = json::array();
    if (!obj.contains(key))
        return empty;
    const auto& v = obj.at(key);
    if (!v.is_array())
        fail(where, std::string{"\""} + key + "\" must be an array");
    return v;
}

u256 number(const json& v, const std::string& where)
{
    if (v.is_number_unsigned())
        return u256{v.get<std::uint64_t>()};
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
        return u256{static_cast<std::uint64_t>(v.get<std::int64_t>())};
    if (v.is_string())
        if (const auto n = parse_u256(v.get<std::string>()))
            return *n;
    fail(where, "expected a non-negative integer");
}

bool looks_numeric(const std::string& s)
{
    return !s.empty() && std::isdigit(static_cast<unsigned char>(s.front()));
}

void check_name(const std::string& name, const std::string& where)
{
    if (name.empty() || looks_numeric(name))
        fail(where, "invalid name \"" + name + "\"");
}

ArgValue arg_value(const json& v, const std::string& where)
{
    if (v.is_string() && !looks_numeric(v.get<std::string>()))
        return v.get<std::string>();
    return number(v, where);
}

json number_to_json(const u256& v)
{
    if (v <= std::numeric_limits<std::uint64_t>::max())
        return static_cast<std::uint64_t>(v);
    return to_string(v);
}

json arg_to_json(const ArgValue& v)
{
    if (const auto* n = std::get_if<std::string>(&v))
        return *n;
    return number_to_json(std::get<u256>(v));
}

AbstractArgument abstract_arg(const json& v, const std::string& where)
{
    if (!v.is_object() || v.size() != 1)
        fail(where, "argument must be an object with one of \"static\", \"calldata\", \"env\"");
    if (v.contains("static"))
    {
        const auto& s = v.at("static");
        auto bytes = s.is_string() ? from_hex(s.get<std::string>()) : std::nullopt;
        if (!bytes)
            fail(where, "\"static\" must be a hex string");
        return StaticArg{std::move(*bytes)};
    }
    if (v.contains("calldata"))
    {
        const auto& c = v.at("calldata");
        if (!c.is_array() || c.size() != 2 || !c[0].is_number_unsigned() || !c[1].is_number_unsigned())
            fail(where, "\"calldata\" must be [offset, length]");
        return CallDataArg{c[0].get<std::size_t>(), c[1].get<std::size_t>()};
    }
    if (v.contains("env"))
    {
        const auto& e = v.at("env");
        const auto kind = e.is_string() ? parse_env_kind(e.get<std::string>()) : std::nullopt;
        if (!kind)
            fail(where, "\"env\" must be one of sender, value, timestamp, blocknumber");
        return EnvArg{*kind};
    }
    fail(where, "unknown argument kind");
}

json abstract_to_json(const AbstractArgument& a)
{
    return std::visit(
        [](const auto& x) -> json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, StaticArg>)
                return {{"static", to_hex(x.content)}};
            else if constexpr (std::is_same_v<T, CallDataArg>)
                return {{"calldata", {x.offset, x.length}}};
            else
                return {{"env", std::string{env_kind_name(x.kind)}}};
        },
        a);
}

Step step_from_json(const json& v, const std::string& where)
{
    if (!v.is_object())
        fail(where, "step must be an object");
    if (v.contains("advance_time"))
    {
        const auto secs = number(v.at("advance_time"), where + ".advance_time");
        if (secs > std::numeric_limits<std::uint64_t>::max())
            fail(where, "advance_time out of range");
        return AdvanceTime{static_cast<std::uint64_t>(secs)};
    }
    CallStep c;
    c.target = string_field(v, "call", where);
    c.sender = string_field(v, "sender", where);
    c.sig = string_field(v, "sig", where);
    if (v.contains("value"))
        c.value = number(v.at("value"), where + ".value");
    const auto& args = array_field(v, "args", where);
    for (std::size_t i = 0; i < args.size(); ++i)
        c.args.push_back(arg_value(args[i], where + ".args[" + std::to_string(i) + "]"));
    return c;
}

json step_to_json(const Step& s)
{
    if (const auto* adv = std::get_if<AdvanceTime>(&s))
        return {{"advance_time", adv->seconds}};
    const auto& c = std::get<CallStep>(s);
    json args = json::array();
    for (const auto& a : c.args)
        args.push_back(arg_to_json(a));
    return {{"call", c.target}, {"sender", c.sender}, {"value", number_to_json(c.value)}, {"sig", c.sig}, {"args", args}};
}

std::vector<Step> steps(const json& doc, const char* key)
{
    std::vector<Step> out;
    const auto& arr = array_field(doc, key, key);
    for (std::size_t i = 0; i < arr.size(); ++i)
        out.push_back(step_from_json(arr[i], std::string{key} + "[" + std::to_string(i) + "]"));
    return out;
}

json steps_to_json(const std::vector<Step>& v)
{
    json out = json::array();
    for (const auto& s : v)
        out.push_back(step_to_json(s));
    return out;
}
}  // namespace

Scenario scenario_from_json(const json& doc)
{
    if (!doc.is_object())
        fail("document", "must be an object");
    Scenario s;
    if (doc.contains("seed"))
        s.rng_seed = static_cast<std::uint64_t>(number(doc.at("seed"), "seed"));
    if (doc.contains("genesis_time"))
        s.genesis_time = static_cast<std::uint64_t>(number(doc.at("genesis_time"), "genesis_time"));

    const auto& accounts = array_field(doc, "accounts", "accounts");
    for (std::size_t i = 0; i < accounts.size(); ++i)
    {
        const auto where = "accounts[" + std::to_string(i) + "]";
        Account a{string_field(accounts[i], "name", where), 0};
        check_name(a.name, where);
        if (accounts[i].contains("balance"))
            a.balance = number(accounts[i].at("balance"), where + ".balance");
        s.accounts.push_back(std::move(a));
    }
    for (const auto& a : array_field(doc, "actors", "actors"))
    {
        if (!a.is_string())
            fail("actors", "entries must be names");
        s.actors.push_back(a.get<std::string>());
    }

    const auto& deploy = array_field(doc, "deploy", "deploy");
    for (std::size_t i = 0; i < deploy.size(); ++i)
    {
        const auto where = "deploy[" + std::to_string(i) + "]";
        Deployment d{string_field(deploy[i], "name", where), string_field(deploy[i], "code_id", where), {}};
        check_name(d.name, where);
        const auto& args = array_field(deploy[i], "args", where);
        for (std::size_t k = 0; k < args.size(); ++k)
            d.args.push_back(arg_value(args[k], where + ".args[" + std::to_string(k) + "]"));
        s.deploy.push_back(std::move(d));
    }

    if (doc.contains("proxy"))
    {
        const auto& p = doc.at("proxy");
        ProxySetup setup;
        for (const auto& name : array_field(p, "implementations", "proxy"))
        {
            if (!name.is_string())
                fail("proxy.implementations", "entries must be names");
            setup.implementations.push_back(name.get<std::string>());
        }
        const auto& checks = array_field(p, "checks", "proxy");
        for (std::size_t i = 0; i < checks.size(); ++i)
        {
            const auto where = "proxy.checks[" + std::to_string(i) + "]";
            CheckRegistration c;
            c.for_sig = string_field(checks[i], "for_sig", where);
            c.target = string_field(checks[i], "target", where);
            c.check_sig = string_field(checks[i], "check_sig", where);
            const auto& args = array_field(checks[i], "args", where);
            for (std::size_t k = 0; k < args.size(); ++k)
                c.args.push_back(abstract_arg(args[k], where + ".args[" + std::to_string(k) + "]"));
            setup.checks.push_back(std::move(c));
        }
        s.proxy = std::move(setup);
    }

    s.setup = steps(doc, "setup");
    s.txs = steps(doc, "txs");
    return s;
}

json scenario_to_json(const Scenario& s)
{
    json doc;
    doc["seed"] = s.rng_seed;
    doc["genesis_time"] = s.genesis_time;
    doc["accounts"] = json::array();
    for (const auto& a : s.accounts)
        doc["accounts"].push_back({{"name", a.name}, {"balance", number_to_json(a.balance)}});
    doc["actors"] = s.actors;
    doc["deploy"] = json::array();
    for (const auto& d : s.deploy)
    {
        json args = json::array();
        for (const auto& a : d.args)
            args.push_back(arg_to_json(a));
        doc["deploy"].push_back({{"name", d.name}, {"code_id", d.code_id}, {"args", args}});
    }
    if (s.proxy)
    {
        json checks = json::array();
        for (const auto& c : s.proxy->checks)
        {
            json args = json::array();
            for (const auto& a : c.args)
                args.push_back(abstract_to_json(a));
            checks.push_back({{"for_sig", c.for_sig}, {"target", c.target}, {"check_sig", c.check_sig}, {"args", args}});
        }
        doc["proxy"] = {{"implementations", s.proxy->implementations}, {"checks", checks}};
    }
    doc["setup"] = steps_to_json(s.setup);
    doc["txs"] = steps_to_json(s.txs);
    return doc;
}

Scenario parse_scenario(std::string_view text)
{
    return scenario_from_json(json::parse(text));
}

json verdict_to_json(const Verdict& v)
{
    if (!v.divergent())
        return {{"status", "consistent"}};
    return {{"status", "divergent"}, {"failing_tx", v.failing_tx}, {"kind", std::string{mismatch_name(v.kind)}},
        {"message", v.message}};
}

json fuzz_report_to_json(const FuzzReport& report, const FuzzConfig& config)
{
    json findings = json::array();
    for (const auto& f : report.findings)
    {
        json txs = json::array();
        for (const auto& t : f.shrunk.txs)
            txs.push_back(describe(t));
        findings.push_back({
            {"case", f.case_index},
            {"seed", f.seed},
            {"kind", std::string{mismatch_name(f.shrunk_verdict.kind)}},
            {"message", f.shrunk_verdict.message},
            {"verdict", verdict_to_json(f.verdict)},
            {"shrunk_txs", txs},
            {"shrunk", scenario_to_json(f.shrunk)},
        });
    }
    return {
        {"impls", config.impls},
        {"base_seed", config.base_seed},
        {"cases", report.cases},
        {"finalize", config.generator.finalize},
        {"divergent", report.findings.size()},
        {"findings", findings},
    };
}

json cost_report_to_json(const CostReport& report)
{
    json rows = json::array();
    for (const auto& r : report.rows)
    {
        json row{
            {"function", r.function},
            {"intrinsic_gas", r.intrinsic_gas},
            {"proxied_gas", r.proxied_gas},
            {"standalone_gas", r.standalone_gas},
            {"overhead_gas", r.overhead_gas},
            {"overhead_fraction", r.overhead_fraction},
        };
        if (r.priced_cost)
            row["priced_cost"] = {{"proxied", r.priced_cost->proxied}, {"standalone", r.priced_cost->standalone}};
        rows.push_back(std::move(row));
    }
    return {{"implementations", report.implementations}, {"rows", rows}};
}
}  // namespace drp::cli
