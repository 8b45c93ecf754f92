// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

#include <drp/abi.hpp>
#include <drp/cli.hpp>
#include <drp/error.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

namespace drp::cli
{
namespace
{
using nlohmann::json;

std::string render(ByteView payload)
{
    const bool printable = !payload.empty() &&
        std::all_of(payload.begin(), payload.end(), [](std::uint8_t c) { return c >= 0x20 && c < 0x7f; });
    return printable ? "\"" + std::string(payload.begin(), payload.end()) + "\"" : to_hex(payload);
}

std::string seed_hex(std::uint64_t seed)
{
    std::ostringstream s;
    s << "0x" << std::hex << seed;
    return s.str();
}

/// Returns nullopt after reporting to `err`.
std::optional<Scenario> load_scenario(const std::string& path, std::ostream& err)
{
    std::ifstream in{path};
    if (!in)
    {
        err << "error: cannot read " << path << "\n";
        return std::nullopt;
    }
    const std::string text{std::istreambuf_iterator<char>{in}, std::istreambuf_iterator<char>{}};
    try
    {
        return parse_scenario(text);
    }
    catch (const json::parse_error& e)
    {
        err << "error: malformed JSON in " << path << " at byte " << e.byte << ": " << e.what() << "\n";
    }
    catch (const json::exception& e)
    {
        err << "error: " << path << ": " << e.what() << "\n";
    }
    catch (const FormatError& e)
    {
        err << "error: " << path << ": " << e.what() << "\n";
    }
    return std::nullopt;
}

bool write_json(const std::string& path, const json& doc, std::ostream& out, std::ostream& err)
{
    if (path == "-")
    {
        out << doc.dump(2) << "\n";
        return true;
    }
    std::ofstream f{path};
    if (!f)
    {
        err << "error: cannot write " << path << "\n";
        return false;
    }
    f << doc.dump(2) << "\n";
    return true;
}

// ---------------------------------------------------------------------------

struct RunArgs
{
    std::string file;
    bool digest = false;
};

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err)
{
    const auto scenario = load_scenario(a.file, err);
    if (!scenario)
        return exit_error;

    RunResult result;
    try
    {
        result = run_scenario(*scenario);
    }
    catch (const Error& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }

    for (const auto& t : result.trace)
    {
        const auto& step = t.setup ? scenario->setup[t.index] : scenario->txs[t.index];
        out << (t.setup ? "setup " : "tx ") << t.index << ": " << describe(step);
        if (t.is_call)
        {
            if (t.outcome.ok)
                out << " -> ok";
            else
                out << " -> revert " << render(t.outcome.ret_data);
            if (t.outcome.ok && !t.outcome.ret_data.empty())
                out << " " << to_hex(t.outcome.ret_data);
            out << " (gas " << t.outcome.gas_used << ")";
        }
        out << "\n";
    }
    if (a.digest)
        out << "digest " << to_hex(result.final_digest) << "\n";

    if (result.verdict.divergent())
    {
        out << "divergent at tx " << result.verdict.failing_tx << " (" << mismatch_name(result.verdict.kind)
            << "): " << result.verdict.message << "\n";
        err << result.verdict.message << "\n";
        return exit_divergence;
    }
    out << "consistent\n";
    return exit_ok;
}

// ---------------------------------------------------------------------------

struct FuzzArgs
{
    std::string impls;
    std::size_t cases = 1000;
    std::uint64_t seed = 0;
    bool finalize = false;
    bool no_shrink = false;
    GeneratorConfig generator{};
    std::string json_path;
};

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in{s};
    while (std::getline(in, cur, ','))
        if (!cur.empty())
            out.push_back(cur);
    return out;
}

int cmd_fuzz(FuzzArgs a, std::ostream& out, std::ostream& err)
{
    if (a.cases < 1)
    {
        err << "error: --cases must be at least 1\n";
        return exit_error;
    }
    FuzzConfig config;
    config.impls = split_list(a.impls);
    config.cases = a.cases;
    config.base_seed = a.seed;
    config.generator = a.generator;
    config.generator.finalize = a.finalize;
    config.shrink = !a.no_shrink;

    FuzzReport report;
    try
    {
        report = fuzz(config);
    }
    catch (const Error& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }

    const bool json_to_stdout = a.json_path == "-";
    if (!json_to_stdout)
    {
        out << "fuzz impls=" << a.impls << " cases=" << report.cases << " base_seed=" << a.seed
            << " finalize=" << (a.finalize ? "true" : "false") << "\n";

        // one line per finding, then one example block per distinct shrunk result
        std::map<std::pair<std::string, std::vector<std::string>>, const Finding*> distinct;
        for (const auto& f : report.findings)
        {
            std::vector<std::string> txs;
            for (const auto& t : f.shrunk.txs)
                txs.push_back(describe(t));
            out << "case " << f.case_index << " seed " << seed_hex(f.seed) << " kind "
                << mismatch_name(f.shrunk_verdict.kind) << " message \"" << f.shrunk_verdict.message << "\" txs [";
            for (std::size_t i = 0; i < txs.size(); ++i)
                out << (i ? "; " : "") << txs[i];
            out << "]\n";
            distinct.try_emplace({f.shrunk_verdict.message, txs}, &f);
        }
        for (const auto& [key, f] : distinct)
        {
            out << "\nFalsifying example (case " << f->case_index << ", seed " << seed_hex(f->seed) << "):\n";
            if (key.second.empty())
                out << "    txs=[]\n";
            for (const auto& t : key.second)
                out << "    " << t << "\n";
            out << "  reverted: " << key.first << "\n";
        }
        out << "\n" << report.findings.size() << " divergent of " << report.cases << " cases\n";
    }
    if (!a.json_path.empty() && !write_json(a.json_path, fuzz_report_to_json(report, config), out, err))
        return exit_error;
    return report.findings.empty() ? exit_ok : exit_findings;
}

// ---------------------------------------------------------------------------

struct GasArgs
{
    std::string file;
    std::optional<std::uint64_t> gas_price;
    std::optional<double> token_price;
    std::string json_path;
};

int cmd_gas_report(const GasArgs& a, std::ostream& out, std::ostream& err)
{
    Scenario scenario;
    if (a.file.empty())
        scenario = canonical_auction_scenario();
    else if (auto s = load_scenario(a.file, err))
        scenario = std::move(*s);
    else
        return exit_error;

    CostReport report;
    try
    {
        report = measure(scenario);
        if (a.gas_price || a.token_price)
            report = to_currency(std::move(report), a.gas_price.value_or(30'000'000'000ULL), a.token_price.value_or(1.0));
    }
    catch (const Error& e)
    {
        err << "error: " << e.what() << "\n";
        return e.code() == Errc::scenario_divergence ? exit_divergence : exit_error;
    }
    catch (const std::invalid_argument& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }

    out << format_table(report);
    const auto doc = cost_report_to_json(report);
    if (a.json_path.empty())
        out << "\n" << doc.dump(2) << "\n";
    else if (!write_json(a.json_path, doc, out, err))
        return exit_error;
    return exit_ok;
}

// ---------------------------------------------------------------------------

struct EncodeArgs
{
    std::string sig;
    std::string selector;
    std::vector<std::string> args;
};

int cmd_encode_check(const EncodeArgs& a, std::ostream& out, std::ostream& err)
{
    Selector sel;
    if (!a.sig.empty())
        sel = abi::selector_of(a.sig);
    else
    {
        const auto bytes = from_hex(a.selector);
        if (!bytes || bytes->size() != Selector::size)
        {
            err << "error: InvalidSelector: " << a.selector << "\n";
            return exit_error;
        }
        std::copy(bytes->begin(), bytes->end(), sel.bytes.begin());
    }

    std::vector<AbstractArgument> args;
    for (const auto& d : a.args)
    {
        auto parsed = parse_descriptor(d);
        if (!parsed)
        {
            err << "error: InvalidDescriptor: " << d << "\n";
            return exit_error;
        }
        args.push_back(std::move(*parsed));
    }
    try
    {
        out << to_hex(encode_abstract(sel, args)) << "\n";
    }
    catch (const Error& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_ok;
}

int cmd_decode_check(const std::string& hex, std::ostream& out, std::ostream& err)
{
    const auto bytes = from_hex(hex);
    if (!bytes)
    {
        err << "error: InvalidHex: " << hex << "\n";
        return exit_error;
    }
    DecodedCheck decoded;
    try
    {
        decoded = decode_abstract(*bytes);
    }
    catch (const Error& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }
    out << "selector " << to_hex(decoded.selector) << "\n";
    std::string flags = "--selector " + to_hex(decoded.selector);
    for (const auto& arg : decoded.args)
    {
        out << "arg " << to_descriptor(arg) << "\n";
        flags += " --arg " + to_descriptor(arg);
    }
    out << "encode-check " << flags << "\n";
    return exit_ok;
}
}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"drp: run transactions through a dissimilar-redundancy proxy", "drp"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Execute a scenario file and print each outcome");
    run_cmd->add_option("scenario", run_args.file, "Scenario JSON file")->required();
    run_cmd->add_flag("--digest", run_args.digest, "Print the final state digest");

    FuzzArgs fuzz_args;
    auto* fuzz_cmd = app.add_subcommand("fuzz", "Differentially fuzz implementations behind the proxy");
    fuzz_cmd->add_option("--impls", fuzz_args.impls, "Comma-separated code ids")->required();
    fuzz_cmd->add_option("--cases", fuzz_args.cases, "Number of generated scenarios");
    fuzz_cmd->add_option("--seed", fuzz_args.seed, "Base seed");
    fuzz_cmd->add_flag("--finalize", fuzz_args.finalize, "End every auction scenario with a time advance and finalize");
    fuzz_cmd->add_flag("--no-shrink", fuzz_args.no_shrink, "Report findings unshrunk");
    fuzz_cmd->add_option("--max-txs", fuzz_args.generator.max_txs, "Maximum transactions per scenario");
    fuzz_cmd->add_option("--max-value", fuzz_args.generator.max_value, "Largest generated value");
    fuzz_cmd->add_option("--min-actors", fuzz_args.generator.min_actors, "Fewest actors");
    fuzz_cmd->add_option("--max-actors", fuzz_args.generator.max_actors, "Most actors");
    fuzz_cmd->add_option("--json", fuzz_args.json_path, "Write the JSON report to a file, or - for stdout only");

    GasArgs gas_args;
    std::uint64_t gas_price = 0;
    double token_price = 0;
    auto* gas_cmd = app.add_subcommand("gas-report", "Proxied versus standalone gas per function");
    gas_cmd->add_option("scenario", gas_args.file, "Scenario JSON file (default: built-in auction scenario)");
    auto* gas_price_opt = gas_cmd->add_option("--gas-price", gas_price, "Price per gas unit in wei");
    auto* token_price_opt = gas_cmd->add_option("--token-price", token_price, "Currency per native token");
    gas_cmd->add_option("--json", gas_args.json_path, "Write the JSON report to a file, or - for stdout");

    EncodeArgs encode_args;
    auto* encode_cmd = app.add_subcommand("encode-check", "Encode a check registration");
    auto* sig_opt = encode_cmd->add_option("--sig", encode_args.sig, "Canonical signature of the check function");
    auto* sel_opt = encode_cmd->add_option("--selector", encode_args.selector, "Selector as hex");
    sig_opt->excludes(sel_opt);
    encode_cmd->add_option("--arg", encode_args.args, "static:<hex> | calldata:<offset>:<length> | env:<kind>");

    std::string decode_hex;
    auto* decode_cmd = app.add_subcommand("decode-check", "Decode a check registration");
    decode_cmd->add_option("hex", decode_hex, "Encoded check")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_error;
    }

    if (run_cmd->parsed())
        return cmd_run(run_args, out, err);
    if (fuzz_cmd->parsed())
        return cmd_fuzz(fuzz_args, out, err);
    if (gas_cmd->parsed())
    {
        if (gas_price_opt->count())
            gas_args.gas_price = gas_price;
        if (token_price_opt->count())
            gas_args.token_price = token_price;
        return cmd_gas_report(gas_args, out, err);
    }
    if (encode_cmd->parsed())
    {
        if (encode_args.sig.empty() && encode_args.selector.empty())
        {
            err << "error: one of --sig or --selector is required\n";
            return exit_error;
        }
        return cmd_encode_check(encode_args, out, err);
    }
    if (decode_cmd->parsed())
        return cmd_decode_check(decode_hex, out, err);
    return exit_error;
}
}  // namespace drp::cli
