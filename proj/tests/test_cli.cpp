// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

#include <drp/cli.hpp>
#include <drp/corpus.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace drp
{
namespace
{
namespace fs = std::filesystem;

struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result drp(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string sample(std::string_view name)
{
    return (fs::path{DRP_SCENARIO_DIR} / name).string();
}

class TempFile
{
public:
    explicit TempFile(std::string_view contents)
        : path_{fs::temp_directory_path() / ("drp_cli_" + std::to_string(counter_++) + ".json")}
    {
        std::ofstream{path_} << contents;
    }
    ~TempFile() { fs::remove(path_); }
    [[nodiscard]] std::string path() const { return path_.string(); }

private:
    static inline int counter_ = 0;
    fs::path path_;
};

bool contains(const std::string& s, std::string_view needle)
{
    return s.find(needle) != std::string::npos;
}

TEST(CliRun, EqualBidsDiverge)
{
    const auto r = drp({"run", sample("equal_bids.json")});
    EXPECT_EQ(r.code, cli::exit_divergence);
    EXPECT_TRUE(contains(r.out, "divergent at tx 2 (success): all implementations must return the same success"));
    EXPECT_EQ(r.err, "all implementations must return the same success\n");
}

TEST(CliRun, FinalizeWithoutBidsDiverges)
{
    const auto r = drp({"run", sample("finalize_without_bids.json")});
    EXPECT_EQ(r.code, cli::exit_divergence);
    EXPECT_TRUE(contains(r.out, "(checks): all implementations must return the same checks"));
}

TEST(CliRun, ConsistentScenarios)
{
    for (const auto* name : {"canonical_auction.json", "setup_only.json"})
    {
        const auto r = drp({"run", "--digest", sample(name)});
        EXPECT_EQ(r.code, cli::exit_ok) << name << r.err;
        EXPECT_TRUE(contains(r.out, "consistent\n"));
        EXPECT_TRUE(contains(r.out, "digest 0x"));
        EXPECT_TRUE(contains(r.out, "setup 0: nft.mint(seller, 1) from seller -> ok"));
    }
}

TEST(CliRun, RevertsAreRenderedAsText)
{
    const TempFile f{R"j({
      "accounts": [{"name": "alice", "balance": 5}],
      "deploy": [{"name": "t", "code_id": "token_a"}],
      "txs": [{"call": "t", "sender": "alice", "sig": "transfer(address,uint256)", "args": ["alice", 1]}]
    })j"};
    const auto r = drp({"run", f.path()});
    EXPECT_EQ(r.code, cli::exit_ok) << r.err;
    EXPECT_TRUE(contains(r.out, "tx 0: t.transfer(alice, 1) from alice -> revert \"")) << r.out;
}

TEST(CliRun, InputErrors)
{
    const TempFile bad_json{"{\"accounts\": [}"};
    auto r = drp({"run", bad_json.path()});
    EXPECT_EQ(r.code, cli::exit_error);
    EXPECT_TRUE(contains(r.err, "malformed JSON in")) << r.err;
    EXPECT_TRUE(contains(r.err, "at byte"));

    const TempFile unknown{R"j({"deploy": [{"name": "x", "code_id": "nope"}]})j"};
    r = drp({"run", unknown.path()});
    EXPECT_EQ(r.code, cli::exit_error);
    EXPECT_TRUE(contains(r.err, "ScenarioSetupError")) << r.err;

    const TempFile wrong_shape{R"j({"txs": 3})j"};
    r = drp({"run", wrong_shape.path()});
    EXPECT_EQ(r.code, cli::exit_error);

    r = drp({"run", "/nonexistent/scenario.json"});
    EXPECT_EQ(r.code, cli::exit_error);
    EXPECT_TRUE(contains(r.err, "cannot read"));

    EXPECT_EQ(drp({"run"}).code, cli::exit_error);
    EXPECT_EQ(drp({"frobnicate"}).code, cli::exit_error);
}

TEST(CliRun, HelpExitsZero)
{
    const auto r = drp({"--help"});
    EXPECT_EQ(r.code, cli::exit_ok);
    for (const auto* sub : {"run", "fuzz", "gas-report", "encode-check", "decode-check"})
        EXPECT_TRUE(contains(r.out, sub)) << sub;
}

TEST(CliFuzz, BuggyPairReportsShrunkExample)
{
    const auto r = drp({"fuzz", "--impls", "auction_a,auction_b", "--cases", "100", "--seed", "1"});
    EXPECT_EQ(r.code, cli::exit_findings) << r.err;
    EXPECT_TRUE(contains(r.out, "fuzz impls=auction_a,auction_b cases=100 base_seed=1 finalize=false"));
    EXPECT_TRUE(contains(r.out, "Falsifying example"));
    EXPECT_TRUE(contains(r.out, "    proxy.bid() from actor0 value 1\n    proxy.bid() from actor0 value 1\n"));
    EXPECT_TRUE(contains(r.out, "  reverted: all implementations must return the same success"));
    EXPECT_TRUE(contains(r.out, " divergent of 100 cases"));
}

TEST(CliFuzz, FinalizeFindsChecksMismatch)
{
    const auto r = drp({"fuzz", "--impls", "auction_a,auction_b", "--cases", "200", "--finalize"});
    EXPECT_EQ(r.code, cli::exit_findings);
    EXPECT_TRUE(contains(r.out, "kind checks"));
    EXPECT_TRUE(contains(r.out, "    advance_time 3600\n    proxy.finalize() from actor0\n"));
}

TEST(CliFuzz, IdenticalPairIsClean)
{
    const auto r = drp({"fuzz", "--impls", "auction_a,auction_a", "--cases", "100", "--finalize"});
    EXPECT_EQ(r.code, cli::exit_ok);
    EXPECT_TRUE(contains(r.out, "0 divergent of 100 cases"));
}

TEST(CliFuzz, JsonReport)
{
    fs::path p = fs::temp_directory_path() / "drp_cli_fuzz_report.json";
    const auto r = drp({"fuzz", "--impls", "token_a,token_b", "--cases", "20", "--json", p.string()});
    EXPECT_EQ(r.code, cli::exit_ok) << r.err;
    std::ifstream in{p};
    const auto doc = nlohmann::json::parse(in);
    EXPECT_EQ(doc.at("cases"), 20);
    EXPECT_TRUE(doc.at("findings").empty());
    fs::remove(p);
}

TEST(CliFuzz, BadArguments)
{
    EXPECT_EQ(drp({"fuzz", "--impls", "auction_a", "--cases", "0"}).code, cli::exit_error);
    EXPECT_EQ(drp({"fuzz", "--impls", "auction_a,token_a"}).code, cli::exit_error);
    EXPECT_EQ(drp({"fuzz", "--impls", "nope"}).code, cli::exit_error);
    EXPECT_EQ(drp({"fuzz"}).code, cli::exit_error);
}

TEST(CliGasReport, CanonicalTableAndJson)
{
    const auto r = drp({"gas-report"});
    ASSERT_EQ(r.code, cli::exit_ok) << r.err;
    const auto json_start = r.out.find("\n{");
    ASSERT_NE(json_start, std::string::npos);
    const auto doc = nlohmann::json::parse(r.out.substr(json_start));
    ASSERT_EQ(doc.at("rows").size(), 4u);
    EXPECT_EQ(doc.at("rows")[0].at("function"), "start");
    EXPECT_EQ(doc.at("rows")[3].at("function"), "finalize");
    EXPECT_TRUE(contains(r.out.substr(0, json_start), "subsequent bid"));
}

TEST(CliGasReport, PricedAndZeroPrice)
{
    auto r = drp({"gas-report", sample("canonical_auction.json"), "--gas-price", "0"});
    ASSERT_EQ(r.code, cli::exit_ok) << r.err;
    const auto doc = nlohmann::json::parse(r.out.substr(r.out.find("\n{")));
    for (const auto& row : doc.at("rows"))
        EXPECT_EQ(row.at("priced_cost").at("proxied").get<double>(), 0.0);

    r = drp({"gas-report", "--token-price", "-2"});
    EXPECT_EQ(r.code, cli::exit_error);
}

TEST(CliGasReport, DivergentScenarioExitsTwo)
{
    EXPECT_EQ(drp({"gas-report", sample("equal_bids.json")}).code, cli::exit_divergence);
}

TEST(CliEncodeCheck, RegistrationVectors)
{
    auto r = drp({"encode-check", "--sig", "balanceOf(address)", "--arg", "calldata:4:32"});
    EXPECT_EQ(r.code, cli::exit_ok) << r.err;
    EXPECT_EQ(r.out, "0x70a0823101010420\n");

    r = drp({"encode-check", "--selector", "0x70a08231", "--arg", "calldata:36:32"});
    EXPECT_EQ(r.out, "0x70a0823101012420\n");

    r = drp({"encode-check", "--sig", "allowance(address,address)", "--arg", "calldata:4:32", "--arg", "env:sender"});
    EXPECT_EQ(r.out, "0xdd62ed3e020104200200\n");
}

TEST(CliEncodeCheck, Errors)
{
    auto r = drp({"encode-check", "--sig", "balanceOf(address)", "--arg", "calldata:300:32"});
    EXPECT_EQ(r.code, cli::exit_error);
    EXPECT_TRUE(contains(r.err, "ArgumentTooLarge")) << r.err;

    r = drp({"encode-check", "--selector", "0x1234", "--arg", "env:sender"});
    EXPECT_EQ(r.code, cli::exit_error);
    EXPECT_TRUE(contains(r.err, "InvalidSelector"));

    r = drp({"encode-check", "--sig", "f()", "--arg", "env:gasprice"});
    EXPECT_EQ(r.code, cli::exit_error);
    EXPECT_TRUE(contains(r.err, "InvalidDescriptor"));

    EXPECT_EQ(drp({"encode-check"}).code, cli::exit_error);
    EXPECT_EQ(drp({"encode-check", "--sig", "f()", "--selector", "0x00000000"}).code, cli::exit_error);
}

TEST(CliDecodeCheck, RoundTrip)
{
    auto r = drp({"decode-check", "0xdd62ed3e020104200200"});
    ASSERT_EQ(r.code, cli::exit_ok) << r.err;
    EXPECT_EQ(r.out,
        "selector 0xdd62ed3e\n"
        "arg calldata:4:32\n"
        "arg env:sender\n"
        "encode-check --selector 0xdd62ed3e --arg calldata:4:32 --arg env:sender\n");

    r = drp({"decode-check", "0x70a08231010003aabbcc"});
    ASSERT_EQ(r.code, cli::exit_ok) << r.err;
    EXPECT_TRUE(contains(r.out, "arg static:0xaabbcc\n"));

    r = drp({"decode-check", "0x70a0823101"});
    EXPECT_EQ(r.code, cli::exit_error);
    EXPECT_TRUE(contains(r.err, "TruncatedEncoding")) << r.err;

    r = drp({"decode-check", "0xzz"});
    EXPECT_EQ(r.code, cli::exit_error);
    EXPECT_TRUE(contains(r.err, "InvalidHex"));
}

TEST(ScenarioJson, RoundTripsGeneratedScenarios)
{
    const std::vector<std::string> auctions{std::string{corpus::auction_a}, std::string{corpus::auction_b}};
    const std::vector<std::string> tokens{std::string{corpus::token_a}, std::string{corpus::token_b}};
    GeneratorConfig cfg;
    cfg.finalize = true;
    for (std::uint64_t seed = 0; seed < 50; ++seed)
    {
        for (const auto* impls : {&auctions, &tokens})
        {
            const auto s = generate(seed, *impls, cfg);
            const auto doc = cli::scenario_to_json(s);
            EXPECT_EQ(cli::scenario_from_json(doc), s);
            EXPECT_EQ(cli::parse_scenario(doc.dump()), s);
        }
    }
}

TEST(ScenarioJson, SamplesMatchBuiltInCanonicalScenario)
{
    std::ifstream in{sample("canonical_auction.json")};
    const auto doc = nlohmann::json::parse(in);
    const auto s = cli::scenario_from_json(doc);
    EXPECT_EQ(measure(s).rows.size(), 4u);
    EXPECT_EQ(run_scenario(s).final_digest, run_scenario(canonical_auction_scenario()).final_digest);
}

TEST(ScenarioJson, LargeValuesAndRejections)
{
    const auto s = cli::parse_scenario(R"j({"accounts": [{"name": "a", "balance": "0x10000000000000000"}]})j");
    EXPECT_EQ(s.accounts.at(0).balance, u256{1} << 64);
    EXPECT_THROW((void)cli::parse_scenario(R"j({"accounts": [{"name": "a", "balance": -1}]})j"), cli::FormatError);
    EXPECT_THROW((void)cli::parse_scenario(R"j({"txs": [{"warp": 1}]})j"), cli::FormatError);
    EXPECT_THROW((void)cli::parse_scenario("[1, 2"), nlohmann::json::parse_error);
}
}  // namespace
}  // namespace drp
