// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include <drp/abi.hpp>
#include <drp/error.hpp>
#include <drp/keccak.hpp>
#include <drp/redundancy.hpp>

#include <gtest/gtest.h>

namespace drp
{
namespace
{
using test::tx;

/// Writes `write` to slot 0 (if nonzero), then returns or reverts with `data`.
struct Script
{
    bool ok = true;
    std::string data;
    std::uint64_t write = 0;
};

class Scripted final : public Behavior
{
public:
    explicit Scripted(Script s) : script_{std::move(s)} {}
    Bytes execute(Host& host, ByteView calldata) override
    {
        if (abi::selector_from(calldata) == abi::selector_of("get(uint256)"))
            return abi::encode_word(host.sload(abi::Args{calldata}.word(0)));
        if (script_.write)
            host.sstore(word(0), word(script_.write));
        if (!script_.ok)
            revert(script_.data);
        return to_bytes(script_.data);
    }

private:
    Script script_;
};

/// Increments slot 0 and returns the new value.
class Counter final : public Behavior
{
public:
    Bytes execute(Host& host, ByteView) override
    {
        const auto next = host.sload(word(0)).to_u256() + 1;
        host.sstore(word(0), Word::from_u256(next));
        return abi::encode_uint(next);
    }
};

class RedundancyTest : public ::testing::Test
{
protected:
    Engine engine;
    const Address user = address_from_u64(0x5e4);

    void SetUp() override
    {
        test::register_test_codes(engine);
        register_proxy_code(engine);
        engine.register_code("counter", [] { return std::make_unique<Counter>(); });
        const std::vector<std::pair<std::string, Script>> scripts{
            {"ok_x", {true, "x", 1}},
            {"ok_x_other_write", {true, "x", 2}},
            {"ok_y", {true, "y", 1}},
            {"fail_x", {false, "x", 1}},
            {"fail_y", {false, "y", 2}},
        };
        for (const auto& [id, s] : scripts)
            engine.register_code(id, [s = s] { return std::make_unique<Scripted>(s); });
        engine.state().set_balance(user, 100);
    }

    Address proxy_of(std::initializer_list<std::string_view> ids)
    {
        std::vector<Address> impls;
        for (const auto id : ids)
            impls.push_back(engine.deploy(id));
        return deploy_proxy(engine, impls);
    }

    Outcome call(const Address& proxy, std::string_view sig = "run()")
    {
        return engine.call(tx(user, proxy, abi::encode_call(sig)));
    }
};

TEST(DelegateResultWire, Layout)
{
    const auto h = keccak256(std::string_view{"h"});
    const DelegateResult r{true, h, Bytes{0xab, 0xcd}};
    const auto bytes = encode_delegate_result(r);
    ASSERT_EQ(bytes.size(), 35u);
    EXPECT_EQ(bytes[0], 1);
    EXPECT_TRUE(std::equal(h.bytes.begin(), h.bytes.end(), bytes.begin() + 1));
    EXPECT_EQ(bytes[33], 0xab);
    EXPECT_EQ(decode_delegate_result(bytes), r);

    EXPECT_EQ(encode_delegate_result({false, h, {}})[0], 0);
    EXPECT_FALSE(decode_delegate_result(ByteView{bytes}.first(32)));
    auto bad = bytes;
    bad[0] = 2;
    EXPECT_FALSE(decode_delegate_result(bad));
}

TEST(CallDelegateWire, RoundTrip)
{
    test::Rng rng{4};
    for (int round = 0; round < 300; ++round)
    {
        CallDelegateRequest req;
        req.implementation = test::random_address(rng, 1000);
        req.is_last = test::uniform(rng, 0, 1);
        req.data.resize(test::uniform(rng, 0, 100));
        for (auto& b : req.data)
            b = static_cast<std::uint8_t>(rng());
        for (std::size_t i = 0, n = test::uniform(rng, 0, 4); i < n; ++i)
            req.checks.push_back(CheckSpec{test::random_address(rng, 9), abi::selector_of("f()"),
                {CallDataArg{test::uniform(rng, 0, 255), 32}, EnvArg{EnvKind::timestamp}}});
        const auto encoded = encode_call_delegate(req);
        EXPECT_EQ(abi::selector_from(encoded), call_delegate_selector());
        ASSERT_EQ(decode_call_delegate(encoded), req);
        EXPECT_FALSE(decode_call_delegate(ByteView{encoded}.first(encoded.size() - 1)));
    }
}

TEST(Mismatch, MessagesAndClassification)
{
    EXPECT_EQ(success_mismatch_message, "all implementations must return the same success");
    EXPECT_EQ(data_mismatch_message, "all implementations must return the same data");
    EXPECT_EQ(checks_mismatch_message, "all implementations must return the same checks");
    for (const auto k : {MismatchKind::success, MismatchKind::data, MismatchKind::checks})
        EXPECT_EQ(classify_revert(to_bytes(mismatch_message(k))), k);
    EXPECT_FALSE(classify_revert(to_bytes("bid too low")));
}

TEST(ProxyConfig, EmptyImplementationList)
{
    ProxyConfig cfg;
    try
    {
        set_implementations(cfg, {});
        FAIL();
    }
    catch (const Error& e)
    {
        EXPECT_EQ(e.code(), Errc::empty_implementation_list);
    }
    Engine engine;
    register_proxy_code(engine);
    EXPECT_THROW((void)deploy_proxy(engine, std::vector<Address>{}), Error);
}

TEST_F(RedundancyTest, AgreementPersistsLastImplementationOnly)
{
    const auto proxy = proxy_of({"counter", "counter", "counter"});
    for (std::uint64_t i = 1; i <= 3; ++i)
    {
        const auto out = call(proxy);
        ASSERT_TRUE(out.ok);
        // a leaked intermediate write would make later copies answer i + 1
        EXPECT_EQ(abi::decode_word(out.ret_data), word(i));
        EXPECT_EQ(engine.state().sload(proxy, word(0)), word(i));
    }
}

TEST_F(RedundancyTest, ImplementationStorageIsUntouched)
{
    std::vector<Address> impls{engine.deploy("counter"), engine.deploy("counter")};
    const auto proxy = deploy_proxy(engine, impls);
    ASSERT_TRUE(call(proxy).ok);
    for (const auto& impl : impls)
        EXPECT_TRUE(engine.state().storage_of(impl).empty());
    EXPECT_FALSE(engine.state().storage_of(proxy).empty());
}

TEST_F(RedundancyTest, SingleImplementationMatchesStandalone)
{
    const auto standalone = engine.deploy("kv");
    const auto proxy = proxy_of({"kv"});
    test::Rng rng{21};
    for (int i = 0; i < 200; ++i)
    {
        Bytes data;
        if (test::uniform(rng, 0, 2))
            data = abi::encode_call("set(uint256,uint256)", {test::random_word(rng, 3), test::random_word(rng, 3)});
        else
            data = abi::encode_call("setThenFail(uint256,uint256)", {test::random_word(rng, 3), word(1)});
        const auto direct = engine.call(tx(user, standalone, data));
        const auto via = engine.call(tx(user, proxy, data));
        ASSERT_EQ(direct.ok, via.ok);
        ASSERT_EQ(direct.ret_data, via.ret_data);
        ASSERT_EQ(engine.state().storage_of(standalone), engine.state().storage_of(proxy));
    }
}

TEST_F(RedundancyTest, SuccessMismatchTakesPrecedence)
{
    // ok and data both differ
    const auto proxy = proxy_of({"ok_x", "fail_y"});
    const auto before = engine.state().state_digest();
    const auto out = call(proxy);
    EXPECT_FALSE(out.ok);
    EXPECT_EQ(out.ret_data, to_bytes(success_mismatch_message));
    EXPECT_EQ(engine.state().state_digest(), before);
}

TEST_F(RedundancyTest, DataMismatch)
{
    const auto proxy = proxy_of({"ok_x", "ok_y"});
    const auto out = call(proxy);
    EXPECT_FALSE(out.ok);
    EXPECT_EQ(out.ret_data, to_bytes(data_mismatch_message));
}

TEST_F(RedundancyTest, DifferentRevertReasonsAreADataMismatch)
{
    const auto proxy = proxy_of({"fail_x", "fail_y"});
    EXPECT_EQ(call(proxy).ret_data, to_bytes(data_mismatch_message));
}

TEST_F(RedundancyTest, ChecksOnProxyRouteToActiveImplementation)
{
    const auto proxy = proxy_of({"ok_x", "ok_x_other_write"});
    auto& cfg = proxy_at(engine, proxy).config();
    // without checks the two agree
    EXPECT_TRUE(call(proxy).ok);

    const auto get0 = encode_abstract(abi::selector_of("get(uint256)"),
        std::vector<AbstractArgument>{StaticArg{abi::encode_word(word(0))}});
    cfg.registry.register_check(abi::selector_of("run()"), proxy, get0);
    const auto before = engine.state().state_digest();
    const auto out = call(proxy);
    EXPECT_FALSE(out.ok);
    EXPECT_EQ(out.ret_data, to_bytes(checks_mismatch_message));
    EXPECT_EQ(engine.state().state_digest(), before);
}

TEST_F(RedundancyTest, AgreedFailureRevertsWithAgreedData)
{
    const auto proxy = proxy_of({"fail_x", "fail_x"});
    const auto before = engine.state().state_digest();
    const auto out = call(proxy);
    EXPECT_FALSE(out.ok);
    EXPECT_EQ(out.ret_data, to_bytes("x"));
    EXPECT_EQ(engine.state().state_digest(), before);
}

TEST_F(RedundancyTest, ChecksHashWithoutRegistrationsIsEmptyListHash)
{
    const auto impl = engine.deploy("ok_x");
    const auto proxy = deploy_proxy(engine, std::vector{impl});
    const CallDelegateRequest req{impl, abi::encode_call("run()"), {}, false};
    auto parent = tx(user, proxy, {});
    const auto before = engine.state().state_digest();
    const auto out = engine.delegate_call(parent, proxy, encode_call_delegate(req));
    EXPECT_FALSE(out.ok);  // not last: the frame reverts carrying the result
    const auto r = decode_delegate_result(out.ret_data);
    ASSERT_TRUE(r);
    EXPECT_TRUE(r->ok);
    EXPECT_EQ(r->ret_data, to_bytes("x"));
    EXPECT_EQ(r->checks_hash, keccak256(std::string_view{}));
    EXPECT_EQ(engine.state().state_digest(), before);

    // last: same triple, returned normally, writes persist
    const CallDelegateRequest last{impl, abi::encode_call("run()"), {}, true};
    const auto kept = engine.delegate_call(parent, proxy, encode_call_delegate(last));
    EXPECT_TRUE(kept.ok);
    EXPECT_EQ(decode_delegate_result(kept.ret_data), r);
    EXPECT_EQ(engine.state().sload(proxy, word(0)), word(1));
}

TEST_F(RedundancyTest, FailedImplementationChecksSeePreState)
{
    const auto impl = engine.deploy("fail_x");
    const auto proxy = deploy_proxy(engine, std::vector{impl});
    const CheckSpec get0{proxy, abi::selector_of("get(uint256)"), {StaticArg{abi::encode_word(word(0))}}};
    const CallDelegateRequest req{impl, abi::encode_call("run()"), {get0}, false};
    const auto out = engine.delegate_call(tx(user, proxy, {}), proxy, encode_call_delegate(req));
    const auto r = decode_delegate_result(out.ret_data);
    ASSERT_TRUE(r);
    EXPECT_FALSE(r->ok);
    EXPECT_EQ(r->ret_data, to_bytes("x"));
    const std::vector<Bytes> pre{abi::encode_word(Word{})};
    EXPECT_EQ(r->checks_hash, hash_checks(pre));
}

TEST_F(RedundancyTest, UndecodableRequestIsAnInternalError)
{
    const auto proxy = proxy_of({"ok_x"});
    Bytes junk(call_delegate_selector().bytes.begin(), call_delegate_selector().bytes.end());
    junk.push_back(1);
    const auto out = engine.delegate_call(tx(user, proxy, {}), proxy, junk);
    EXPECT_FALSE(out.ok);
    EXPECT_EQ(out.ret_data, to_bytes(proxy_internal_error_message));
}

TEST_F(RedundancyTest, ProxyCarriesValueForImplementations)
{
    const auto proxy = proxy_of({"kv", "kv"});
    const auto out = engine.call(tx(user, proxy, abi::encode_call("deposit()"), 10));
    ASSERT_TRUE(out.ok);
    EXPECT_EQ(abi::decode_word(out.ret_data), word(10));
    EXPECT_EQ(engine.state().balance(proxy), 10);
}

/// Digest at each implementation frame entry, keyed by implementation.
class EntryDigests final : public ExecutionObserver
{
public:
    Address proxy;
    std::vector<std::pair<Address, Word>> entries;
    void on_enter(const FrameInfo& f, ByteView, const WorldState& s) override
    {
        if (f.is_delegate && f.storage_context == proxy && f.code_address != proxy)
            entries.emplace_back(f.code_address, s.state_digest());
    }
};

TEST_F(RedundancyTest, EveryImplementationStartsFromPreCallState)
{
    const auto proxy = proxy_of({"kv", "kv_twin", "kv"});
    EntryDigests obs;
    obs.proxy = proxy;
    engine.set_observer(&obs);
    test::Rng rng{31};
    for (int i = 0; i < 300; ++i)
    {
        obs.entries.clear();
        const auto pre = engine.state().state_digest();
        const auto data =
            abi::encode_call("set(uint256,uint256)", {test::random_word(rng, 5), test::random_word(rng, 5)});
        ASSERT_TRUE(engine.call(tx(user, proxy, data)).ok);
        ASSERT_EQ(obs.entries.size(), 3u);
        for (const auto& [impl, digest] : obs.entries)
            ASSERT_EQ(digest, pre);
    }
    engine.set_observer(nullptr);
}
}  // namespace
}  // namespace drp
