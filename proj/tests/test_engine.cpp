// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include <drp/abi.hpp>
#include <drp/corpus.hpp>
#include <drp/engine.hpp>
#include <drp/error.hpp>

#include <gtest/gtest.h>

namespace drp
{
namespace
{
using test::tx;

const Address alice = address_from_u64(0xa11ce);
const Address bob = address_from_u64(0xb0b);

class EngineTest : public ::testing::Test
{
protected:
    Engine engine;
    Address kv;

    void SetUp() override
    {
        test::register_test_codes(engine);
        kv = engine.deploy("kv");
        engine.state().set_balance(alice, 1000);
    }

    Outcome set(const Address& target, std::uint64_t slot, std::uint64_t value)
    {
        return engine.call(tx(alice, target, abi::encode_call("set(uint256,uint256)", {word(slot), word(value)})));
    }
};

TEST_F(EngineTest, DeployAddressesAreDistinctAndBound)
{
    const auto second = engine.deploy("kv");
    EXPECT_NE(kv, second);
    EXPECT_EQ(engine.state().code_of(second), "kv");
    try
    {
        (void)engine.deploy("nope");
        FAIL();
    }
    catch (const Error& e)
    {
        EXPECT_EQ(e.code(), Errc::unknown_code_id);
    }
}

TEST_F(EngineTest, DeployAddressFollowsDocumentedDerivation)
{
    Engine fresh;
    test::register_test_codes(fresh);
    const auto deployer = address_from_u64(7);
    const auto a = fresh.deploy("kv", {}, deployer);
    Bytes preimage(deployer.bytes.begin(), deployer.bytes.end());
    preimage.resize(preimage.size() + 8, 0);  // sequence 0, big-endian
    EXPECT_EQ(a, keccak256(preimage).to_address());
}

TEST_F(EngineTest, MalformedAndUnknownTargets)
{
    try
    {
        (void)engine.call(tx(alice, kv, Bytes{1, 2, 3}));
        FAIL();
    }
    catch (const Error& e)
    {
        EXPECT_EQ(e.code(), Errc::malformed_call);
    }
    try
    {
        (void)engine.call(tx(alice, bob, abi::encode_call("bid()")));
        FAIL();
    }
    catch (const Error& e)
    {
        EXPECT_EQ(e.code(), Errc::unknown_target);
    }
}

TEST_F(EngineTest, SuccessCommitsAndRevertRollsBack)
{
    EXPECT_TRUE(set(kv, 1, 5).ok);
    EXPECT_EQ(engine.state().sload(kv, word(1)), word(5));

    const auto before = engine.state().state_digest();
    const auto out =
        engine.call(tx(alice, kv, abi::encode_call("setThenFail(uint256,uint256)", {word(1), word(6)}), 10));
    EXPECT_FALSE(out.ok);
    EXPECT_EQ(out.ret_data, to_bytes("fail after write"));
    EXPECT_EQ(engine.state().state_digest(), before);
    EXPECT_EQ(engine.state().balance(alice), 1000);
}

TEST_F(EngineTest, ValueMovesBeforeExecution)
{
    const auto out = engine.call(tx(alice, kv, abi::encode_call("deposit()"), 30));
    ASSERT_TRUE(out.ok);
    EXPECT_EQ(abi::decode_word(out.ret_data)->to_u256(), 30);
    EXPECT_EQ(engine.state().balance(kv), 30);
    EXPECT_EQ(engine.state().balance(alice), 970);
}

TEST_F(EngineTest, InsufficientValueIsAFailedOutcome)
{
    const auto before = engine.state().state_digest();
    const auto out = engine.call(tx(bob, kv, abi::encode_call("deposit()"), 1));
    EXPECT_FALSE(out.ok);
    EXPECT_EQ(engine.state().state_digest(), before);
}

TEST_F(EngineTest, OutOfGasIsAFailedOutcomeWithEmptyData)
{
    auto ctx = tx(alice, kv, abi::encode_call("burn(uint256)", {word(10)}));
    ctx.gas_limit = engine.intrinsic_gas(ctx.calldata) + 30000;
    const auto before = engine.state().state_digest();
    const auto out = engine.call(ctx);
    EXPECT_FALSE(out.ok);
    EXPECT_TRUE(out.ret_data.empty());
    EXPECT_EQ(out.gas_used, ctx.gas_limit);
    EXPECT_EQ(engine.state().state_digest(), before);
}

TEST_F(EngineTest, GasAccountingFollowsSchedule)
{
    const auto& s = engine.schedule();
    const auto data = abi::encode_call("set(uint256,uint256)", {word(4), word(9)});
    const auto intrinsic = s.tx_base + s.per_calldata_byte * data.size();
    EXPECT_EQ(engine.intrinsic_gas(data), intrinsic);

    auto out = engine.call(tx(alice, kv, data));
    EXPECT_EQ(out.gas_used, intrinsic + s.sstore_new);
    out = engine.call(tx(alice, kv, data));
    EXPECT_EQ(out.gas_used, intrinsic + s.sstore_update);
}

TEST_F(EngineTest, GasIsDeterministic)
{
    Engine other;
    test::register_test_codes(other);
    const auto kv2 = other.deploy("kv");
    ASSERT_EQ(kv, kv2);
    other.state().set_balance(alice, 1000);
    for (std::uint64_t i = 0; i < 20; ++i)
    {
        const auto data = abi::encode_call("set(uint256,uint256)", {word(i % 3), word(i % 4)});
        EXPECT_EQ(engine.call(tx(alice, kv, data)), other.call(tx(alice, kv2, data)));
    }
}

TEST_F(EngineTest, MeteringOffChargesNothing)
{
    engine.set_metering(false);
    EXPECT_EQ(set(kv, 1, 1).gas_used, 0u);
}

TEST_F(EngineTest, DelegateCallUsesCallerStorageAndContext)
{
    const auto fwd = engine.deploy("forwarder", abi::encode_address(kv));
    const auto out = engine.call(tx(alice, fwd, abi::encode_call("whoami()"), 7));
    ASSERT_TRUE(out.ok);
    const auto padded = test::concat({Bytes(4, 0), out.ret_data});
    abi::Args who{padded};
    EXPECT_EQ(who.address(0), alice);  // sender preserved
    EXPECT_EQ(who.address(1), fwd);    // self is the caller's storage context
    EXPECT_EQ(who.uint(2), 7);         // value preserved

    EXPECT_TRUE(set(fwd, 3, 33).ok);
    EXPECT_EQ(engine.state().sload(fwd, word(3)), word(33));
    EXPECT_EQ(engine.state().sload(kv, word(3)), Word{});
}

TEST_F(EngineTest, NestedDelegationPreservesOriginalSender)
{
    const auto inner = engine.deploy("forwarder", abi::encode_address(kv));
    // outer runs inner's code in outer's storage, which then reads slot 99 there
    const auto outer =
        engine.deploy("forwarder_outer", test::concat({Word::from_address(inner).view(), Word::from_address(kv).view()}));
    const auto out = engine.call(tx(bob, outer, abi::encode_call("whoami()")));
    ASSERT_TRUE(out.ok);
    const auto padded = test::concat({Bytes(4, 0), out.ret_data});
    abi::Args who{padded};
    EXPECT_EQ(who.address(0), bob);
    EXPECT_EQ(who.address(1), outer);
}

TEST_F(EngineTest, FailedDelegateLeavesParentUnchanged)
{
    const auto fwd = engine.deploy("forwarder", abi::encode_address(kv));
    const auto before = engine.state().state_digest();
    const auto out =
        engine.call(tx(alice, fwd, abi::encode_call("setThenFail(uint256,uint256)", {word(5), word(5)})));
    EXPECT_FALSE(out.ok);
    EXPECT_EQ(engine.state().state_digest(), before);
}

TEST_F(EngineTest, TopLevelDelegateCall)
{
    const auto fwd = engine.deploy("forwarder", abi::encode_address(kv));
    CallContext parent = tx(alice, fwd, {});
    const auto out =
        engine.delegate_call(parent, kv, abi::encode_call("set(uint256,uint256)", {word(8), word(1)}));
    EXPECT_TRUE(out.ok);
    EXPECT_EQ(engine.state().sload(fwd, word(8)), word(1));
}

class Recorder final : public ExecutionObserver
{
public:
    std::vector<bool> exits;
    void on_exit(const FrameInfo&, const Outcome& out, const WorldState&) override { exits.push_back(out.ok); }
};

TEST_F(EngineTest, ObserverSeesFrames)
{
    Recorder r;
    engine.set_observer(&r);
    const auto fwd = engine.deploy("forwarder", abi::encode_address(kv));
    (void)engine.call(tx(alice, fwd, abi::encode_call("get(uint256)", {word(0)})));
    engine.set_observer(nullptr);
    EXPECT_EQ(r.exits, (std::vector<bool>{true, true}));
}

// Atomicity and gas monotonicity quantified over random call sequences.
TEST(EngineProperty, FailedCallsLeaveDigestUnchanged)
{
    test::Rng rng{11};
    Engine engine;
    test::register_test_codes(engine);
    const auto kv = engine.deploy("kv");
    const auto fwd = engine.deploy("forwarder", abi::encode_address(kv));
    for (std::uint64_t i = 1; i <= 4; ++i)
        engine.state().set_balance(address_from_u64(i), 100);

    std::size_t failures = 0;
    for (int i = 0; i < 2000; ++i)
    {
        const auto sender = test::random_address(rng, 5);
        const auto target = test::uniform(rng, 0, 1) ? kv : fwd;
        Bytes data;
        switch (test::uniform(rng, 0, 3))
        {
        case 0:
            data = abi::encode_call("set(uint256,uint256)", {test::random_word(rng, 4), test::random_word(rng, 3)});
            break;
        case 1:
            data = abi::encode_call("setThenFail(uint256,uint256)", {test::random_word(rng, 4), word(1)});
            break;
        case 2:
            data = abi::encode_call("pay(address,uint256)", {Word::from_address(test::random_address(rng, 5)),
                test::random_word(rng, 80)});
            break;
        default:
            data = abi::encode_call("nothing()");
        }
        auto ctx = tx(sender, target, data, test::uniform(rng, 0, 40));
        if (test::uniform(rng, 0, 9) == 0)
            ctx.gas_limit = test::uniform(rng, 21000, 45000);
        const auto before = engine.state().state_digest();
        const auto out = engine.call(ctx);
        ASSERT_GE(out.gas_used, std::min(ctx.gas_limit, engine.intrinsic_gas(ctx.calldata)));
        if (!out.ok)
        {
            ++failures;
            ASSERT_EQ(engine.state().state_digest(), before) << "call " << i;
        }
    }
    EXPECT_GT(failures, 200u);
}
}  // namespace
}  // namespace drp
