// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

// Shared fixtures for the unit, property and acceptance tests.

#pragma once

#include <drp/abi.hpp>
#include <drp/corpus.hpp>
#include <drp/difffuzz.hpp>
#include <drp/engine.hpp>
#include <drp/keccak.hpp>
#include <drp/redundancy.hpp>

#include <memory>
#include <random>
#include <string>
#include <vector>

namespace drp::test
{
inline Bytes hex(std::string_view s)
{
    auto b = from_hex(s);
    if (!b)
        throw std::invalid_argument{"bad hex in test: " + std::string{s}};
    return *b;
}

inline Bytes concat(std::initializer_list<ByteView> parts)
{
    Bytes out;
    for (const auto& p : parts)
        append(out, p);
    return out;
}

/// Engine with the corpus and the proxy registered.
inline std::unique_ptr<Engine> corpus_engine(const GasSchedule& schedule = {})
{
    return make_engine(schedule);
}

inline CallContext tx(const Address& sender, const Address& target, Bytes calldata, u256 value = 0,
    std::uint64_t timestamp = default_genesis_time)
{
    CallContext ctx;
    ctx.sender = sender;
    ctx.target = target;
    ctx.value = value;
    ctx.calldata = std::move(calldata);
    ctx.block_timestamp = timestamp;
    ctx.block_number = 1;
    return ctx;
}

/// Storage, value and context probe.
class KvBehavior final : public Behavior
{
public:
    Bytes execute(Host& host, ByteView calldata) override
    {
        const auto sel = abi::selector_from(calldata);
        abi::Args args{calldata};
        if (sel == abi::selector_of("set(uint256,uint256)"))
        {
            host.sstore(args.word(0), args.word(1));
            return abi::encode_bool(true);
        }
        if (sel == abi::selector_of("get(uint256)"))
            return abi::encode_word(host.sload(args.word(0)));
        if (sel == abi::selector_of("setThenFail(uint256,uint256)"))
        {
            host.sstore(args.word(0), args.word(1));
            revert("fail after write");
        }
        if (sel == abi::selector_of("whoami()"))
            return concat({Word::from_address(host.sender()).view(), Word::from_address(host.self()).view(),
                Word::from_u256(host.value()).view()});
        if (sel == abi::selector_of("deposit()"))
            return abi::encode_uint(host.balance(host.self()));
        if (sel == abi::selector_of("pay(address,uint256)"))
        {
            host.transfer(args.address(0), args.uint(1));
            return {};
        }
        if (sel == abi::selector_of("burn(uint256)"))
        {
            for (u256 i = 0; i < args.uint(0); ++i)
                host.sstore(Word::from_u256(i + 1000), word(1));
            return {};
        }
        revert("unknown function");
    }
};

/// Delegates every call to the address stored at its slot. Init args are
/// words stored at slot, slot + 1, ...
class ForwarderBehavior final : public Behavior
{
public:
    explicit ForwarderBehavior(std::uint64_t slot) : slot_{slot} {}
    void init(Host& host, ByteView args) override
    {
        for (std::size_t off = 0; off + 32 <= args.size(); off += 32)
        {
            Word w;
            std::copy_n(args.begin() + static_cast<std::ptrdiff_t>(off), 32, w.bytes.begin());
            host.sstore(word(slot_ + off / 32), w);
        }
    }
    Bytes execute(Host& host, ByteView calldata) override
    {
        const auto code = host.sload(word(slot_)).to_address();
        auto out = host.delegate_call(code, calldata);
        if (!out.ok)
            revert_with(std::move(out.ret_data));
        return out.ret_data;
    }

private:
    std::uint64_t slot_;
};

inline void register_test_codes(Engine& engine)
{
    engine.register_code("kv", [] { return std::make_unique<KvBehavior>(); });
    engine.register_code("kv_twin", [] { return std::make_unique<KvBehavior>(); });
    engine.register_code("forwarder", [] { return std::make_unique<ForwarderBehavior>(99); });
    engine.register_code("forwarder_outer", [] { return std::make_unique<ForwarderBehavior>(98); });
}

using Rng = std::mt19937_64;

inline std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi)
{
    return std::uniform_int_distribution<std::uint64_t>{lo, hi}(rng);
}

inline Word random_word(Rng& rng, std::uint64_t max = ~0ULL)
{
    return word(uniform(rng, 0, max));
}

inline Address random_address(Rng& rng, std::uint64_t pool)
{
    return address_from_u64(uniform(rng, 1, pool));
}
}  // namespace drp::test
