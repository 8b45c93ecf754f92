// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

#include <drp/engine.hpp>
#include <drp/error.hpp>
#include <drp/keccak.hpp>

namespace drp
{
namespace
{
constexpr std::string_view insufficient_balance_message = "insufficient balance";
constexpr std::string_view depth_message = "call depth exceeded";

struct DepthGuard
{
    unsigned& depth;
    explicit DepthGuard(unsigned& d) : depth{d} { ++depth; }
    ~DepthGuard() { --depth; }
    DepthGuard(const DepthGuard&) = delete;
    DepthGuard& operator=(const DepthGuard&) = delete;
};
}  // namespace

void revert(std::string_view message)
{
    throw Revert{to_bytes(message)};
}

void revert_with(Bytes payload)
{
    throw Revert{std::move(payload)};
}

std::uint64_t Host::timestamp() const noexcept
{
    return engine_->tx_.timestamp;
}

std::uint64_t Host::block_number() const noexcept
{
    return engine_->tx_.number;
}

const GasSchedule& Host::schedule() const noexcept
{
    return engine_->schedule_;
}

void Host::require_mutable() const
{
    if (frame_.is_static)
        revert(static_violation_message);
}

Word Host::sload(const Word& slot)
{
    engine_->charge(engine_->schedule_.sload);
    return engine_->state_.sload(frame_.storage_context, slot);
}

void Host::sstore(const Word& slot, const Word& value)
{
    require_mutable();
    const auto& s = engine_->schedule_;
    const auto current = engine_->state_.sload(frame_.storage_context, slot);
    engine_->charge(current.is_zero() && !value.is_zero() ? s.sstore_new : s.sstore_update);
    engine_->state_.sstore(frame_.storage_context, slot, value);
}

u256 Host::balance(const Address& addr)
{
    engine_->charge(engine_->schedule_.sload);
    return engine_->state_.balance(addr);
}

void Host::transfer(const Address& to, const u256& amount)
{
    require_mutable();
    if (amount == 0)
        return;
    engine_->charge(engine_->schedule_.transfer);
    if (engine_->state_.balance(frame_.storage_context) < amount)
        revert(insufficient_balance_message);
    engine_->state_.transfer_value(frame_.storage_context, to, amount);
}

Outcome Host::child_call(const FrameInfo& child, ByteView data, const u256& value_moved)
{
    engine_->charge(engine_->schedule_.call_base);
    if (value_moved != 0)
        engine_->charge(engine_->schedule_.transfer);
    return engine_->run_frame(child, data, value_moved);
}

Outcome Host::call(const Address& target, ByteView data, const u256& value)
{
    if (value != 0)
        require_mutable();
    const FrameInfo child{
        .code_address = target,
        .storage_context = target,
        .sender = frame_.storage_context,
        .value = value,
        .is_static = frame_.is_static,
        .is_delegate = false,
        .depth = frame_.depth + 1,
    };
    return child_call(child, data, value);
}

Outcome Host::static_call(const Address& target, ByteView data)
{
    const FrameInfo child{
        .code_address = target,
        .storage_context = target,
        .sender = frame_.storage_context,
        .value = 0,
        .is_static = true,
        .is_delegate = false,
        .depth = frame_.depth + 1,
    };
    return child_call(child, data, 0);
}

Outcome Host::delegate_call(const Address& code, ByteView data)
{
    const FrameInfo child{
        .code_address = code,
        .storage_context = frame_.storage_context,
        .sender = frame_.sender,
        .value = frame_.value,
        .is_static = frame_.is_static,
        .is_delegate = true,
        .depth = frame_.depth + 1,
    };
    return child_call(child, data, 0);
}

Outcome Host::static_delegate_call(const Address& code, ByteView data)
{
    const FrameInfo child{
        .code_address = code,
        .storage_context = frame_.storage_context,
        .sender = frame_.storage_context,
        .value = 0,
        .is_static = true,
        .is_delegate = true,
        .depth = frame_.depth + 1,
    };
    return child_call(child, data, 0);
}

Word Host::keccak(ByteView data)
{
    const auto& s = engine_->schedule_;
    engine_->charge(s.hash_base + s.hash_per_word * ((data.size() + 31) / 32));
    return keccak256(data);
}

void Host::use_gas(std::uint64_t amount)
{
    engine_->charge(amount);
}

Engine::Engine(GasSchedule schedule) : schedule_{schedule} {}

void Engine::register_code(std::string code_id, BehaviorFactory factory)
{
    codes_[std::move(code_id)] = std::move(factory);
}

bool Engine::has_code(std::string_view code_id) const
{
    return codes_.find(code_id) != codes_.end();
}

Behavior* Engine::instance(const Address& addr) const
{
    const auto it = instances_.find(addr);
    return it == instances_.end() ? nullptr : it->second.get();
}

std::uint64_t Engine::intrinsic_gas(ByteView calldata) const noexcept
{
    return schedule_.tx_base + schedule_.per_calldata_byte * calldata.size();
}

void Engine::charge(std::uint64_t amount)
{
    if (!metering_ || !tx_.metered)
        return;
    if (amount > tx_.gas_limit - tx_.gas_used)
    {
        tx_.gas_used = tx_.gas_limit;
        throw OutOfGas{};
    }
    tx_.gas_used += amount;
}

Address Engine::deploy(std::string_view code_id, ByteView init_args, const Address& deployer)
{
    const auto it = codes_.find(code_id);
    if (it == codes_.end())
        throw Error{Errc::unknown_code_id, std::string{code_id}};

    Bytes preimage(deployer.bytes.begin(), deployer.bytes.end());
    const auto seq = deploy_sequence_++;
    for (int shift = 56; shift >= 0; shift -= 8)
        preimage.push_back(static_cast<std::uint8_t>(seq >> shift));
    const auto addr = keccak256(preimage).to_address();

    auto behavior = it->second();
    auto& ref = *behavior;
    instances_[addr] = std::move(behavior);

    const auto saved = tx_;
    tx_ = TxScope{.metered = false};
    const auto snap = state_.snapshot();
    state_.bind_code(addr, std::string{code_id});
    try
    {
        Host host{*this, FrameInfo{.code_address = addr, .storage_context = addr, .sender = deployer}};
        DepthGuard guard{depth_};
        ref.init(host, init_args);
        state_.commit(snap);
        tx_ = saved;
    }
    catch (const Revert& r)
    {
        state_.revert_to(snap);
        instances_.erase(addr);
        tx_ = saved;
        throw Error{Errc::deploy_reverted,
            std::string{code_id} + ": " + std::string(r.payload().begin(), r.payload().end())};
    }
    catch (...)
    {
        state_.revert_to(snap);
        instances_.erase(addr);
        tx_ = saved;
        throw;
    }
    return addr;
}

Outcome Engine::run_frame(const FrameInfo& frame, ByteView data, const u256& value_moved)
{
    if (depth_ >= max_depth)
        return {false, to_bytes(depth_message), 0};

    const auto start_gas = tx_.gas_used;
    Outcome out;

    const auto bound = instances_.find(frame.code_address);
    if (bound == instances_.end() || !state_.code_of(frame.code_address))
    {
        // nothing to execute; a failed frame with no payload
        out.gas_used = tx_.gas_used - start_gas;
        return out;
    }

    const auto snap = state_.snapshot();
    DepthGuard guard{depth_};
    if (observer_)
        observer_->on_enter(frame, data, state_);
    try
    {
        if (value_moved != 0)
        {
            if (state_.balance(frame.sender) < value_moved)
                revert(insufficient_balance_message);
            state_.transfer_value(frame.sender, frame.storage_context, value_moved);
        }
        Host host{*this, frame};
        out.ret_data = bound->second->execute(host, data);
        out.ok = true;
        state_.commit(snap);
    }
    catch (const Revert& r)
    {
        state_.revert_to(snap);
        out.ok = false;
        out.ret_data = r.payload();
    }
    catch (...)
    {
        state_.revert_to(snap);
        throw;
    }
    out.gas_used = tx_.gas_used - start_gas;
    if (observer_)
        observer_->on_exit(frame, out, state_);
    return out;
}

Outcome Engine::run_top(const FrameInfo& frame, ByteView data, const u256& value_moved, const CallContext& ctx)
{
    tx_ = TxScope{
        .gas_used = 0,
        .gas_limit = ctx.gas_limit,
        .timestamp = ctx.block_timestamp,
        .number = ctx.block_number,
        .metered = true,
    };
    Outcome out;
    try
    {
        charge(frame.is_delegate ? schedule_.call_base : intrinsic_gas(data));
        out = run_frame(frame, data, value_moved);
    }
    catch (const OutOfGas&)
    {
        out = Outcome{};
    }
    out.gas_used = tx_.gas_used;
    tx_ = TxScope{};
    return out;
}

void Engine::with_static_host(const Address& self, std::uint64_t timestamp, std::uint64_t number,
    const std::function<void(Host&)>& fn)
{
    const auto saved = tx_;
    tx_ = TxScope{.timestamp = timestamp, .number = number, .metered = false};
    const auto snap = state_.snapshot();
    try
    {
        Host host{*this, FrameInfo{.code_address = self, .storage_context = self, .sender = self, .is_static = true}};
        DepthGuard guard{depth_};
        fn(host);
    }
    catch (...)
    {
        state_.revert_to(snap);
        tx_ = saved;
        throw;
    }
    state_.revert_to(snap);
    tx_ = saved;
}

Outcome Engine::call(const CallContext& ctx)
{
    if (ctx.calldata.size() < 4)
        throw Error{Errc::malformed_call, "calldata is " + std::to_string(ctx.calldata.size()) + " bytes"};
    if (!ctx.storage_context.is_zero() && ctx.storage_context != ctx.target)
        throw Error{Errc::malformed_call, "plain call with a foreign storage context"};
    if (!state_.code_of(ctx.target) || !instance(ctx.target))
        throw Error{Errc::unknown_target, to_hex(ctx.target)};

    const FrameInfo frame{
        .code_address = ctx.target,
        .storage_context = ctx.target,
        .sender = ctx.sender,
        .value = ctx.value,
    };
    return run_top(frame, ctx.calldata, ctx.value, ctx);
}

Outcome Engine::delegate_call(const CallContext& parent, const Address& code_addr, ByteView data)
{
    if (!state_.code_of(code_addr) || !instance(code_addr))
        throw Error{Errc::unknown_target, to_hex(code_addr)};

    const FrameInfo frame{
        .code_address = code_addr,
        .storage_context = parent.storage_context.is_zero() ? parent.target : parent.storage_context,
        .sender = parent.sender,
        .value = parent.value,
        .is_delegate = true,
    };
    return run_top(frame, data, 0, parent);
}
}  // namespace drp
