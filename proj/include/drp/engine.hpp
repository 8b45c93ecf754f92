// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

/// @file
/// Message-call execution over native contract behaviors.
///
/// Contract logic is host code registered under a code id. Every frame runs
/// under its own snapshot: a behavior that throws Revert has all of its
/// writes, nested calls and value movement undone. Delegate calls execute the
/// callee's code against the caller's storage context, keeping the caller's
/// sender and value.

#pragma once

#include <drp/bytes.hpp>
#include <drp/state.hpp>

#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <string_view>

namespace drp
{
/// Per-event gas costs. Immutable for the lifetime of an Engine.
struct GasSchedule
{
    std::uint64_t tx_base = 21000;
    std::uint64_t per_calldata_byte = 16;
    std::uint64_t sload = 100;
    std::uint64_t sstore_new = 20000;
    std::uint64_t sstore_update = 500;
    std::uint64_t call_base = 700;
    std::uint64_t hash_base = 30;
    std::uint64_t hash_per_word = 6;
    std::uint64_t transfer = 9000;
};

inline constexpr std::uint64_t default_gas_limit = 30'000'000;

struct CallContext
{
    Address sender;
    Address target;
    /// Zero means "same as target", the only legal value for a plain call.
    Address storage_context;
    u256 value = 0;
    Bytes calldata;
    std::uint64_t block_timestamp = 0;
    std::uint64_t block_number = 0;
    std::uint64_t gas_limit = default_gas_limit;
};

struct Outcome
{
    bool ok = false;
    Bytes ret_data;
    std::uint64_t gas_used = 0;

    friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// Thrown by behaviors to abort the current frame with a payload.
class Revert : public std::exception
{
public:
    explicit Revert(Bytes payload) : payload_{std::move(payload)} {}

    [[nodiscard]] const Bytes& payload() const noexcept { return payload_; }
    [[nodiscard]] const char* what() const noexcept override { return "revert"; }

private:
    Bytes payload_;
};

/// Human-readable reverts carry the UTF-8 message verbatim.
[[noreturn]] void revert(std::string_view message);
[[noreturn]] void revert_with(Bytes payload);

inline constexpr std::string_view static_violation_message = "write in read-only call";

struct FrameInfo
{
    Address code_address;
    Address storage_context;
    Address sender;
    u256 value = 0;
    bool is_static = false;
    bool is_delegate = false;
    unsigned depth = 0;
};

class Engine;

/// The only window a behavior has onto the world. Bound to one frame.
class Host
{
public:
    /// The storage context; equals the proxy under delegation.
    [[nodiscard]] const Address& self() const noexcept { return frame_.storage_context; }
    [[nodiscard]] const Address& code_address() const noexcept { return frame_.code_address; }
    [[nodiscard]] const Address& sender() const noexcept { return frame_.sender; }
    [[nodiscard]] const u256& value() const noexcept { return frame_.value; }
    [[nodiscard]] bool is_static() const noexcept { return frame_.is_static; }
    [[nodiscard]] bool is_delegate() const noexcept { return frame_.is_delegate; }
    [[nodiscard]] const FrameInfo& frame() const noexcept { return frame_; }
    [[nodiscard]] std::uint64_t timestamp() const noexcept;
    [[nodiscard]] std::uint64_t block_number() const noexcept;
    [[nodiscard]] const GasSchedule& schedule() const noexcept;

    Word sload(const Word& slot);
    void sstore(const Word& slot, const Word& value);
    u256 balance(const Address& addr);

    /// Moves value out of self(); reverts the frame if the balance is short.
    void transfer(const Address& to, const u256& amount);

    Outcome call(const Address& target, ByteView data, const u256& value = 0);
    Outcome static_call(const Address& target, ByteView data);
    Outcome delegate_call(const Address& code, ByteView data);
    /// Read-only execution of `code` against self()'s storage with
    /// sender = self() and zero value.
    Outcome static_delegate_call(const Address& code, ByteView data);

    Word keccak(ByteView data);
    void use_gas(std::uint64_t amount);

private:
    friend class Engine;
    Host(Engine& engine, const FrameInfo& frame) : engine_{&engine}, frame_{frame} {}

    Outcome child_call(const FrameInfo& child, ByteView data, const u256& value_moved);
    void require_mutable() const;

    Engine* engine_;
    FrameInfo frame_;
};

class Behavior
{
public:
    virtual ~Behavior() = default;

    /// Runs once at deployment against the new address's storage.
    virtual void init(Host& /*host*/, ByteView /*args*/) {}

    /// Returns the frame's return data or throws Revert.
    virtual Bytes execute(Host& host, ByteView calldata) = 0;
};

using BehaviorFactory = std::function<std::unique_ptr<Behavior>()>;

/// Instrumentation hook; invoked around every frame, including nested ones.
class ExecutionObserver
{
public:
    virtual ~ExecutionObserver() = default;
    virtual void on_enter(const FrameInfo& /*frame*/, ByteView /*data*/, const WorldState& /*state*/) {}
    virtual void on_exit(const FrameInfo& /*frame*/, const Outcome& /*outcome*/, const WorldState& /*state*/) {}
};

class Engine
{
public:
    static constexpr unsigned max_depth = 1024;

    explicit Engine(GasSchedule schedule = {});
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    void register_code(std::string code_id, BehaviorFactory factory);
    [[nodiscard]] bool has_code(std::string_view code_id) const;

    /// Address = low 20 bytes of keccak(deployer | be64(sequence)).
    Address deploy(std::string_view code_id, ByteView init_args = {}, const Address& deployer = {});

    /// Top-level message call. Throws Error(malformed_call) for calldata
    /// shorter than a selector and Error(unknown_target) for unbound targets;
    /// every other failure is an Outcome with ok = false.
    Outcome call(const CallContext& ctx);

    /// Top-level entry for executing `code_addr` in `parent`'s storage
    /// context with `parent`'s sender and value. No value moves.
    Outcome delegate_call(const CallContext& parent, const Address& code_addr, ByteView data);

    [[nodiscard]] WorldState& state() noexcept { return state_; }
    [[nodiscard]] const WorldState& state() const noexcept { return state_; }
    [[nodiscard]] const GasSchedule& schedule() const noexcept { return schedule_; }

    /// The behavior instance bound to a deployed address, or nullptr.
    [[nodiscard]] Behavior* instance(const Address& addr) const;

    /// Metering off charges nothing; behavior is otherwise identical.
    void set_metering(bool on) noexcept { metering_ = on; }
    [[nodiscard]] bool metering() const noexcept { return metering_; }

    void set_observer(ExecutionObserver* observer) noexcept { observer_ = observer; }

    [[nodiscard]] std::uint64_t intrinsic_gas(ByteView calldata) const noexcept;

    /// Calls `fn` with a host bound to an unmetered read-only frame whose
    /// self is `self`, outside any transaction.
    void with_static_host(const Address& self, std::uint64_t timestamp, std::uint64_t number,
        const std::function<void(Host&)>& fn);

private:
    friend class Host;

    struct TxScope
    {
        std::uint64_t gas_used = 0;
        std::uint64_t gas_limit = std::numeric_limits<std::uint64_t>::max();
        std::uint64_t timestamp = 0;
        std::uint64_t number = 0;
        bool metered = true;
    };

    struct OutOfGas
    {};

    void charge(std::uint64_t amount);
    Outcome run_frame(const FrameInfo& frame, ByteView data, const u256& value_moved);
    Outcome run_top(const FrameInfo& frame, ByteView data, const u256& value_moved, const CallContext& ctx);

    GasSchedule schedule_;
    WorldState state_;
    std::map<std::string, BehaviorFactory, std::less<>> codes_;
    std::map<Address, std::unique_ptr<Behavior>> instances_;
    std::uint64_t deploy_sequence_ = 0;
    TxScope tx_;
    unsigned depth_ = 0;
    bool metering_ = true;
    ExecutionObserver* observer_ = nullptr;
};
}  // namespace drp
