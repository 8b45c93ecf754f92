// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

/// @file
/// Registered post-call checks and their abstract arguments.
///
/// A check is registered once, up front, as a byte string:
///
///     selector(4) | count(1) | arg...
///     arg := 0x00 | N(1) | content(N)      static bytes, passed verbatim
///          | 0x01 | O(1) | L(1)            calldata[O, O+L) of the checked call
///          | 0x02 | T(1)                   environment value, one word
///
/// and materialized into concrete call data each time the checked function
/// runs.

#pragma once

#include <drp/bytes.hpp>
#include <drp/engine.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace drp
{
enum class ArgumentType : std::uint8_t
{
    static_value = 0,
    call_data = 1,
    env = 2,
};

enum class EnvKind : std::uint8_t
{
    sender = 0x00,
    value = 0x01,
    timestamp = 0x02,
    block_number = 0x03,
};

struct StaticArg
{
    Bytes content;
    friend bool operator==(const StaticArg&, const StaticArg&) = default;
};

struct CallDataArg
{
    std::size_t offset = 0;
    std::size_t length = 0;
    friend bool operator==(const CallDataArg&, const CallDataArg&) = default;
};

struct EnvArg
{
    EnvKind kind = EnvKind::sender;
    friend bool operator==(const EnvArg&, const EnvArg&) = default;
};

using AbstractArgument = std::variant<StaticArg, CallDataArg, EnvArg>;

struct CheckSpec
{
    Address target;
    Selector selector;
    std::vector<AbstractArgument> args;
    friend bool operator==(const CheckSpec&, const CheckSpec&) = default;
};

/// Throws Error(argument_too_large) if a length, offset, or the argument
/// count does not fit its single byte.
[[nodiscard]] Bytes encode_abstract(const Selector& selector, std::span<const AbstractArgument> args);

struct DecodedCheck
{
    Selector selector;
    std::vector<AbstractArgument> args;
    friend bool operator==(const DecodedCheck&, const DecodedCheck&) = default;
};

/// Exact inverse of encode_abstract. Throws Error with truncated_encoding,
/// unknown_argument_type, unknown_env_kind or trailing_bytes.
[[nodiscard]] DecodedCheck decode_abstract(ByteView encoded);

/// Checks keyed by the selector of the function they guard, in registration order.
class CheckRegistry
{
public:
    /// Decodes first; a malformed encoding leaves the registry unchanged.
    void register_check(const Selector& for_selector, const Address& target, ByteView encoded);
    void add(const Selector& for_selector, CheckSpec spec);

    /// Empty for selectors without registrations.
    [[nodiscard]] const std::vector<CheckSpec>& checks_for(const Selector& selector) const;

    [[nodiscard]] const std::map<Selector, std::vector<CheckSpec>>& entries() const noexcept { return map_; }

private:
    std::map<Selector, std::vector<CheckSpec>> map_;
};

/// selector | concrete args. CallData args copy calldata[O, O+L); Env args
/// become one 32-byte word. Throws Error(call_data_out_of_range).
[[nodiscard]] Bytes materialize(const CheckSpec& spec, const CallContext& ctx);

inline constexpr std::uint8_t check_failure_marker = 0xFE;

/// Checks aimed at `proxy` are executed against `active_implementation`'s
/// code in the current storage context instead of re-entering the proxy.
struct CheckRouting
{
    Address proxy;
    Address active_implementation;
};

/// Runs each check read-only from `host`'s frame and collects its return
/// data. A failing check contributes 0xFE | revert payload.
[[nodiscard]] std::vector<Bytes> run_checks(Host& host, std::span<const CheckSpec> checks, const CallContext& ctx,
    const std::optional<CheckRouting>& routing = std::nullopt);

/// Top-level form: runs the checks from a frame whose self is ctx.target.
[[nodiscard]] std::vector<Bytes> run_checks(Engine& engine, std::span<const CheckSpec> checks, const CallContext& ctx);

/// be32(len) | result, for each result in order.
[[nodiscard]] Bytes serialize_check_results(std::span<const Bytes> results);
[[nodiscard]] Word hash_checks(std::span<const Bytes> results);

/// "static:<hex>", "calldata:<offset>:<length>", "env:<sender|value|timestamp|blocknumber>".
[[nodiscard]] std::string to_descriptor(const AbstractArgument& arg);
/// Inverse of to_descriptor; nullopt on syntax errors. Range is not checked
/// here so that encode_abstract can report ArgumentTooLarge.
[[nodiscard]] std::optional<AbstractArgument> parse_descriptor(std::string_view text);

[[nodiscard]] std::string_view env_kind_name(EnvKind kind) noexcept;
[[nodiscard]] std::optional<EnvKind> parse_env_kind(std::string_view name) noexcept;
}  // namespace drp
