// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace drp
{
/// Unsigned 256-bit integer, arithmetic modulo 2^256.
using u256 = boost::multiprecision::uint256_t;

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

struct Address
{
    static constexpr std::size_t size = 20;
    std::array<std::uint8_t, size> bytes{};

    friend auto operator<=>(const Address&, const Address&) = default;

    [[nodiscard]] bool is_zero() const noexcept;
    [[nodiscard]] ByteView view() const noexcept { return bytes; }
};

/// 32-byte storage and argument cell.
struct Word
{
    static constexpr std::size_t size = 32;
    std::array<std::uint8_t, size> bytes{};

    friend auto operator<=>(const Word&, const Word&) = default;

    [[nodiscard]] bool is_zero() const noexcept;
    [[nodiscard]] ByteView view() const noexcept { return bytes; }

    /// Big-endian.
    [[nodiscard]] static Word from_u256(const u256& v) noexcept;
    [[nodiscard]] u256 to_u256() const noexcept;

    /// Right-aligned in the word.
    [[nodiscard]] static Word from_address(const Address& a) noexcept;
    /// Low 20 bytes.
    [[nodiscard]] Address to_address() const noexcept;
};

struct Selector
{
    static constexpr std::size_t size = 4;
    std::array<std::uint8_t, size> bytes{};

    friend auto operator<=>(const Selector&, const Selector&) = default;

    [[nodiscard]] ByteView view() const noexcept { return bytes; }
};

/// Lowercase, 0x-prefixed.
[[nodiscard]] std::string to_hex(ByteView data);
[[nodiscard]] inline std::string to_hex(const Word& w) { return to_hex(w.view()); }
[[nodiscard]] inline std::string to_hex(const Address& a) { return to_hex(a.view()); }
[[nodiscard]] inline std::string to_hex(const Selector& s) { return to_hex(s.view()); }

/// Accepts an optional 0x prefix; the digit count must be even.
[[nodiscard]] std::optional<Bytes> from_hex(std::string_view hex);

/// Decimal or 0x-prefixed hex; nullopt on syntax error or overflow.
[[nodiscard]] std::optional<u256> parse_u256(std::string_view text);

[[nodiscard]] std::string to_string(const u256& v);

inline void append(Bytes& out, ByteView data) { out.insert(out.end(), data.begin(), data.end()); }

inline Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

[[nodiscard]] inline Word word(std::uint64_t v) noexcept { return Word::from_u256(u256{v}); }

/// Addresses used by tests and scenarios: 0x00..00NN style, the value in the low bytes.
[[nodiscard]] Address address_from_u64(std::uint64_t v) noexcept;
}  // namespace drp
