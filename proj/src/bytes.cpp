// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

#include <drp/bytes.hpp>

#include <algorithm>

namespace drp
{
namespace
{
int hex_digit(char c) noexcept
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

std::string_view strip_0x(std::string_view s) noexcept
{
    if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X'))
        s.remove_prefix(2);
    return s;
}
}  // namespace

bool Address::is_zero() const noexcept
{
    return std::ranges::all_of(bytes, [](std::uint8_t b) { return b == 0; });
}

bool Word::is_zero() const noexcept
{
    return std::ranges::all_of(bytes, [](std::uint8_t b) { return b == 0; });
}

Word Word::from_u256(const u256& v) noexcept
{
    Word w;
    u256 x = v;
    for (std::size_t i = 0; i < size; ++i)
    {
        w.bytes[size - 1 - i] = static_cast<std::uint8_t>(x & 0xff);
        x >>= 8;
    }
    return w;
}

u256 Word::to_u256() const noexcept
{
    u256 v = 0;
    for (const auto b : bytes)
        v = (v << 8) | b;
    return v;
}

Word Word::from_address(const Address& a) noexcept
{
    Word w;
    std::ranges::copy(a.bytes, w.bytes.begin() + (size - Address::size));
    return w;
}

Address Word::to_address() const noexcept
{
    Address a;
    std::copy(bytes.begin() + (size - Address::size), bytes.end(), a.bytes.begin());
    return a;
}

std::string to_hex(ByteView data)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 + data.size() * 2);
    out += "0x";
    for (const auto b : data)
    {
        out += digits[b >> 4];
        out += digits[b & 0xf];
    }
    return out;
}

std::optional<Bytes> from_hex(std::string_view hex)
{
    hex = strip_0x(hex);
    if (hex.size() % 2 != 0)
        return std::nullopt;
    Bytes out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2)
    {
        const int hi = hex_digit(hex[i]);
        const int lo = hex_digit(hex[i + 1]);
        if (hi < 0 || lo < 0)
            return std::nullopt;
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

std::optional<u256> parse_u256(std::string_view text)
{
    if (text.empty())
        return std::nullopt;
    const bool is_hex = text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
    const auto digits = is_hex ? text.substr(2) : text;
    if (digits.empty() || digits.size() > (is_hex ? 64u : 78u))
        return std::nullopt;

    // 78 decimal digits can exceed 2^256; accumulate wider and compare.
    using wide = boost::multiprecision::uint512_t;
    wide v = 0;
    const unsigned base = is_hex ? 16 : 10;
    for (const char c : digits)
    {
        const int d = hex_digit(c);
        if (d < 0 || static_cast<unsigned>(d) >= base)
            return std::nullopt;
        v = v * base + static_cast<unsigned>(d);
    }
    if (v > wide{std::numeric_limits<u256>::max()})
        return std::nullopt;
    return static_cast<u256>(v);
}

std::string to_string(const u256& v)
{
    return v.str();
}

Address address_from_u64(std::uint64_t v) noexcept
{
    return Word::from_u256(u256{v}).to_address();
}
}  // namespace drp
