// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <drp/bytes.hpp>

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>

namespace drp::abi
{
/// First four bytes of keccak256 of the canonical signature, e.g. "bid()".
[[nodiscard]] Selector selector_of(std::string_view signature) noexcept;

/// Selector of call data that is at least four bytes long.
[[nodiscard]] Selector selector_from(ByteView calldata) noexcept;

/// selector | each argument as a 32-byte word.
[[nodiscard]] Bytes encode_call(const Selector& sel, std::span<const Word> args);
[[nodiscard]] Bytes encode_call(std::string_view signature, std::initializer_list<Word> args = {});

[[nodiscard]] inline Bytes encode_word(const Word& w) { return Bytes(w.bytes.begin(), w.bytes.end()); }
[[nodiscard]] inline Bytes encode_bool(bool b) { return encode_word(word(b ? 1 : 0)); }
[[nodiscard]] inline Bytes encode_uint(const u256& v) { return encode_word(Word::from_u256(v)); }
[[nodiscard]] inline Bytes encode_address(const Address& a) { return encode_word(Word::from_address(a)); }

/// Decodes a 32-byte return payload; nullopt for any other length.
[[nodiscard]] std::optional<Word> decode_word(ByteView ret);

/// Positional word arguments following the selector. Accessors revert the
/// calling frame with "malformed calldata" when the argument is absent or
/// does not fit its declared type.
class Args
{
public:
    explicit Args(ByteView calldata) noexcept : calldata_{calldata} {}

    [[nodiscard]] Word word(std::size_t index) const;
    [[nodiscard]] u256 uint(std::size_t index) const { return word(index).to_u256(); }
    [[nodiscard]] std::uint64_t uint64(std::size_t index) const;
    [[nodiscard]] Address address(std::size_t index) const;

private:
    ByteView calldata_;
};
}  // namespace drp::abi
