// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

#include <drp/abi.hpp>
#include <drp/engine.hpp>
#include <drp/keccak.hpp>

#include <algorithm>

namespace drp::abi
{
Selector selector_of(std::string_view signature) noexcept
{
    return selector_from(keccak256(signature).view());
}

Selector selector_from(ByteView calldata) noexcept
{
    Selector s;
    std::copy_n(calldata.begin(), Selector::size, s.bytes.begin());
    return s;
}

Bytes encode_call(const Selector& sel, std::span<const Word> args)
{
    Bytes out(sel.bytes.begin(), sel.bytes.end());
    out.reserve(Selector::size + Word::size * args.size());
    for (const auto& a : args)
        append(out, a.view());
    return out;
}

Bytes encode_call(std::string_view signature, std::initializer_list<Word> args)
{
    return encode_call(selector_of(signature), std::span<const Word>{args.begin(), args.size()});
}

std::optional<Word> decode_word(ByteView ret)
{
    if (ret.size() != Word::size)
        return std::nullopt;
    Word w;
    std::ranges::copy(ret, w.bytes.begin());
    return w;
}

Word Args::word(std::size_t index) const
{
    const auto offset = Selector::size + Word::size * index;
    if (calldata_.size() < offset + Word::size)
        revert("malformed calldata");
    Word w;
    std::copy_n(calldata_.begin() + static_cast<std::ptrdiff_t>(offset), Word::size, w.bytes.begin());
    return w;
}

std::uint64_t Args::uint64(std::size_t index) const
{
    const auto v = uint(index);
    if (v > std::numeric_limits<std::uint64_t>::max())
        revert("malformed calldata");
    return static_cast<std::uint64_t>(v);
}

Address Args::address(std::size_t index) const
{
    const auto w = word(index);
    if (!std::all_of(w.bytes.begin(), w.bytes.begin() + (Word::size - Address::size),
            [](std::uint8_t b) { return b == 0; }))
        revert("malformed calldata");
    return w.to_address();
}
}  // namespace drp::abi
