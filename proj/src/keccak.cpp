// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

#include <drp/keccak.hpp>

#include <bit>
#include <cstring>

namespace drp
{
namespace
{
constexpr std::array<std::uint64_t, 24> round_constants = {
    0x0000000000000001, 0x0000000000008082, 0x800000000000808a, 0x8000000080008000,
    0x000000000000808b, 0x0000000080000001, 0x8000000080008081, 0x8000000000008009,
    0x000000000000008a, 0x0000000000000088, 0x0000000080008009, 0x000000008000000a,
    0x000000008000808b, 0x800000000000008b, 0x8000000000008089, 0x8000000000008003,
    0x8000000000008002, 0x8000000000000080, 0x000000000000800a, 0x800000008000000a,
    0x8000000080008081, 0x8000000000008080, 0x0000000080000001, 0x8000000080008008,
};

// rho offsets and pi destinations, in the traversal order of the pi permutation
constexpr std::array<int, 24> rho = {
    1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 2, 14, 27, 41, 56, 8, 25, 43, 62, 18, 39, 61, 20, 44,
};
constexpr std::array<int, 24> pi = {
    10, 7, 11, 17, 18, 3, 5, 16, 8, 21, 24, 4, 15, 23, 19, 13, 12, 2, 20, 14, 22, 9, 6, 1,
};

void keccak_f1600(std::array<std::uint64_t, 25>& a) noexcept
{
    for (const auto rc : round_constants)
    {
        std::array<std::uint64_t, 5> c{};
        for (int x = 0; x < 5; ++x)
            c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
        for (int x = 0; x < 5; ++x)
        {
            const auto d = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
            for (int y = 0; y < 25; y += 5)
                a[y + x] ^= d;
        }

        auto carry = a[1];
        for (int i = 0; i < 24; ++i)
        {
            const auto next = a[pi[i]];
            a[pi[i]] = std::rotl(carry, rho[i]);
            carry = next;
        }

        for (int y = 0; y < 25; y += 5)
        {
            std::array<std::uint64_t, 5> row{};
            for (int x = 0; x < 5; ++x)
                row[x] = a[y + x];
            for (int x = 0; x < 5; ++x)
                a[y + x] = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5]);
        }

        a[0] ^= rc;
    }
}

std::uint64_t load_le64(const std::uint8_t* p) noexcept
{
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i)
        v = (v << 8) | p[i];
    return v;
}
}  // namespace

void Keccak256::absorb_block(const std::uint8_t* block) noexcept
{
    for (std::size_t i = 0; i < rate / 8; ++i)
        state_[i] ^= load_le64(block + 8 * i);
    keccak_f1600(state_);
}

Keccak256& Keccak256::update(ByteView data) noexcept
{
    auto p = data.data();
    auto n = data.size();

    if (buffered_ > 0)
    {
        const auto take = std::min(n, rate - buffered_);
        std::memcpy(buffer_.data() + buffered_, p, take);
        buffered_ += take;
        p += take;
        n -= take;
        if (buffered_ < rate)
            return *this;
        absorb_block(buffer_.data());
        buffered_ = 0;
    }
    for (; n >= rate; n -= rate, p += rate)
        absorb_block(p);
    if (n > 0)
    {
        std::memcpy(buffer_.data(), p, n);
        buffered_ = n;
    }
    return *this;
}

Word Keccak256::finalize() noexcept
{
    std::memset(buffer_.data() + buffered_, 0, rate - buffered_);
    buffer_[buffered_] ^= 0x01;
    buffer_[rate - 1] ^= 0x80;
    absorb_block(buffer_.data());
    buffered_ = 0;

    Word out;
    for (std::size_t i = 0; i < Word::size; ++i)
        out.bytes[i] = static_cast<std::uint8_t>(state_[i / 8] >> (8 * (i % 8)));
    return out;
}

Word keccak256(ByteView data) noexcept
{
    return Keccak256{}.update(data).finalize();
}

Word keccak256(std::string_view data) noexcept
{
    return Keccak256{}.update(data).finalize();
}
}  // namespace drp
