// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <drp/bytes.hpp>

#include <array>
#include <cstdint>
#include <string_view>

namespace drp
{
/// Keccak-256 with the original 0x01 domain padding (not FIPS-202 SHA3-256).
class Keccak256
{
public:
    Keccak256& update(ByteView data) noexcept;
    Keccak256& update(std::string_view data) noexcept
    {
        return update(ByteView{reinterpret_cast<const std::uint8_t*>(data.data()), data.size()});
    }

    /// Consumes the hasher; further updates are not meaningful.
    [[nodiscard]] Word finalize() noexcept;

private:
    static constexpr std::size_t rate = 136;

    std::array<std::uint64_t, 25> state_{};
    std::array<std::uint8_t, rate> buffer_{};
    std::size_t buffered_ = 0;

    void absorb_block(const std::uint8_t* block) noexcept;
};

[[nodiscard]] Word keccak256(ByteView data) noexcept;
[[nodiscard]] Word keccak256(std::string_view data) noexcept;
}  // namespace drp
