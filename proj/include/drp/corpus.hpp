// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

/// @file
/// Contracts used by tests, fuzzing and cost reports.
///
/// Each contract comes in independently written variants that share one
/// storage layout, so any variant can run behind the same proxy storage.
/// auction_b carries two deliberate defects: it accepts a bid equal to the
/// current highest bid, and its finalize() has no branch for an auction
/// without bids, leaving the NFT with the auction.

#pragma once

#include <drp/bytes.hpp>
#include <drp/engine.hpp>

#include <array>
#include <string_view>

namespace drp::corpus
{
inline constexpr std::string_view token_a = "token_a";
inline constexpr std::string_view token_b = "token_b";
inline constexpr std::string_view nft_a = "nft_a";
inline constexpr std::string_view nft_b = "nft_b";
/// Reference auction.
inline constexpr std::string_view auction_a = "auction_a";
/// Seeded defects, see the file comment.
inline constexpr std::string_view auction_b = "auction_b";
/// Correct, structured differently from auction_a.
inline constexpr std::string_view auction_c = "auction_c";

inline constexpr std::array all_code_ids{token_a, token_b, nft_a, nft_b, auction_a, auction_b, auction_c};

namespace sig
{
inline constexpr std::string_view transfer = "transfer(address,uint256)";
inline constexpr std::string_view transfer_from = "transferFrom(address,address,uint256)";
inline constexpr std::string_view approve = "approve(address,uint256)";
inline constexpr std::string_view balance_of = "balanceOf(address)";
inline constexpr std::string_view allowance = "allowance(address,address)";
inline constexpr std::string_view total_supply = "totalSupply()";
inline constexpr std::string_view mint = "mint(address,uint256)";
inline constexpr std::string_view owner_of = "ownerOf(uint256)";
inline constexpr std::string_view get_approved = "getApproved(uint256)";
inline constexpr std::string_view start = "start(address,uint256,uint64)";
inline constexpr std::string_view bid = "bid()";
inline constexpr std::string_view finalize = "finalize()";
}  // namespace sig

/// Storage layout shared by all variants.
namespace layout
{
inline constexpr std::uint64_t token_balances = 0;
inline constexpr std::uint64_t token_allowances = 1;
inline constexpr std::uint64_t token_total_supply = 2;

inline constexpr std::uint64_t nft_owners = 0;
inline constexpr std::uint64_t nft_approvals = 1;

inline constexpr std::uint64_t auction_seller = 0;
inline constexpr std::uint64_t auction_nft = 1;
inline constexpr std::uint64_t auction_nft_id = 2;
inline constexpr std::uint64_t auction_end_time = 3;
inline constexpr std::uint64_t auction_highest_bid = 4;
inline constexpr std::uint64_t auction_highest_bidder = 5;
inline constexpr std::uint64_t auction_finalized = 6;

/// keccak(word(holder) | word(0))
[[nodiscard]] Word balance_slot(const Address& holder);
/// keccak(word(owner) | word(spender) | word(1))
[[nodiscard]] Word allowance_slot(const Address& owner, const Address& spender);
/// keccak(word(id) | word(0))
[[nodiscard]] Word owner_slot(const u256& token_id);
/// keccak(word(id) | word(1))
[[nodiscard]] Word approval_slot(const u256& token_id);
}  // namespace layout

namespace msg
{
inline constexpr std::string_view unknown_function = "unknown function";
inline constexpr std::string_view not_payable = "not payable";
inline constexpr std::string_view insufficient_balance = "insufficient balance";
inline constexpr std::string_view insufficient_allowance = "insufficient allowance";
inline constexpr std::string_view supply_overflow = "supply overflow";
inline constexpr std::string_view nonexistent_token = "nonexistent token";
inline constexpr std::string_view already_minted = "already minted";
inline constexpr std::string_view zero_address = "zero address";
inline constexpr std::string_view not_owner = "not owner";
inline constexpr std::string_view wrong_owner = "wrong owner";
inline constexpr std::string_view not_authorized = "not authorized";
inline constexpr std::string_view already_started = "already started";
inline constexpr std::string_view nft_transfer_failed = "nft transfer failed";
inline constexpr std::string_view not_started = "not started";
inline constexpr std::string_view auction_ended = "auction ended";
inline constexpr std::string_view bid_too_low = "bid too low";
inline constexpr std::string_view not_ended = "not ended";
inline constexpr std::string_view already_finalized = "already finalized";
}  // namespace msg

/// Registers every code id in all_code_ids.
void register_all(Engine& engine);

/// True for the variants that are meant to behave identically to the
/// reference of their contract family.
[[nodiscard]] bool is_correct_variant(std::string_view code_id) noexcept;
}  // namespace drp::corpus
