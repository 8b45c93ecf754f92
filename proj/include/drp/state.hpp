// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <drp/bytes.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace drp
{
struct SnapshotId
{
    std::uint64_t value = 0;
    friend auto operator<=>(const SnapshotId&, const SnapshotId&) = default;
};

struct StorageKey
{
    Address address;
    Word slot;
    friend auto operator<=>(const StorageKey&, const StorageKey&) = default;
};

/// Per-address storage, native balances and code bindings, with a LIFO
/// stack of snapshots backed by an undo journal.
///
/// Zero words are never stored and zero balances are never kept, so a slot
/// written with zero is indistinguishable from one never written.
class WorldState
{
public:
    SnapshotId snapshot();

    /// Undoes every change made since `id` was taken and pops it.
    /// Throws Error(not_top_of_stack) unless `id` is the innermost snapshot.
    void revert_to(SnapshotId id);

    /// Folds the changes since `id` into the enclosing snapshot and pops it.
    void commit(SnapshotId id);

    [[nodiscard]] std::size_t snapshot_depth() const noexcept { return frames_.size(); }

    [[nodiscard]] Word sload(const Address& addr, const Word& slot) const;
    void sstore(const Address& addr, const Word& slot, const Word& value);

    [[nodiscard]] u256 balance(const Address& addr) const;
    /// Genesis funding; not a transfer, so it changes the total supply.
    void set_balance(const Address& addr, const u256& amount);
    /// Throws Error(insufficient_balance) and leaves state untouched if
    /// `from` cannot cover `amount`.
    void transfer_value(const Address& from, const Address& to, const u256& amount);

    void bind_code(const Address& addr, std::string code_id);
    [[nodiscard]] std::optional<std::string> code_of(const Address& addr) const;

    /// address(20) | slot(32) | value(32) for each storage entry in key order,
    /// then address(20) | amount(32, big-endian) for each balance.
    [[nodiscard]] Bytes canonical_serialization() const;
    /// Keccak-256 of canonical_serialization().
    [[nodiscard]] Word state_digest() const;

    [[nodiscard]] const std::map<StorageKey, Word>& storage() const noexcept { return storage_; }
    [[nodiscard]] const std::map<Address, u256>& balances() const noexcept { return balances_; }
    [[nodiscard]] std::map<Word, Word> storage_of(const Address& addr) const;
    [[nodiscard]] u256 total_balance() const;

private:
    struct StorageChange
    {
        StorageKey key;
        Word previous;
    };
    struct BalanceChange
    {
        Address address;
        u256 previous;
    };
    struct CodeChange
    {
        Address address;
        std::optional<std::string> previous;
    };
    using JournalEntry = std::variant<StorageChange, BalanceChange, CodeChange>;

    struct Frame
    {
        SnapshotId id;
        std::size_t journal_size;
    };

    void put_storage(const StorageKey& key, const Word& value);
    void put_balance(const Address& addr, const u256& value);
    void put_code(const Address& addr, std::optional<std::string> code_id);
    void check_top(SnapshotId id) const;

    std::map<StorageKey, Word> storage_;
    std::map<Address, u256> balances_;
    std::map<Address, std::string> code_;

    std::vector<JournalEntry> journal_;
    std::vector<Frame> frames_;
    std::uint64_t next_id_ = 1;
};
}  // namespace drp
