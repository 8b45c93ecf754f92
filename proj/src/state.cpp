// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

#include <drp/error.hpp>
#include <drp/keccak.hpp>
#include <drp/state.hpp>

namespace drp
{
SnapshotId WorldState::snapshot()
{
    const SnapshotId id{next_id_++};
    frames_.push_back({id, journal_.size()});
    return id;
}

void WorldState::check_top(SnapshotId id) const
{
    if (frames_.empty() || frames_.back().id != id)
        throw Error{Errc::not_top_of_stack, "snapshot " + std::to_string(id.value)};
}

void WorldState::revert_to(SnapshotId id)
{
    check_top(id);
    const auto mark = frames_.back().journal_size;
    while (journal_.size() > mark)
    {
        std::visit(
            [this](auto& e) {
                using T = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<T, StorageChange>)
                {
                    if (e.previous.is_zero())
                        storage_.erase(e.key);
                    else
                        storage_[e.key] = e.previous;
                }
                else if constexpr (std::is_same_v<T, BalanceChange>)
                {
                    if (e.previous == 0)
                        balances_.erase(e.address);
                    else
                        balances_[e.address] = e.previous;
                }
                else
                {
                    if (e.previous)
                        code_[e.address] = std::move(*e.previous);
                    else
                        code_.erase(e.address);
                }
            },
            journal_.back());
        journal_.pop_back();
    }
    frames_.pop_back();
}

void WorldState::commit(SnapshotId id)
{
    check_top(id);
    frames_.pop_back();
    // nothing left that could be reverted
    if (frames_.empty())
        journal_.clear();
}

Word WorldState::sload(const Address& addr, const Word& slot) const
{
    const auto it = storage_.find({addr, slot});
    return it == storage_.end() ? Word{} : it->second;
}

void WorldState::put_storage(const StorageKey& key, const Word& value)
{
    const auto it = storage_.find(key);
    const Word previous = it == storage_.end() ? Word{} : it->second;
    if (previous == value)
        return;
    if (!frames_.empty())
        journal_.push_back(StorageChange{key, previous});
    if (value.is_zero())
        storage_.erase(it);
    else if (it == storage_.end())
        storage_.emplace(key, value);
    else
        it->second = value;
}

void WorldState::sstore(const Address& addr, const Word& slot, const Word& value)
{
    put_storage({addr, slot}, value);
}

u256 WorldState::balance(const Address& addr) const
{
    const auto it = balances_.find(addr);
    return it == balances_.end() ? u256{0} : it->second;
}

void WorldState::put_balance(const Address& addr, const u256& value)
{
    const auto previous = balance(addr);
    if (previous == value)
        return;
    if (!frames_.empty())
        journal_.push_back(BalanceChange{addr, previous});
    if (value == 0)
        balances_.erase(addr);
    else
        balances_[addr] = value;
}

void WorldState::set_balance(const Address& addr, const u256& amount)
{
    put_balance(addr, amount);
}

void WorldState::transfer_value(const Address& from, const Address& to, const u256& amount)
{
    const auto from_balance = balance(from);
    if (from_balance < amount)
        throw Error{Errc::insufficient_balance,
            to_hex(from) + " has " + to_string(from_balance) + ", needs " + to_string(amount)};
    if (amount == 0 || from == to)
        return;
    put_balance(from, from_balance - amount);
    put_balance(to, balance(to) + amount);
}

void WorldState::put_code(const Address& addr, std::optional<std::string> code_id)
{
    const auto it = code_.find(addr);
    std::optional<std::string> previous;
    if (it != code_.end())
        previous = it->second;
    if (previous == code_id)
        return;
    if (!frames_.empty())
        journal_.push_back(CodeChange{addr, std::move(previous)});
    if (code_id)
        code_[addr] = std::move(*code_id);
    else
        code_.erase(addr);
}

void WorldState::bind_code(const Address& addr, std::string code_id)
{
    put_code(addr, std::move(code_id));
}

std::optional<std::string> WorldState::code_of(const Address& addr) const
{
    const auto it = code_.find(addr);
    if (it == code_.end())
        return std::nullopt;
    return it->second;
}

Bytes WorldState::canonical_serialization() const
{
    Bytes out;
    out.reserve(storage_.size() * 84 + balances_.size() * 52);
    for (const auto& [key, value] : storage_)
    {
        append(out, key.address.view());
        append(out, key.slot.view());
        append(out, value.view());
    }
    for (const auto& [addr, amount] : balances_)
    {
        append(out, addr.view());
        append(out, Word::from_u256(amount).view());
    }
    return out;
}

Word WorldState::state_digest() const
{
    return keccak256(canonical_serialization());
}

std::map<Word, Word> WorldState::storage_of(const Address& addr) const
{
    std::map<Word, Word> out;
    for (auto it = storage_.lower_bound({addr, Word{}}); it != storage_.end() && it->first.address == addr; ++it)
        out.emplace(it->first.slot, it->second);
    return out;
}

u256 WorldState::total_balance() const
{
    u256 total = 0;
    for (const auto& [addr, amount] : balances_)
        total += amount;
    return total;
}
}  // namespace drp
