// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

#include <drp/abi.hpp>
#include <drp/corpus.hpp>
#include <drp/keccak.hpp>

#include <algorithm>

namespace drp::corpus
{
namespace
{
Bytes concat_words(std::initializer_list<Word> words)
{
    Bytes out;
    out.reserve(words.size() * Word::size);
    for (const auto& w : words)
        append(out, w.view());
    return out;
}

Bytes balance_preimage(const Address& holder)
{
    return concat_words({Word::from_address(holder), word(layout::token_balances)});
}

Bytes allowance_preimage(const Address& owner, const Address& spender)
{
    return concat_words({Word::from_address(owner), Word::from_address(spender), word(layout::token_allowances)});
}

Bytes owner_preimage(const u256& id)
{
    return concat_words({Word::from_u256(id), word(layout::nft_owners)});
}

Bytes approval_preimage(const u256& id)
{
    return concat_words({Word::from_u256(id), word(layout::nft_approvals)});
}

const Word true_word = word(1);

struct Selectors
{
    Selector transfer = abi::selector_of(sig::transfer);
    Selector transfer_from = abi::selector_of(sig::transfer_from);
    Selector approve = abi::selector_of(sig::approve);
    Selector balance_of = abi::selector_of(sig::balance_of);
    Selector allowance = abi::selector_of(sig::allowance);
    Selector total_supply = abi::selector_of(sig::total_supply);
    Selector mint = abi::selector_of(sig::mint);
    Selector owner_of = abi::selector_of(sig::owner_of);
    Selector get_approved = abi::selector_of(sig::get_approved);
    Selector start = abi::selector_of(sig::start);
    Selector bid = abi::selector_of(sig::bid);
    Selector finalize = abi::selector_of(sig::finalize);
};

const Selectors& sels()
{
    static const Selectors s;
    return s;
}

void require_no_value(const Host& host)
{
    if (host.value() != 0)
        revert(msg::not_payable);
}

// ---------------------------------------------------------------------------
// token

/// Straight-line implementation, one helper per storage access.
class TokenA final : public Behavior
{
public:
    Bytes execute(Host& host, ByteView calldata) override
    {
        const auto& s = sels();
        const auto sel = abi::selector_from(calldata);
        const abi::Args args{calldata};
        require_no_value(host);

        if (sel == s.transfer)
        {
            move(host, host.sender(), args.address(0), args.uint(1));
            return abi::encode_word(true_word);
        }
        if (sel == s.transfer_from)
        {
            const auto from = args.address(0);
            const auto to = args.address(1);
            const auto amount = args.uint(2);
            const auto allowed = get_allowance(host, from, host.sender());
            if (allowed < amount)
                revert(msg::insufficient_allowance);
            move(host, from, to, amount);
            set_allowance(host, from, host.sender(), allowed - amount);
            return abi::encode_word(true_word);
        }
        if (sel == s.approve)
        {
            set_allowance(host, host.sender(), args.address(0), args.uint(1));
            return abi::encode_word(true_word);
        }
        if (sel == s.balance_of)
            return abi::encode_uint(get_balance(host, args.address(0)));
        if (sel == s.allowance)
            return abi::encode_uint(get_allowance(host, args.address(0), args.address(1)));
        if (sel == s.total_supply)
            return abi::encode_word(host.sload(word(layout::token_total_supply)));
        if (sel == s.mint)
        {
            const auto to = args.address(0);
            const auto amount = args.uint(1);
            const auto supply = host.sload(word(layout::token_total_supply)).to_u256();
            if (supply + amount < supply)
                revert(msg::supply_overflow);
            host.sstore(word(layout::token_total_supply), Word::from_u256(supply + amount));
            set_balance(host, to, get_balance(host, to) + amount);
            return abi::encode_word(true_word);
        }
        revert(msg::unknown_function);
    }

private:
    static u256 get_balance(Host& host, const Address& a)
    {
        return host.sload(host.keccak(balance_preimage(a))).to_u256();
    }
    static void set_balance(Host& host, const Address& a, const u256& v)
    {
        host.sstore(host.keccak(balance_preimage(a)), Word::from_u256(v));
    }
    static u256 get_allowance(Host& host, const Address& o, const Address& s)
    {
        return host.sload(host.keccak(allowance_preimage(o, s))).to_u256();
    }
    static void set_allowance(Host& host, const Address& o, const Address& s, const u256& v)
    {
        host.sstore(host.keccak(allowance_preimage(o, s)), Word::from_u256(v));
    }

    static void move(Host& host, const Address& from, const Address& to, const u256& amount)
    {
        const auto from_balance = get_balance(host, from);
        if (from_balance < amount)
            revert(msg::insufficient_balance);
        set_balance(host, from, from_balance - amount);
        set_balance(host, to, get_balance(host, to) + amount);
    }
};

/// Table-driven dispatch; computes slots once per call and skips writes
/// that would not change storage.
class TokenB final : public Behavior
{
public:
    Bytes execute(Host& host, ByteView calldata) override
    {
        const auto& s = sels();
        const auto sel = abi::selector_from(calldata);
        using Handler = Bytes (*)(Host&, const abi::Args&);
        const std::pair<Selector, Handler> table[] = {
            {s.balance_of, &balance_of},
            {s.allowance, &allowance},
            {s.total_supply, &total_supply},
            {s.transfer, &transfer},
            {s.transfer_from, &transfer_from},
            {s.approve, &approve},
            {s.mint, &mint},
        };
        const auto* it = std::find_if(std::begin(table), std::end(table), [&](const auto& e) { return e.first == sel; });
        if (host.value() != 0)
            revert(msg::not_payable);
        if (it == std::end(table))
            revert(msg::unknown_function);
        return it->second(host, abi::Args{calldata});
    }

private:
    static Bytes balance_of(Host& host, const abi::Args& args)
    {
        const auto slot = host.keccak(balance_preimage(args.address(0)));
        return abi::encode_word(host.sload(slot));
    }

    static Bytes allowance(Host& host, const abi::Args& args)
    {
        const auto owner = args.address(0);
        const auto slot = host.keccak(allowance_preimage(owner, args.address(1)));
        return abi::encode_word(host.sload(slot));
    }

    static Bytes total_supply(Host& host, const abi::Args&)
    {
        return abi::encode_word(host.sload(word(layout::token_total_supply)));
    }

    /// Debits then credits; a self-transfer re-reads the debited balance.
    static void debit_credit(Host& host, const Address& from, const Address& to, const u256& amount)
    {
        const auto from_slot = host.keccak(balance_preimage(from));
        const auto have = host.sload(from_slot).to_u256();
        if (amount > have)
            revert(msg::insufficient_balance);
        if (amount == 0)
            return;
        host.sstore(from_slot, Word::from_u256(have - amount));
        const auto to_slot = from == to ? from_slot : host.keccak(balance_preimage(to));
        host.sstore(to_slot, Word::from_u256(host.sload(to_slot).to_u256() + amount));
    }

    static Bytes transfer(Host& host, const abi::Args& args)
    {
        const auto to = args.address(0);
        debit_credit(host, host.sender(), to, args.uint(1));
        return abi::encode_bool(true);
    }

    static Bytes transfer_from(Host& host, const abi::Args& args)
    {
        const auto from = args.address(0);
        const auto to = args.address(1);
        const auto amount = args.uint(2);
        const auto allowance_at = host.keccak(allowance_preimage(from, host.sender()));
        const auto allowed = host.sload(allowance_at).to_u256();
        if (!(amount <= allowed))
            revert(msg::insufficient_allowance);
        debit_credit(host, from, to, amount);
        if (amount != 0)
            host.sstore(allowance_at, Word::from_u256(allowed - amount));
        return abi::encode_bool(true);
    }

    static Bytes approve(Host& host, const abi::Args& args)
    {
        const auto spender = args.address(0);
        const auto amount = args.word(1);
        host.sstore(host.keccak(allowance_preimage(host.sender(), spender)), amount);
        return abi::encode_bool(true);
    }

    static Bytes mint(Host& host, const abi::Args& args)
    {
        const auto to = args.address(0);
        const auto amount = args.uint(1);
        const auto supply_slot = word(layout::token_total_supply);
        const u256 supply = host.sload(supply_slot).to_u256();
        const u256 headroom = ~u256{0} - supply;
        if (amount > headroom)
            revert(msg::supply_overflow);
        if (amount == 0)
            return abi::encode_bool(true);
        host.sstore(supply_slot, Word::from_u256(supply + amount));
        const auto slot = host.keccak(balance_preimage(to));
        host.sstore(slot, Word::from_u256(host.sload(slot).to_u256() + amount));
        return abi::encode_bool(true);
    }
};

// ---------------------------------------------------------------------------
// nft

class NftA final : public Behavior
{
public:
    Bytes execute(Host& host, ByteView calldata) override
    {
        const auto& s = sels();
        const auto sel = abi::selector_from(calldata);
        const abi::Args args{calldata};
        require_no_value(host);

        if (sel == s.owner_of)
            return abi::encode_address(existing_owner(host, args.uint(0)));
        if (sel == s.get_approved)
        {
            const auto id = args.uint(0);
            existing_owner(host, id);
            return abi::encode_word(host.sload(host.keccak(approval_preimage(id))));
        }
        if (sel == s.mint)
        {
            const auto to = args.address(0);
            const auto id = args.uint(1);
            if (to.is_zero())
                revert(msg::zero_address);
            const auto slot = host.keccak(owner_preimage(id));
            if (!host.sload(slot).is_zero())
                revert(msg::already_minted);
            host.sstore(slot, Word::from_address(to));
            return abi::encode_bool(true);
        }
        if (sel == s.approve)
        {
            const auto spender = args.address(0);
            const auto id = args.uint(1);
            if (existing_owner(host, id) != host.sender())
                revert(msg::not_owner);
            host.sstore(host.keccak(approval_preimage(id)), Word::from_address(spender));
            return abi::encode_bool(true);
        }
        if (sel == s.transfer_from)
        {
            const auto from = args.address(0);
            const auto to = args.address(1);
            const auto id = args.uint(2);
            const auto owner = existing_owner(host, id);
            if (owner != from)
                revert(msg::wrong_owner);
            const auto approval_at = host.keccak(approval_preimage(id));
            const auto approved = host.sload(approval_at).to_address();
            if (host.sender() != owner && (approved.is_zero() || host.sender() != approved))
                revert(msg::not_authorized);
            if (to.is_zero())
                revert(msg::zero_address);
            host.sstore(host.keccak(owner_preimage(id)), Word::from_address(to));
            host.sstore(approval_at, Word{});
            return abi::encode_bool(true);
        }
        revert(msg::unknown_function);
    }

private:
    static Address existing_owner(Host& host, const u256& id)
    {
        const auto owner = host.sload(host.keccak(owner_preimage(id))).to_address();
        if (owner.is_zero())
            revert(msg::nonexistent_token);
        return owner;
    }
};

/// Reads owner and approval up front, then decides.
class NftB final : public Behavior
{
public:
    Bytes execute(Host& host, ByteView calldata) override
    {
        const auto& s = sels();
        const auto sel = abi::selector_from(calldata);
        if (host.value() != 0)
            revert(msg::not_payable);
        const abi::Args args{calldata};

        if (sel == s.transfer_from)
        {
            const auto from = args.address(0);
            const auto to = args.address(1);
            const auto id = args.uint(2);
            const Token t = load(host, id);
            const bool authorized = host.sender() == t.owner || (!t.approved.is_zero() && host.sender() == t.approved);
            if (t.owner.is_zero())
                revert(msg::nonexistent_token);
            if (from != t.owner)
                revert(msg::wrong_owner);
            if (!authorized)
                revert(msg::not_authorized);
            if (to.is_zero())
                revert(msg::zero_address);
            if (!t.approved.is_zero())
                host.sstore(t.approval_slot, Word{});
            host.sstore(t.owner_slot, Word::from_address(to));
            return abi::encode_bool(true);
        }
        if (sel == s.mint)
        {
            const auto to = args.address(0);
            const auto id = args.uint(1);
            if (to.is_zero())
                revert(msg::zero_address);
            const auto slot = host.keccak(owner_preimage(id));
            if (host.sload(slot).is_zero())
            {
                host.sstore(slot, Word::from_address(to));
                return abi::encode_bool(true);
            }
            revert(msg::already_minted);
        }

        if (sel != s.approve && sel != s.owner_of && sel != s.get_approved)
            revert(msg::unknown_function);

        const bool is_approve = sel == s.approve;
        const auto spender = is_approve ? args.address(0) : Address{};
        const Token t = load(host, args.uint(is_approve ? 1 : 0));
        if (t.owner.is_zero())
            revert(msg::nonexistent_token);
        if (sel == s.owner_of)
            return abi::encode_address(t.owner);
        if (sel == s.get_approved)
            return abi::encode_address(t.approved);
        if (host.sender() != t.owner)
            revert(msg::not_owner);
        host.sstore(t.approval_slot, Word::from_address(spender));
        return abi::encode_bool(true);
    }

private:
    struct Token
    {
        Word owner_slot;
        Word approval_slot;
        Address owner;
        Address approved;
    };

    static Token load(Host& host, const u256& id)
    {
        Token t;
        t.owner_slot = host.keccak(owner_preimage(id));
        t.approval_slot = host.keccak(approval_preimage(id));
        t.owner = host.sload(t.owner_slot).to_address();
        t.approved = host.sload(t.approval_slot).to_address();
        return t;
    }
};

// ---------------------------------------------------------------------------
// auction

Word slot(std::uint64_t n)
{
    return word(n);
}

Outcome move_nft(Host& host, const Address& nft, const Address& from, const Address& to, const Word& id)
{
    const auto data = abi::encode_call(sels().transfer_from, std::array{Word::from_address(from), Word::from_address(to), id});
    return host.call(nft, data);
}

/// Reference auction.
class AuctionA final : public Behavior
{
public:
    Bytes execute(Host& host, ByteView calldata) override
    {
        const auto& s = sels();
        const auto sel = abi::selector_from(calldata);
        if (sel == s.start)
            return start(host, abi::Args{calldata});
        if (sel == s.bid)
            return bid(host);
        if (sel == s.finalize)
            return finalize(host);
        revert(msg::unknown_function);
    }

private:
    static Bytes start(Host& host, const abi::Args& args)
    {
        require_no_value(host);
        const auto nft = args.address(0);
        const auto id = args.word(1);
        const auto end_time = args.uint64(2);
        if (!host.sload(slot(layout::auction_seller)).is_zero())
            revert(msg::already_started);
        if (!move_nft(host, nft, host.sender(), host.self(), id).ok)
            revert(msg::nft_transfer_failed);
        host.sstore(slot(layout::auction_seller), Word::from_address(host.sender()));
        host.sstore(slot(layout::auction_nft), Word::from_address(nft));
        host.sstore(slot(layout::auction_nft_id), id);
        host.sstore(slot(layout::auction_end_time), word(end_time));
        return {};
    }

    static Bytes bid(Host& host)
    {
        if (host.sload(slot(layout::auction_seller)).is_zero())
            revert(msg::not_started);
        if (host.timestamp() >= host.sload(slot(layout::auction_end_time)).to_u256())
            revert(msg::auction_ended);
        const auto highest = host.sload(slot(layout::auction_highest_bid)).to_u256();
        if (!(host.value() > highest))
            revert(msg::bid_too_low);
        const auto previous = host.sload(slot(layout::auction_highest_bidder)).to_address();
        if (!previous.is_zero())
            host.transfer(previous, highest);
        host.sstore(slot(layout::auction_highest_bid), Word::from_u256(host.value()));
        host.sstore(slot(layout::auction_highest_bidder), Word::from_address(host.sender()));
        return {};
    }

    static Bytes finalize(Host& host)
    {
        require_no_value(host);
        const auto seller = host.sload(slot(layout::auction_seller)).to_address();
        if (seller.is_zero())
            revert(msg::not_started);
        if (host.timestamp() < host.sload(slot(layout::auction_end_time)).to_u256())
            revert(msg::not_ended);
        if (!host.sload(slot(layout::auction_finalized)).is_zero())
            revert(msg::already_finalized);
        host.sstore(slot(layout::auction_finalized), word(1));

        const auto nft = host.sload(slot(layout::auction_nft)).to_address();
        const auto id = host.sload(slot(layout::auction_nft_id));
        const auto winner = host.sload(slot(layout::auction_highest_bidder)).to_address();
        if (!winner.is_zero())
        {
            if (!move_nft(host, nft, host.self(), winner, id).ok)
                revert(msg::nft_transfer_failed);
            host.transfer(seller, host.sload(slot(layout::auction_highest_bid)).to_u256());
        }
        else if (!move_nft(host, nft, host.self(), seller, id).ok)
            revert(msg::nft_transfer_failed);
        return {};
    }
};

/// Loads the whole auction record once per call. Defective, see corpus.hpp.
class AuctionB final : public Behavior
{
public:
    Bytes execute(Host& host, ByteView calldata) override
    {
        const auto& s = sels();
        const auto sel = abi::selector_from(calldata);
        if (sel != s.start && sel != s.bid && sel != s.finalize)
            revert(msg::unknown_function);

        if (sel == s.start)
        {
            const abi::Args args{calldata};
            if (host.value() != 0)
                revert(msg::not_payable);
            const auto nft = args.address(0);
            const auto id = args.word(1);
            const auto end_time = args.uint64(2);
            const auto r = load(host);
            if (r.started)
                revert(msg::already_started);
            const auto moved = move_nft(host, nft, host.sender(), host.self(), id);
            if (moved.ok)
            {
                host.sstore(slot(layout::auction_nft), Word::from_address(nft));
                host.sstore(slot(layout::auction_nft_id), id);
                host.sstore(slot(layout::auction_end_time), word(end_time));
                host.sstore(slot(layout::auction_seller), Word::from_address(host.sender()));
                return {};
            }
            revert(msg::nft_transfer_failed);
        }

        const auto r = load(host);
        if (sel == s.bid)
        {
            if (!r.started)
                revert(msg::not_started);
            if (!(host.timestamp() < r.end_time))
                revert(msg::auction_ended);
            // accepts a bid equal to the current highest
            if (host.value() < r.highest_bid || host.value() == 0)
                revert(msg::bid_too_low);
            host.sstore(slot(layout::auction_highest_bidder), Word::from_address(host.sender()));
            host.sstore(slot(layout::auction_highest_bid), Word::from_u256(host.value()));
            if (!r.highest_bidder.is_zero())
                host.transfer(r.highest_bidder, r.highest_bid);
            return {};
        }

        if (host.value() != 0)
            revert(msg::not_payable);
        if (!r.started)
            revert(msg::not_started);
        if (host.timestamp() < r.end_time)
            revert(msg::not_ended);
        if (r.finalized)
            revert(msg::already_finalized);
        host.sstore(slot(layout::auction_finalized), word(1));
        // no branch for an auction that received no bids
        if (!r.highest_bidder.is_zero())
        {
            host.transfer(r.seller, r.highest_bid);
            if (!move_nft(host, r.nft, host.self(), r.highest_bidder, r.nft_id).ok)
                revert(msg::nft_transfer_failed);
        }
        return {};
    }

private:
    struct Record
    {
        Address seller;
        Address nft;
        Word nft_id;
        u256 end_time;
        u256 highest_bid;
        Address highest_bidder;
        bool started = false;
        bool finalized = false;
    };

    static Record load(Host& host)
    {
        Record r;
        r.seller = host.sload(slot(layout::auction_seller)).to_address();
        r.started = !r.seller.is_zero();
        r.nft = host.sload(slot(layout::auction_nft)).to_address();
        r.nft_id = host.sload(slot(layout::auction_nft_id));
        r.end_time = host.sload(slot(layout::auction_end_time)).to_u256();
        r.highest_bid = host.sload(slot(layout::auction_highest_bid)).to_u256();
        r.highest_bidder = host.sload(slot(layout::auction_highest_bidder)).to_address();
        r.finalized = !host.sload(slot(layout::auction_finalized)).is_zero();
        return r;
    }
};

/// Phase-based: derives a phase from storage and then dispatches on
/// (phase, function).
class AuctionC final : public Behavior
{
public:
    Bytes execute(Host& host, ByteView calldata) override
    {
        const auto& s = sels();
        const auto sel = abi::selector_from(calldata);
        enum class Fn
        {
            start,
            bid,
            finalize
        };
        Fn fn;
        if (sel == s.bid)
            fn = Fn::bid;
        else if (sel == s.start)
            fn = Fn::start;
        else if (sel == s.finalize)
            fn = Fn::finalize;
        else
            revert(msg::unknown_function);

        if (fn != Fn::bid && host.value() != 0)
            revert(msg::not_payable);

        std::optional<abi::Args> args;
        Address nft_arg;
        Word id_arg;
        std::uint64_t end_arg = 0;
        if (fn == Fn::start)
        {
            args.emplace(calldata);
            nft_arg = args->address(0);
            id_arg = args->word(1);
            end_arg = args->uint64(2);
        }

        const auto phase = current_phase(host);
        switch (fn)
        {
        case Fn::start:
            if (phase != Phase::idle)
                revert(msg::already_started);
            return open(host, nft_arg, id_arg, end_arg);
        case Fn::bid:
            if (phase == Phase::idle)
                revert(msg::not_started);
            if (phase != Phase::open)
                revert(msg::auction_ended);
            return place_bid(host);
        case Fn::finalize:
            if (phase == Phase::idle)
                revert(msg::not_started);
            if (phase == Phase::open)
                revert(msg::not_ended);
            if (phase == Phase::closed)
                revert(msg::already_finalized);
            return settle(host);
        }
        revert(msg::unknown_function);
    }

private:
    enum class Phase
    {
        idle,
        open,
        ended,
        closed
    };

    static Phase current_phase(Host& host)
    {
        if (host.sload(slot(layout::auction_seller)).is_zero())
            return Phase::idle;
        if (host.timestamp() < host.sload(slot(layout::auction_end_time)).to_u256())
            return Phase::open;
        return host.sload(slot(layout::auction_finalized)).is_zero() ? Phase::ended : Phase::closed;
    }

    static Bytes open(Host& host, const Address& nft, const Word& id, std::uint64_t end_time)
    {
        host.sstore(slot(layout::auction_end_time), word(end_time));
        host.sstore(slot(layout::auction_nft_id), id);
        host.sstore(slot(layout::auction_nft), Word::from_address(nft));
        host.sstore(slot(layout::auction_seller), Word::from_address(host.sender()));
        if (!move_nft(host, nft, host.sender(), host.self(), id).ok)
            revert(msg::nft_transfer_failed);
        return {};
    }

    static Bytes place_bid(Host& host)
    {
        const auto bid_slot = slot(layout::auction_highest_bid);
        const auto bidder_slot = slot(layout::auction_highest_bidder);
        const auto standing = host.sload(bid_slot).to_u256();
        if (host.value() <= standing)
            revert(msg::bid_too_low);
        const auto outbid = host.sload(bidder_slot).to_address();
        host.sstore(bid_slot, Word::from_u256(host.value()));
        host.sstore(bidder_slot, Word::from_address(host.sender()));
        if (!outbid.is_zero())
            host.transfer(outbid, standing);
        return {};
    }

    static Bytes settle(Host& host)
    {
        host.sstore(slot(layout::auction_finalized), word(1));
        const auto seller = host.sload(slot(layout::auction_seller)).to_address();
        const auto winner = host.sload(slot(layout::auction_highest_bidder)).to_address();
        const auto recipient = winner.is_zero() ? seller : winner;
        const auto nft = host.sload(slot(layout::auction_nft)).to_address();
        if (!move_nft(host, nft, host.self(), recipient, host.sload(slot(layout::auction_nft_id))).ok)
            revert(msg::nft_transfer_failed);
        if (!winner.is_zero())
            host.transfer(seller, host.sload(slot(layout::auction_highest_bid)).to_u256());
        return {};
    }
};

template <class T>
BehaviorFactory factory()
{
    return [] { return std::make_unique<T>(); };
}
}  // namespace

namespace layout
{
Word balance_slot(const Address& holder)
{
    return keccak256(balance_preimage(holder));
}

Word allowance_slot(const Address& owner, const Address& spender)
{
    return keccak256(allowance_preimage(owner, spender));
}

Word owner_slot(const u256& token_id)
{
    return keccak256(owner_preimage(token_id));
}

Word approval_slot(const u256& token_id)
{
    return keccak256(approval_preimage(token_id));
}
}  // namespace layout

void register_all(Engine& engine)
{
    engine.register_code(std::string{token_a}, factory<TokenA>());
    engine.register_code(std::string{token_b}, factory<TokenB>());
    engine.register_code(std::string{nft_a}, factory<NftA>());
    engine.register_code(std::string{nft_b}, factory<NftB>());
    engine.register_code(std::string{auction_a}, factory<AuctionA>());
    engine.register_code(std::string{auction_b}, factory<AuctionB>());
    engine.register_code(std::string{auction_c}, factory<AuctionC>());
}

bool is_correct_variant(std::string_view code_id) noexcept
{
    return code_id != auction_b && std::ranges::find(all_code_ids, code_id) != all_code_ids.end();
}
}  // namespace drp::corpus
