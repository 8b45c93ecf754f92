// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

#include <drp/abi.hpp>
#include <drp/error.hpp>
#include <drp/redundancy.hpp>

#include <algorithm>

namespace drp
{
namespace
{
void put_be(Bytes& out, std::uint64_t v, int width)
{
    for (int i = width - 1; i >= 0; --i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class Cursor
{
public:
    explicit Cursor(ByteView data) noexcept : data_{data} {}

    std::optional<ByteView> take(std::size_t n) noexcept
    {
        if (data_.size() - pos_ < n)
            return std::nullopt;
        const auto out = data_.subspan(pos_, n);
        pos_ += n;
        return out;
    }

    std::optional<std::uint64_t> be(std::size_t width) noexcept
    {
        const auto b = take(width);
        if (!b)
            return std::nullopt;
        std::uint64_t v = 0;
        for (const auto x : *b)
            v = (v << 8) | x;
        return v;
    }

    [[nodiscard]] bool done() const noexcept { return pos_ == data_.size(); }

private:
    ByteView data_;
    std::size_t pos_ = 0;
};

Address address_of(ByteView b)
{
    Address a;
    std::ranges::copy(b, a.bytes.begin());
    return a;
}
}  // namespace

std::string_view mismatch_message(MismatchKind kind) noexcept
{
    switch (kind)
    {
    case MismatchKind::success:
        return success_mismatch_message;
    case MismatchKind::data:
        return data_mismatch_message;
    case MismatchKind::checks:
        return checks_mismatch_message;
    }
    return {};
}

std::string_view mismatch_name(MismatchKind kind) noexcept
{
    switch (kind)
    {
    case MismatchKind::success:
        return "success";
    case MismatchKind::data:
        return "data";
    case MismatchKind::checks:
        return "checks";
    }
    return {};
}

std::optional<MismatchKind> classify_revert(ByteView revert_payload) noexcept
{
    const std::string_view text{reinterpret_cast<const char*>(revert_payload.data()), revert_payload.size()};
    for (const auto k : {MismatchKind::success, MismatchKind::data, MismatchKind::checks})
        if (text == mismatch_message(k))
            return k;
    return std::nullopt;
}

Bytes encode_delegate_result(const DelegateResult& r)
{
    Bytes out;
    out.reserve(delegate_result_header + r.ret_data.size());
    out.push_back(r.ok ? 1 : 0);
    append(out, r.checks_hash.view());
    append(out, r.ret_data);
    return out;
}

std::optional<DelegateResult> decode_delegate_result(ByteView payload)
{
    if (payload.size() < delegate_result_header || payload[0] > 1)
        return std::nullopt;
    DelegateResult r;
    r.ok = payload[0] == 1;
    std::copy_n(payload.begin() + 1, Word::size, r.checks_hash.bytes.begin());
    r.ret_data.assign(payload.begin() + delegate_result_header, payload.end());
    return r;
}

const Selector& call_delegate_selector() noexcept
{
    static const Selector sel = abi::selector_of("callDelegate(address,bytes,bytes[],bool)");
    return sel;
}

Bytes encode_call_delegate(const CallDelegateRequest& req)
{
    const auto& sel = call_delegate_selector();
    Bytes out(sel.bytes.begin(), sel.bytes.end());
    append(out, req.implementation.view());
    out.push_back(req.is_last ? 1 : 0);
    put_be(out, req.data.size(), 4);
    append(out, req.data);
    put_be(out, req.checks.size(), 2);
    for (const auto& c : req.checks)
    {
        const auto encoded = encode_abstract(c.selector, c.args);
        append(out, c.target.view());
        put_be(out, encoded.size(), 2);
        append(out, encoded);
    }
    return out;
}

std::optional<CallDelegateRequest> decode_call_delegate(ByteView calldata)
{
    Cursor in{calldata};
    const auto sel = in.take(Selector::size);
    if (!sel || !std::ranges::equal(*sel, call_delegate_selector().bytes))
        return std::nullopt;

    CallDelegateRequest req;
    const auto impl = in.take(Address::size);
    const auto last = in.be(1);
    const auto data_len = in.be(4);
    if (!impl || !last || *last > 1 || !data_len)
        return std::nullopt;
    req.implementation = address_of(*impl);
    req.is_last = *last == 1;
    const auto data = in.take(*data_len);
    const auto count = in.be(2);
    if (!data || !count)
        return std::nullopt;
    req.data.assign(data->begin(), data->end());

    for (std::uint64_t i = 0; i < *count; ++i)
    {
        const auto target = in.take(Address::size);
        const auto len = in.be(2);
        if (!target || !len)
            return std::nullopt;
        const auto encoded = in.take(*len);
        if (!encoded)
            return std::nullopt;
        try
        {
            auto decoded = decode_abstract(*encoded);
            req.checks.push_back(CheckSpec{address_of(*target), decoded.selector, std::move(decoded.args)});
        }
        catch (const Error&)
        {
            return std::nullopt;
        }
    }
    if (!in.done())
        return std::nullopt;
    return req;
}

void set_implementations(ProxyConfig& cfg, std::vector<Address> addrs)
{
    if (addrs.empty())
        throw Error{Errc::empty_implementation_list};
    cfg.implementations = std::move(addrs);
}

std::uint64_t config_read_gas(const GasSchedule& s, const ProxyConfig& cfg, const Selector& sel)
{
    // list length + one slot per implementation, then the check list length
    // + the words holding target and encoding of each check
    std::uint64_t words = 1 + cfg.implementations.size() + 1;
    for (const auto& c : cfg.registry.checks_for(sel))
        words += (Address::size + encode_abstract(c.selector, c.args).size() + 31) / 32;
    return words * s.sload;
}

Bytes call_delegate(Host& host, const CallDelegateRequest& req)
{
    const auto out = host.delegate_call(req.implementation, req.data);

    // after a failed delegate the implementation's frame is already rolled
    // back, so these observe the pre-call state
    const CallContext env{
        .sender = host.sender(),
        .target = host.self(),
        .storage_context = {},
        .value = host.value(),
        .calldata = req.data,
        .block_timestamp = host.timestamp(),
        .block_number = host.block_number(),
    };
    const auto results = run_checks(host, req.checks, env, CheckRouting{host.self(), req.implementation});
    const auto checks_hash = host.keccak(serialize_check_results(results));

    auto payload = encode_delegate_result({out.ok, checks_hash, out.ret_data});
    if (!req.is_last)
        revert_with(std::move(payload));
    return payload;
}

Bytes redundant_call(Host& host, const ProxyConfig& cfg, ByteView calldata)
{
    if (cfg.implementations.empty())
        revert(unconfigured_proxy_message);
    if (calldata.size() < Selector::size)
        revert("malformed calldata");

    const auto signature = abi::selector_from(calldata);
    host.use_gas(config_read_gas(host.schedule(), cfg, signature));
    const auto& checks = cfg.registry.checks_for(signature);

    std::optional<DelegateResult> first;
    DelegateResult current;
    const auto n = cfg.implementations.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        const bool is_last = i + 1 == n;
        const CallDelegateRequest req{
            .implementation = cfg.implementations[i],
            .data = Bytes(calldata.begin(), calldata.end()),
            .checks = checks,
            .is_last = is_last,
        };
        const auto out = host.delegate_call(host.code_address(), encode_call_delegate(req));
        // a non-last request always reverts and the last one always returns
        if (out.ok != is_last)
            revert(proxy_internal_error_message);
        auto decoded = decode_delegate_result(out.ret_data);
        if (!decoded)
            revert(proxy_internal_error_message);
        current = std::move(*decoded);

        if (!first)
        {
            first = current;
            continue;
        }
        if (current.ok != first->ok)
            revert(success_mismatch_message);
        if (current.ret_data != first->ret_data)
            revert(data_mismatch_message);
        if (current.checks_hash != first->checks_hash)
            revert(checks_mismatch_message);
    }

    if (!current.ok)
        revert_with(std::move(current.ret_data));
    return std::move(current.ret_data);
}

Bytes proxy_dispatch(Host& host, const ProxyConfig& cfg, ByteView calldata)
{
    const bool self_delegated = host.is_delegate() && host.code_address() == host.self();
    if (self_delegated && calldata.size() >= Selector::size &&
        abi::selector_from(calldata) == call_delegate_selector())
    {
        const auto req = decode_call_delegate(calldata);
        if (!req)
            revert(proxy_internal_error_message);
        return call_delegate(host, *req);
    }
    return redundant_call(host, cfg, calldata);
}

void RedundancyProxy::init(Host& host, ByteView args)
{
    config_.proxy_address = host.self();
    if (args.size() % Word::size != 0)
        revert("malformed implementation list");
    for (std::size_t off = 0; off < args.size(); off += Word::size)
    {
        Word w;
        std::copy_n(args.begin() + static_cast<std::ptrdiff_t>(off), Word::size, w.bytes.begin());
        config_.implementations.push_back(w.to_address());
    }
}

Bytes RedundancyProxy::execute(Host& host, ByteView calldata)
{
    return proxy_dispatch(host, config_, calldata);
}

void register_proxy_code(Engine& engine)
{
    engine.register_code(std::string{proxy_code_id}, [] { return std::make_unique<RedundancyProxy>(); });
}

RedundancyProxy& proxy_at(Engine& engine, const Address& addr)
{
    auto* p = dynamic_cast<RedundancyProxy*>(engine.instance(addr));
    if (!p)
        throw Error{Errc::unknown_target, to_hex(addr) + " is not a redundancy proxy"};
    return *p;
}

Address deploy_proxy(Engine& engine, std::span<const Address> implementations, const Address& deployer)
{
    if (implementations.empty())
        throw Error{Errc::empty_implementation_list};
    for (const auto& impl : implementations)
        if (!engine.state().code_of(impl))
            throw Error{Errc::unknown_target, to_hex(impl) + " has no code"};
    Bytes args;
    for (const auto& impl : implementations)
        append(args, Word::from_address(impl).view());
    return engine.deploy(proxy_code_id, args, deployer);
}
}  // namespace drp
