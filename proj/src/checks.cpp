// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

#include <drp/checks.hpp>
#include <drp/error.hpp>
#include <drp/keccak.hpp>

#include <charconv>

namespace drp
{
namespace
{
constexpr std::size_t byte_max = 0xff;

void require_byte(std::size_t v, std::string_view what)
{
    if (v > byte_max)
        throw Error{Errc::argument_too_large, std::string{what} + " " + std::to_string(v) + " exceeds 255"};
}

class Reader
{
public:
    explicit Reader(ByteView data) noexcept : data_{data} {}

    std::uint8_t byte(std::string_view what)
    {
        if (pos_ >= data_.size())
            throw Error{Errc::truncated_encoding, "missing " + std::string{what} + " at byte " + std::to_string(pos_)};
        return data_[pos_++];
    }

    ByteView take(std::size_t n, std::string_view what)
    {
        if (data_.size() - pos_ < n)
            throw Error{Errc::truncated_encoding, std::string{what} + " needs " + std::to_string(n) + " bytes"};
        const auto out = data_.subspan(pos_, n);
        pos_ += n;
        return out;
    }

    [[nodiscard]] std::size_t remaining() const noexcept { return data_.size() - pos_; }

private:
    ByteView data_;
    std::size_t pos_ = 0;
};

Word env_word(EnvKind kind, const CallContext& ctx)
{
    switch (kind)
    {
    case EnvKind::sender:
        return Word::from_address(ctx.sender);
    case EnvKind::value:
        return Word::from_u256(ctx.value);
    case EnvKind::timestamp:
        return word(ctx.block_timestamp);
    case EnvKind::block_number:
        return word(ctx.block_number);
    }
    return {};
}

bool is_known_env(std::uint8_t raw) noexcept
{
    return raw <= static_cast<std::uint8_t>(EnvKind::block_number);
}

Bytes failure_entry(ByteView payload)
{
    Bytes out{check_failure_marker};
    append(out, payload);
    return out;
}
}  // namespace

Bytes encode_abstract(const Selector& selector, std::span<const AbstractArgument> args)
{
    require_byte(args.size(), "argument count");
    Bytes out(selector.bytes.begin(), selector.bytes.end());
    out.push_back(static_cast<std::uint8_t>(args.size()));
    for (const auto& arg : args)
    {
        std::visit(
            [&out](const auto& a) {
                using T = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<T, StaticArg>)
                {
                    require_byte(a.content.size(), "static length");
                    out.push_back(static_cast<std::uint8_t>(ArgumentType::static_value));
                    out.push_back(static_cast<std::uint8_t>(a.content.size()));
                    append(out, a.content);
                }
                else if constexpr (std::is_same_v<T, CallDataArg>)
                {
                    require_byte(a.offset, "calldata offset");
                    require_byte(a.length, "calldata length");
                    out.push_back(static_cast<std::uint8_t>(ArgumentType::call_data));
                    out.push_back(static_cast<std::uint8_t>(a.offset));
                    out.push_back(static_cast<std::uint8_t>(a.length));
                }
                else
                {
                    out.push_back(static_cast<std::uint8_t>(ArgumentType::env));
                    out.push_back(static_cast<std::uint8_t>(a.kind));
                }
            },
            arg);
    }
    return out;
}

DecodedCheck decode_abstract(ByteView encoded)
{
    Reader in{encoded};
    DecodedCheck out;
    const auto sel = in.take(Selector::size, "selector");
    std::ranges::copy(sel, out.selector.bytes.begin());

    const auto count = in.byte("argument count");
    out.args.reserve(count);
    for (unsigned i = 0; i < count; ++i)
    {
        const auto type = in.byte("argument type");
        switch (type)
        {
        case static_cast<std::uint8_t>(ArgumentType::static_value):
        {
            const auto n = in.byte("static length");
            const auto content = in.take(n, "static content");
            out.args.emplace_back(StaticArg{Bytes(content.begin(), content.end())});
            break;
        }
        case static_cast<std::uint8_t>(ArgumentType::call_data):
        {
            const auto offset = in.byte("calldata offset");
            const auto length = in.byte("calldata length");
            out.args.emplace_back(CallDataArg{offset, length});
            break;
        }
        case static_cast<std::uint8_t>(ArgumentType::env):
        {
            const auto raw = in.byte("environment kind");
            if (!is_known_env(raw))
                throw Error{Errc::unknown_env_kind, "kind " + std::to_string(raw)};
            out.args.emplace_back(EnvArg{static_cast<EnvKind>(raw)});
            break;
        }
        default:
            throw Error{Errc::unknown_argument_type, "type " + std::to_string(type) + " in argument " + std::to_string(i)};
        }
    }
    if (in.remaining() != 0)
        throw Error{Errc::trailing_bytes, std::to_string(in.remaining()) + " bytes after the last argument"};
    return out;
}

void CheckRegistry::register_check(const Selector& for_selector, const Address& target, ByteView encoded)
{
    auto decoded = decode_abstract(encoded);
    add(for_selector, CheckSpec{target, decoded.selector, std::move(decoded.args)});
}

void CheckRegistry::add(const Selector& for_selector, CheckSpec spec)
{
    map_[for_selector].push_back(std::move(spec));
}

const std::vector<CheckSpec>& CheckRegistry::checks_for(const Selector& selector) const
{
    static const std::vector<CheckSpec> none;
    const auto it = map_.find(selector);
    return it == map_.end() ? none : it->second;
}

Bytes materialize(const CheckSpec& spec, const CallContext& ctx)
{
    Bytes out(spec.selector.bytes.begin(), spec.selector.bytes.end());
    for (const auto& arg : spec.args)
    {
        std::visit(
            [&](const auto& a) {
                using T = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<T, StaticArg>)
                    append(out, a.content);
                else if constexpr (std::is_same_v<T, CallDataArg>)
                {
                    if (a.offset + a.length > ctx.calldata.size())
                        throw Error{Errc::call_data_out_of_range,
                            "[" + std::to_string(a.offset) + ", " + std::to_string(a.offset + a.length) + ") of " +
                                std::to_string(ctx.calldata.size()) + " bytes"};
                    const auto first = ctx.calldata.begin() + static_cast<std::ptrdiff_t>(a.offset);
                    out.insert(out.end(), first, first + static_cast<std::ptrdiff_t>(a.length));
                }
                else
                    append(out, env_word(a.kind, ctx).view());
            },
            arg);
    }
    return out;
}

std::vector<Bytes> run_checks(
    Host& host, std::span<const CheckSpec> checks, const CallContext& ctx, const std::optional<CheckRouting>& routing)
{
    std::vector<Bytes> results;
    results.reserve(checks.size());
    for (const auto& spec : checks)
    {
        Bytes data;
        try
        {
            data = materialize(spec, ctx);
        }
        catch (const Error& e)
        {
            results.push_back(failure_entry(to_bytes(error_name(e.code()))));
            continue;
        }
        const auto out = routing && spec.target == routing->proxy
            ? host.static_delegate_call(routing->active_implementation, data)
            : host.static_call(spec.target, data);
        results.push_back(out.ok ? out.ret_data : failure_entry(out.ret_data));
    }
    return results;
}

std::vector<Bytes> run_checks(Engine& engine, std::span<const CheckSpec> checks, const CallContext& ctx)
{
    std::vector<Bytes> results;
    engine.with_static_host(ctx.target, ctx.block_timestamp, ctx.block_number,
        [&](Host& host) { results = run_checks(host, checks, ctx); });
    return results;
}

Bytes serialize_check_results(std::span<const Bytes> results)
{
    Bytes out;
    for (const auto& r : results)
    {
        const auto n = static_cast<std::uint32_t>(r.size());
        out.push_back(static_cast<std::uint8_t>(n >> 24));
        out.push_back(static_cast<std::uint8_t>(n >> 16));
        out.push_back(static_cast<std::uint8_t>(n >> 8));
        out.push_back(static_cast<std::uint8_t>(n));
        append(out, r);
    }
    return out;
}

Word hash_checks(std::span<const Bytes> results)
{
    return keccak256(serialize_check_results(results));
}

std::string_view env_kind_name(EnvKind kind) noexcept
{
    switch (kind)
    {
    case EnvKind::sender:
        return "sender";
    case EnvKind::value:
        return "value";
    case EnvKind::timestamp:
        return "timestamp";
    case EnvKind::block_number:
        return "blocknumber";
    }
    return "unknown";
}

std::optional<EnvKind> parse_env_kind(std::string_view name) noexcept
{
    for (const auto k : {EnvKind::sender, EnvKind::value, EnvKind::timestamp, EnvKind::block_number})
        if (env_kind_name(k) == name)
            return k;
    return std::nullopt;
}

std::string to_descriptor(const AbstractArgument& arg)
{
    return std::visit(
        [](const auto& a) -> std::string {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, StaticArg>)
                return "static:" + to_hex(a.content);
            else if constexpr (std::is_same_v<T, CallDataArg>)
                return "calldata:" + std::to_string(a.offset) + ":" + std::to_string(a.length);
            else
                return "env:" + std::string{env_kind_name(a.kind)};
        },
        arg);
}

std::optional<AbstractArgument> parse_descriptor(std::string_view text)
{
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        return std::nullopt;
    const auto kind = text.substr(0, colon);
    const auto rest = text.substr(colon + 1);

    if (kind == "static")
    {
        auto bytes = from_hex(rest);
        if (!bytes)
            return std::nullopt;
        return StaticArg{std::move(*bytes)};
    }
    if (kind == "calldata")
    {
        const auto sep = rest.find(':');
        if (sep == std::string_view::npos)
            return std::nullopt;
        const auto parse = [](std::string_view s) -> std::optional<std::size_t> {
            std::size_t v = 0;
            const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
                return std::nullopt;
            return v;
        };
        const auto offset = parse(rest.substr(0, sep));
        const auto length = parse(rest.substr(sep + 1));
        if (!offset || !length)
            return std::nullopt;
        return CallDataArg{*offset, *length};
    }
    if (kind == "env")
    {
        const auto k = parse_env_kind(rest);
        if (!k)
            return std::nullopt;
        return EnvArg{*k};
    }
    return std::nullopt;
}
}  // namespace drp
