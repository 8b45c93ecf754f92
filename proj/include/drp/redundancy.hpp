// drp: dissimilar-redundancy transaction engine
// Copyright 2026 The drp Authors.
// SPDX-License-Identifier: Apache-2.0

/// @file
/// The redundancy proxy.
///
/// Every call that reaches the proxy is executed once per configured
/// implementation, each time against the same pre-call state. The proxy does
/// this by delegate-calling its own code with a callDelegate request; that
/// frame delegate-calls the implementation, runs the registered checks, and
/// then reverts with (ok, checks hash, return data) so the implementation's
/// writes are discarded. Only the request for the last implementation returns
/// normally, which lets its writes persist. The proxy then requires all
/// implementations to agree on success, return data, and checks hash.

#pragma once

#include <drp/bytes.hpp>
#include <drp/checks.hpp>
#include <drp/engine.hpp>

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace drp
{
inline constexpr std::string_view proxy_code_id = "dr_proxy";

inline constexpr std::string_view success_mismatch_message = "all implementations must return the same success";
inline constexpr std::string_view data_mismatch_message = "all implementations must return the same data";
inline constexpr std::string_view checks_mismatch_message = "all implementations must return the same checks";
inline constexpr std::string_view proxy_internal_error_message = "proxy internal error";
inline constexpr std::string_view unconfigured_proxy_message = "proxy has no implementations";

enum class MismatchKind
{
    success,
    data,
    checks,
};

[[nodiscard]] std::string_view mismatch_message(MismatchKind kind) noexcept;
[[nodiscard]] std::string_view mismatch_name(MismatchKind kind) noexcept;
/// The kind whose message equals `revert_payload` byte for byte.
[[nodiscard]] std::optional<MismatchKind> classify_revert(ByteView revert_payload) noexcept;

/// Wire layout: ok(1, 0x00 or 0x01) | checks_hash(32) | ret_data.
struct DelegateResult
{
    bool ok = false;
    Word checks_hash;
    Bytes ret_data;
    friend bool operator==(const DelegateResult&, const DelegateResult&) = default;
};

inline constexpr std::size_t delegate_result_header = 33;

[[nodiscard]] Bytes encode_delegate_result(const DelegateResult& r);
/// nullopt for payloads shorter than 33 bytes or with an ok byte other than 0/1.
[[nodiscard]] std::optional<DelegateResult> decode_delegate_result(ByteView payload);

struct CallDelegateRequest
{
    Address implementation;
    Bytes data;
    std::vector<CheckSpec> checks;
    bool is_last = false;
    friend bool operator==(const CallDelegateRequest&, const CallDelegateRequest&) = default;
};

[[nodiscard]] const Selector& call_delegate_selector() noexcept;

/// selector | impl(20) | is_last(1) | be32(len) | data | be16(count) | (target(20) | be16(len) | check)...
/// where each check is in the registration byte format.
[[nodiscard]] Bytes encode_call_delegate(const CallDelegateRequest& req);
[[nodiscard]] std::optional<CallDelegateRequest> decode_call_delegate(ByteView calldata);

struct ProxyConfig
{
    Address proxy_address;
    std::vector<Address> implementations;
    CheckRegistry registry;
};

/// Throws Error(empty_implementation_list).
void set_implementations(ProxyConfig& cfg, std::vector<Address> addrs);

/// Runs inside the self-delegated frame. Returns the encoded DelegateResult
/// when `req.is_last`; otherwise reverts with it.
Bytes call_delegate(Host& host, const CallDelegateRequest& req);

/// One execution per implementation, then the unanimity checks. Returns the
/// agreed return data, reverts with the agreed revert data, or reverts with
/// one of the mismatch messages.
Bytes redundant_call(Host& host, const ProxyConfig& cfg, ByteView calldata);

/// Entry point for every frame that runs the proxy's code: self-delegated
/// callDelegate requests go to call_delegate, everything else to
/// redundant_call.
Bytes proxy_dispatch(Host& host, const ProxyConfig& cfg, ByteView calldata);

/// Gas an on-chain proxy spends reading its implementation list and the
/// checks registered for one selector from storage, priced as sloads.
[[nodiscard]] std::uint64_t config_read_gas(const GasSchedule& s, const ProxyConfig& cfg, const Selector& sel);

class RedundancyProxy final : public Behavior
{
public:
    /// Args: implementation addresses as consecutive 32-byte words; may be
    /// empty and configured later through config().
    void init(Host& host, ByteView args) override;
    Bytes execute(Host& host, ByteView calldata) override;

    [[nodiscard]] ProxyConfig& config() noexcept { return config_; }
    [[nodiscard]] const ProxyConfig& config() const noexcept { return config_; }

private:
    ProxyConfig config_;
};

void register_proxy_code(Engine& engine);

/// Throws Error(unknown_target) when `addr` does not run the proxy.
[[nodiscard]] RedundancyProxy& proxy_at(Engine& engine, const Address& addr);

/// Deploys and configures a proxy. Requires register_proxy_code and at least
/// one implementation bound to code.
Address deploy_proxy(Engine& engine, std::span<const Address> implementations, const Address& deployer = {});
}  // namespace drp
