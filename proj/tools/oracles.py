#!/usr/bin/env python3
# drp: dissimilar-redundancy transaction engine
# Copyright 2026 The drp Authors.
# SPDX-License-Identifier: Apache-2.0

"""Prints reference values frozen into the C++ tests.

Uses pycryptodome's Keccak-256, independent of src/keccak.cpp.
"""

from Crypto.Hash import keccak


def k256(data: bytes) -> str:
    return "0x" + keccak.new(digest_bits=256, data=data).hexdigest()


def selector(sig: str) -> str:
    return k256(sig.encode())[:10]


def main() -> None:
    print("keccak vectors")
    for label, data in [
        ('""', b""),
        ('"abc"', b"abc"),
        ("'a' * 200", b"a" * 200),
        ("'b' * 136", b"b" * 136),
        ("'c' * 135", b"c" * 135),
        ("be32(32) | 32 zero bytes", (32).to_bytes(4, "big") + bytes(32)),
    ]:
        print(f"  {label}: {k256(data)}")

    print("selectors")
    for sig in [
        "totalSupply()",
        "balanceOf(address)",
        "allowance(address,address)",
        "transferFrom(address,address,uint256)",
        "transfer(address,uint256)",
        "approve(address,uint256)",
        "ownerOf(uint256)",
        "bid()",
        "finalize()",
        "start(address,uint256,uint64)",
    ]:
        print(f"  {sig}: {selector(sig)}")

    # check registrations: selector | count | (tag | fields)...
    bal = bytes.fromhex(selector("balanceOf(address)")[2:])
    allow = bytes.fromhex(selector("allowance(address,address)")[2:])
    print("check registrations")
    print("  balanceOf(from):", "0x" + (bal + bytes([1, 0x01, 4, 32])).hex())
    print("  balanceOf(to):", "0x" + (bal + bytes([1, 0x01, 36, 32])).hex())
    print("  allowance(from, sender):", "0x" + (allow + bytes([2, 0x01, 4, 32, 0x02, 0x00])).hex())


if __name__ == "__main__":
    main()
