// cairo-air: Cairo machine semantics and algebraic trace toolkit
// Copyright 2026 The cairo-air Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace cairo {

/// Unsigned 256-bit integer, little-endian 64-bit limbs. Just enough
/// arithmetic for prime fields up to 255 bits; not a general bignum.
struct U256 {
    std::array<std::uint64_t, 4> w{};

    static U256 from_u64(std::uint64_t v) { return U256{{v, 0, 0, 0}}; }
    static U256 from_decimal(std::string_view s);
    static U256 from_le_bytes(const std::array<std::uint8_t, 32>& bytes);

    bool is_zero() const { return (w[0] | w[1] | w[2] | w[3]) == 0; }
    bool fits_u64() const { return (w[1] | w[2] | w[3]) == 0; }
    std::uint64_t as_u64() const;            // throws if the value needs more than 64 bits
    bool bit(unsigned i) const { return (w[i / 64] >> (i % 64)) & 1; }
    unsigned bit_length() const;

    std::string to_decimal() const;
    std::array<std::uint8_t, 32> to_le_bytes() const;

    friend bool operator==(const U256&, const U256&) = default;
};

int u256_cmp(const U256& a, const U256& b);
inline bool operator<(const U256& a, const U256& b) { return u256_cmp(a, b) < 0; }
inline bool operator<=(const U256& a, const U256& b) { return u256_cmp(a, b) <= 0; }
inline bool operator>(const U256& a, const U256& b) { return u256_cmp(a, b) > 0; }
inline bool operator>=(const U256& a, const U256& b) { return u256_cmp(a, b) >= 0; }

U256 u256_add(const U256& a, const U256& b);  // wraps mod 2^256
U256 u256_sub(const U256& a, const U256& b);  // wraps mod 2^256

struct U512 {
    std::array<std::uint64_t, 8> w{};
    bool bit(unsigned i) const { return (w[i / 64] >> (i % 64)) & 1; }
    unsigned bit_length() const;
};

U512 u256_mul_full(const U256& a, const U256& b);

/// x mod m for m < 2^255 (shift-subtract; fine for construction-time and
/// wide-modulus paths, the 64-bit fast path never comes here).
U256 u512_mod(const U512& x, const U256& m);
U256 u256_mod(const U256& x, const U256& m);

/// In-place x /= d, returns x mod d. d must be nonzero.
std::uint64_t u256_divmod_u64(U256& x, std::uint64_t d);

} // namespace cairo
