// cairo-air: Cairo machine semantics and algebraic trace toolkit
// Copyright 2026 The cairo-air Authors.
// SPDX-License-Identifier: Apache-2.0
#include "cairo/u256.hpp"

#include <algorithm>

#include "cairo/error.hpp"

namespace cairo {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

int u256_cmp(const U256& a, const U256& b) {
    for (int i = 3; i >= 0; --i) {
        if (a.w[i] != b.w[i]) return a.w[i] < b.w[i] ? -1 : 1;
    }
    return 0;
}

U256 u256_add(const U256& a, const U256& b) {
    U256 r;
    u128 carry = 0;
    for (int i = 0; i < 4; ++i) {
        u128 s = (u128)a.w[i] + b.w[i] + carry;
        r.w[i] = (u64)s;
        carry = s >> 64;
    }
    return r;
}

U256 u256_sub(const U256& a, const U256& b) {
    U256 r;
    u128 borrow = 0;
    for (int i = 0; i < 4; ++i) {
        u128 d = (u128)a.w[i] - b.w[i] - borrow;
        r.w[i] = (u64)d;
        borrow = (d >> 64) & 1;
    }
    return r;
}

unsigned U256::bit_length() const {
    for (int i = 3; i >= 0; --i) {
        if (w[i] != 0) return 64 * i + (64 - __builtin_clzll(w[i]));
    }
    return 0;
}

unsigned U512::bit_length() const {
    for (int i = 7; i >= 0; --i) {
        if (w[i] != 0) return 64 * i + (64 - __builtin_clzll(w[i]));
    }
    return 0;
}

std::uint64_t U256::as_u64() const {
    if (!fits_u64()) throw Error(ErrorKind::format, "value does not fit in 64 bits: " + to_decimal());
    return w[0];
}

U512 u256_mul_full(const U256& a, const U256& b) {
    U512 r;
    for (int i = 0; i < 4; ++i) {
        u64 carry = 0;
        for (int j = 0; j < 4; ++j) {
            u128 cur = (u128)a.w[i] * b.w[j] + r.w[i + j] + carry;
            r.w[i + j] = (u64)cur;
            carry = (u64)(cur >> 64);
        }
        r.w[i + 4] = carry;
    }
    return r;
}

namespace {

// One left shift + conditional subtract step; acc stays < m (m < 2^255).
inline void mod_shift_step(U256& acc, bool bit_in, const U256& m) {
    u64 carry = 0;
    for (int i = 0; i < 4; ++i) {
        u64 nxt = acc.w[i] >> 63;
        acc.w[i] = (acc.w[i] << 1) | carry;
        carry = nxt;
    }
    acc.w[0] |= bit_in ? 1u : 0u;
    if (u256_cmp(acc, m) >= 0) acc = u256_sub(acc, m);
}

} // namespace

U256 u512_mod(const U512& x, const U256& m) {
    if (m.is_zero()) throw Error(ErrorKind::division_by_zero, "modulus is zero");
    U256 acc;
    unsigned n = x.bit_length();
    for (int i = (int)n - 1; i >= 0; --i) mod_shift_step(acc, x.bit((unsigned)i), m);
    return acc;
}

U256 u256_mod(const U256& x, const U256& m) {
    if (m.is_zero()) throw Error(ErrorKind::division_by_zero, "modulus is zero");
    if (u256_cmp(x, m) < 0) return x;
    U256 acc;
    unsigned n = x.bit_length();
    for (int i = (int)n - 1; i >= 0; --i) mod_shift_step(acc, x.bit((unsigned)i), m);
    return acc;
}

std::uint64_t u256_divmod_u64(U256& x, std::uint64_t d) {
    if (d == 0) throw Error(ErrorKind::division_by_zero, "division by zero");
    u64 rem = 0;
    for (int i = 3; i >= 0; --i) {
        u128 cur = ((u128)rem << 64) | x.w[i];
        x.w[i] = (u64)(cur / d);
        rem = (u64)(cur % d);
    }
    return rem;
}

U256 U256::from_decimal(std::string_view s) {
    if (s.empty()) throw Error(ErrorKind::format, "empty decimal literal");
    U256 r;
    for (char c : s) {
        if (c < '0' || c > '9') throw Error(ErrorKind::format, "bad decimal literal: " + std::string(s));
        u64 carry = (u64)(c - '0');
        for (int i = 0; i < 4; ++i) {
            u128 cur = (u128)r.w[i] * 10 + carry;
            r.w[i] = (u64)cur;
            carry = (u64)(cur >> 64);
        }
        if (carry != 0) throw Error(ErrorKind::format, "decimal literal exceeds 256 bits: " + std::string(s));
    }
    return r;
}

std::string U256::to_decimal() const {
    if (is_zero()) return "0";
    U256 x = *this;
    std::string out;
    while (!x.is_zero()) {
        u64 digit = u256_divmod_u64(x, 10);
        out.push_back((char)('0' + digit));
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::array<std::uint8_t, 32> U256::to_le_bytes() const {
    std::array<std::uint8_t, 32> out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 8; ++j) out[(size_t)(i * 8 + j)] = (std::uint8_t)(w[i] >> (8 * j));
    return out;
}

U256 U256::from_le_bytes(const std::array<std::uint8_t, 32>& bytes) {
    U256 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 8; ++j) r.w[i] |= (u64)bytes[(size_t)(i * 8 + j)] << (8 * j);
    return r;
}

} // namespace cairo
