// cairo-air: Cairo machine semantics and algebraic trace toolkit
// Copyright 2026 The cairo-air Authors.
// SPDX-License-Identifier: Apache-2.0
#include "cairo/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace cairo {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

namespace {

U256 mulmod(const U256& a, const U256& b, const U256& m, bool narrow) {
    if (narrow) {
        u128 p = (u128)a.w[0] * b.w[0];
        return U256::from_u64((u64)(p % m.w[0]));
    }
    return u512_mod(u256_mul_full(a, b), m);
}

U256 powmod(U256 base, const U256& exp, const U256& m, bool narrow) {
    U256 result = U256::from_u64(1);  // m >= 2 everywhere this is called
    unsigned n = exp.bit_length();
    for (int i = (int)n - 1; i >= 0; --i) {
        result = mulmod(result, result, m, narrow);
        if (exp.bit((unsigned)i)) result = mulmod(result, base, m, narrow);
    }
    return result;
}

// Deterministic Miller-Rabin. The first-12-primes witness set is proven
// complete below 3.317e24 (> 2^81); larger candidates get the first 25
// primes, which is the standard fixed-base configuration.
bool is_prime(const U256& n) {
    static constexpr u64 kSmall[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                     43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    if (n.fits_u64()) {
        u64 v = n.w[0];
        if (v < 2) return false;
        for (u64 p : kSmall) {
            if (v == p) return true;
            if (v % p == 0) return false;
        }
    }
    if (!n.bit(0)) return false;

    U256 one = U256::from_u64(1);
    U256 n_minus_1 = u256_sub(n, one);
    U256 d = n_minus_1;
    unsigned r = 0;
    while (!d.bit(0)) {
        u256_divmod_u64(d, 2);
        ++r;
    }
    bool narrow = n.fits_u64();
    size_t rounds = n.bit_length() <= 81 ? 12 : 25;
    for (size_t k = 0; k < rounds; ++k) {
        U256 a = U256::from_u64(kSmall[k]);
        if (u256_cmp(a, n_minus_1) >= 0) continue;
        U256 x = powmod(a, d, n, narrow);
        if (x == one || x == n_minus_1) continue;
        bool witness = true;
        for (unsigned i = 0; i + 1 < r; ++i) {
            x = mulmod(x, x, n, narrow);
            if (x == n_minus_1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

U256 two_pow_63() { return U256::from_u64(1ull << 63); }

} // namespace

Field::Field(const U256& modulus) : modulus_(modulus) {
    if (modulus.bit_length() >= 255)
        throw Error(ErrorKind::config, "modulus must be below 2^255");
    if (!is_prime(modulus))
        throw Error(ErrorKind::config, "modulus is not prime: " + modulus.to_decimal());
    narrow_ = modulus.fits_u64();
    supports_isa_ = u256_cmp(modulus, two_pow_63()) > 0;
}

const Field& Field::goldilocks() {
    static const Field f{U256::from_u64(0xFFFFFFFF00000001ull)};
    return f;
}

const Field& Field::cairo_prime() {
    static const Field f{
        U256::from_decimal("3618502788666131213697322783095070105623107215331596699973092056135872020481")};
    return f;
}

const Field& Field::intern(const U256& modulus) {
    static std::mutex mu;
    static std::map<U256, std::unique_ptr<Field>>* registry =
        new std::map<U256, std::unique_ptr<Field>>();  // leaked: lives for the process
    std::lock_guard<std::mutex> lock(mu);
    auto it = registry->find(modulus);
    if (it == registry->end())
        it = registry->emplace(modulus, std::make_unique<Field>(modulus)).first;
    return *it->second;
}

Felt Field::zero() const { return Felt(*this, U256{}); }
Felt Field::one() const { return Felt(*this, U256::from_u64(1)); }

Felt Field::from_u64(std::uint64_t v) const { return from_u256(U256::from_u64(v)); }

Felt Field::from_u256(const U256& v) const { return Felt(*this, u256_mod(v, modulus_)); }

Felt Field::from_int(std::int64_t v) const {
    if (v >= 0) return from_u64((std::uint64_t)v);
    // -v as u64 is safe including INT64_MIN
    U256 mag = u256_mod(U256::from_u64((std::uint64_t)(-(v + 1)) + 1), modulus_);
    if (mag.is_zero()) return zero();
    return Felt(*this, u256_sub(modulus_, mag));
}

Felt Field::from_decimal_string(std::string_view s) const { return from_u256(U256::from_decimal(s)); }

namespace {

inline void check_same_field(const Felt& a, const Felt& b) {
    if (a.field() != b.field())
        throw Error(ErrorKind::config, "mixed field configurations: moduli " +
                                           a.field().modulus().to_decimal() + " vs " +
                                           b.field().modulus().to_decimal());
}

} // namespace

Felt operator+(const Felt& a, const Felt& b) {
    check_same_field(a, b);
    const U256& m = a.field().modulus();
    U256 s = u256_add(a.raw(), b.raw());  // both < m < 2^255, no wrap
    if (u256_cmp(s, m) >= 0) s = u256_sub(s, m);
    return Felt(a.field(), s);
}

Felt operator-(const Felt& a, const Felt& b) {
    check_same_field(a, b);
    const U256& m = a.field().modulus();
    if (u256_cmp(a.raw(), b.raw()) >= 0) return Felt(a.field(), u256_sub(a.raw(), b.raw()));
    return Felt(a.field(), u256_sub(u256_add(a.raw(), m), b.raw()));
}

Felt operator*(const Felt& a, const Felt& b) {
    check_same_field(a, b);
    const Field& f = a.field();
    return Felt(f, mulmod(a.raw(), b.raw(), f.modulus(), f.modulus().fits_u64()));
}

Felt Felt::operator-() const { return field().zero() - *this; }

Felt Felt::pow(const U256& exp) const {
    const Field& f = field();
    return Felt(f, powmod(v_, exp, f.modulus(), f.modulus().fits_u64()));
}

Felt Felt::inv() const {
    if (is_zero()) throw Error(ErrorKind::division_by_zero, "inverse of zero");
    U256 e = u256_sub(field().modulus(), U256::from_u64(2));
    return pow(e);
}

bool operator<(const Felt& a, const Felt& b) {
    check_same_field(a, b);
    return u256_cmp(a.raw(), b.raw()) < 0;
}

Felt felt_arith(ArithOp op, const Felt& x, const Felt& y) {
    switch (op) {
        case ArithOp::add: return x + y;
        case ArithOp::sub: return x - y;
        case ArithOp::mul: return x * y;
    }
    throw Error(ErrorKind::config, "unknown arithmetic op");
}

void batch_inverse(std::vector<Felt>& xs) {
    if (xs.empty()) return;
    std::vector<Felt> prefix;
    prefix.reserve(xs.size());
    prefix.push_back(xs[0]);
    for (size_t i = 1; i < xs.size(); ++i) prefix.push_back(prefix.back() * xs[i]);
    Felt acc = prefix.back().inv();  // throws if any input is zero
    for (size_t i = xs.size(); i-- > 1;) {
        Felt inv_i = acc * prefix[i - 1];
        acc = acc * xs[i];
        xs[i] = inv_i;
    }
    xs[0] = acc;
}

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::config: return "config";
        case ErrorKind::format: return "format";
        case ErrorKind::missing_memory: return "missing_memory";
        case ErrorKind::not_an_instruction: return "not_an_instruction";
        case ErrorKind::undefined_behavior: return "undefined_behavior";
        case ErrorKind::assert_failed: return "assert_failed";
        case ErrorKind::division_by_zero: return "division_by_zero";
        case ErrorKind::degenerate_challenge: return "degenerate_challenge";
        case ErrorKind::inconsistent_memory: return "inconsistent_memory";
        case ErrorKind::range: return "range";
        case ErrorKind::extraction: return "extraction";
    }
    return "unknown";
}

} // namespace cairo
