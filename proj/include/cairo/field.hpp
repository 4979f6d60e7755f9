// cairo-air: Cairo machine semantics and algebraic trace toolkit
// Copyright 2026 The cairo-air Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cairo/error.hpp"
#include "cairo/u256.hpp"

namespace cairo {

class Felt;

/// A prime field F_p, modulus fixed at construction. Primality is checked
/// (deterministic Miller-Rabin witness sets). Field objects are immutable
/// and must outlive every Felt they hand out; use the static instances or
/// keep the Field alive for the duration of a run.
class Field {
public:
    explicit Field(const U256& modulus);

    /// 2^64 - 2^32 + 1. Default everywhere; exceeds 2^63.
    static const Field& goldilocks();
    /// 2^251 + 17*2^192 + 1, the Cairo production prime.
    static const Field& cairo_prime();
    static Field from_decimal(std::string_view s) { return Field(U256::from_decimal(s)); }
    /// Process-lifetime instance for the given modulus; one per modulus.
    /// Deserialized Felts point here, so their Field never dangles.
    static const Field& intern(const U256& modulus);

    const U256& modulus() const { return modulus_; }
    /// Instructions are 63-bit; the machine semantics require char > 2^63.
    bool supports_isa() const { return supports_isa_; }
    /// Small enough for exhaustive scans (test oracles only).
    bool enumerable() const { return modulus_.fits_u64() && modulus_.w[0] <= (1u << 20); }

    Felt zero() const;
    Felt one() const;
    Felt from_u64(std::uint64_t v) const;
    Felt from_int(std::int64_t v) const;
    Felt from_u256(const U256& v) const;  // reduces mod p
    Felt from_decimal_string(std::string_view s) const;

    friend bool operator==(const Field& a, const Field& b) { return a.modulus_ == b.modulus_; }
    friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

private:
    friend class Felt;
    U256 modulus_;
    bool narrow_;        // modulus fits a single limb: use the u128 fast path
    bool supports_isa_;
};

/// One field element, canonical value in [0, p). Immutable value type;
/// carries a pointer to its Field, and mixing fields raises ErrorKind::config.
class Felt {
public:
    Felt(const Field& field, const U256& canonical_value) : v_(canonical_value), field_(&field) {}

    const U256& raw() const { return v_; }
    const Field& field() const { return *field_; }
    bool is_zero() const { return v_.is_zero(); }
    std::uint64_t to_u64() const { return v_.as_u64(); }
    std::string to_decimal() const { return v_.to_decimal(); }

    friend Felt operator+(const Felt& a, const Felt& b);
    friend Felt operator-(const Felt& a, const Felt& b);
    friend Felt operator*(const Felt& a, const Felt& b);
    Felt operator-() const;

    Felt inv() const;                 // throws division_by_zero on 0
    Felt pow(const U256& exp) const;

    friend bool operator==(const Felt& a, const Felt& b) {
        return *a.field_ == *b.field_ && a.v_ == b.v_;
    }
    friend bool operator!=(const Felt& a, const Felt& b) { return !(a == b); }
    /// Orders by canonical value (used for sorting columns and map keys).
    friend bool operator<(const Felt& a, const Felt& b);

private:
    U256 v_;
    const Field* field_;
};

/// Single dispatch point for the ring operations (the operator overloads
/// above are the idiomatic surface).
enum class ArithOp { add, sub, mul };
Felt felt_arith(ArithOp op, const Felt& x, const Felt& y);

/// Montgomery-style batched inversion: one field inversion total.
/// Throws division_by_zero if any input is zero.
void batch_inverse(std::vector<Felt>& xs);

} // namespace cairo
