// cairo-air: Cairo machine semantics and algebraic trace toolkit
// Copyright 2026 The cairo-air Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cairo/field.hpp"

namespace cairo {

/// Plain SHA-256 (FIPS 180-4). Self-contained; known-answer tested.
class Sha256 {
public:
    Sha256();
    void update(const std::uint8_t* data, std::size_t len);
    void update(std::span<const std::uint8_t> data) { update(data.data(), data.size()); }
    std::array<std::uint8_t, 32> finalize();

    static std::array<std::uint8_t, 32> digest(std::span<const std::uint8_t> data);

private:
    void process_block(const std::uint8_t* block);
    std::array<std::uint32_t, 8> state_;
    std::array<std::uint8_t, 64> buffer_;
    std::uint64_t total_len_ = 0;
    std::size_t buffer_len_ = 0;
};

struct Challenges {
    Felt alpha, z_mem, z_rc;
};

/// Canonical first-stage commitment: versioned, group-tagged, length-prefixed
/// little-endian field elements. Challenges are a pure function of the bytes.
class Transcript {
public:
    explicit Transcript(const Field& field);

    void append_group(std::string_view name, std::span<const Felt> column);
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

    Challenges derive_challenges() const;

private:
    const Field* field_;
    std::vector<std::uint8_t> bytes_;
};

/// hash(domain-tag || committed-bytes) reduced into the field, per challenge.
/// z_mem is resampled (counter suffix) until nonzero.
Challenges derive_challenges(const Field& field, std::span<const std::uint8_t> committed_bytes);

/// Deterministic pseudo-challenges for reproducible tests; not transcripts.
Challenges challenges_from_seed(const Field& field, std::uint64_t seed);

/// True iff multiset(a) != multiset(b) and prod(z - a_i) = prod(z - b_i):
/// z is one of the finitely many misleading challenge values.
bool in_exceptional_set(std::span<const Felt> a, std::span<const Felt> b, const Felt& z);

/// Exhaustive root scan; restricted to enumerable (test-scale) fields.
/// Empty when the multisets agree; otherwise at most |a| values.
std::vector<Felt> enumerate_exceptional_set(std::span<const Felt> a, std::span<const Felt> b);

/// True iff alpha compresses two distinct (addr, value) pairs, one from each
/// list, to the same field element: alpha = (a'_j - a_i) / (v_i - v'_j).
bool in_bad_alpha(std::span<const Felt> a, std::span<const Felt> v, std::span<const Felt> a2,
                  std::span<const Felt> v2, const Felt& alpha);

} // namespace cairo
