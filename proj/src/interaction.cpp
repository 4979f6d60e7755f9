// cairo-air: Cairo machine semantics and algebraic trace toolkit
// Copyright 2026 The cairo-air Authors.
// SPDX-License-Identifier: Apache-2.0
#include "cairo/interaction.hpp"

#include <algorithm>
#include <cstring>

namespace cairo {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

namespace {

constexpr u32 kSha256K[64] = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
    0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
    0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
    0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
    0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
    0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
    0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
    0xc67178f2};

inline u32 rotr(u32 x, unsigned n) { return (x >> n) | (x << (32 - n)); }

} // namespace

Sha256::Sha256()
    : state_{0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a, 0x510e527f, 0x9b05688c,
             0x1f83d9ab, 0x5be0cd19} {}

void Sha256::process_block(const std::uint8_t* p) {
    u32 w[64];
    for (int i = 0; i < 16; ++i)
        w[i] = (u32(p[4 * i]) << 24) | (u32(p[4 * i + 1]) << 16) | (u32(p[4 * i + 2]) << 8) |
               u32(p[4 * i + 3]);
    for (int i = 16; i < 64; ++i) {
        u32 s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
        u32 s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
        w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    u32 a = state_[0], b = state_[1], c = state_[2], d = state_[3];
    u32 e = state_[4], f = state_[5], g = state_[6], h = state_[7];
    for (int i = 0; i < 64; ++i) {
        u32 s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
        u32 ch = (e & f) ^ (~e & g);
        u32 t1 = h + s1 + ch + kSha256K[i] + w[i];
        u32 s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
        u32 maj = (a & b) ^ (a & c) ^ (b & c);
        u32 t2 = s0 + maj;
        h = g;
        g = f;
        f = e;
        e = d + t1;
        d = c;
        c = b;
        b = a;
        a = t1 + t2;
    }
    state_[0] += a;
    state_[1] += b;
    state_[2] += c;
    state_[3] += d;
    state_[4] += e;
    state_[5] += f;
    state_[6] += g;
    state_[7] += h;
}

void Sha256::update(const std::uint8_t* data, std::size_t len) {
    total_len_ += len;
    while (len > 0) {
        std::size_t take = std::min(len, buffer_.size() - buffer_len_);
        std::memcpy(buffer_.data() + buffer_len_, data, take);
        buffer_len_ += take;
        data += take;
        len -= take;
        if (buffer_len_ == buffer_.size()) {
            process_block(buffer_.data());
            buffer_len_ = 0;
        }
    }
}

std::array<std::uint8_t, 32> Sha256::finalize() {
    u64 bit_len = total_len_ * 8;
    std::uint8_t pad = 0x80;
    update(&pad, 1);
    std::uint8_t zero = 0;
    while (buffer_len_ != 56) update(&zero, 1);
    std::uint8_t len_be[8];
    for (int i = 0; i < 8; ++i) len_be[i] = (std::uint8_t)(bit_len >> (56 - 8 * i));
    update(len_be, 8);
    std::array<std::uint8_t, 32> out{};
    for (int i = 0; i < 8; ++i) {
        out[4 * i] = (std::uint8_t)(state_[i] >> 24);
        out[4 * i + 1] = (std::uint8_t)(state_[i] >> 16);
        out[4 * i + 2] = (std::uint8_t)(state_[i] >> 8);
        out[4 * i + 3] = (std::uint8_t)state_[i];
    }
    return out;
}

std::array<std::uint8_t, 32> Sha256::digest(std::span<const std::uint8_t> data) {
    Sha256 h;
    h.update(data);
    return h.finalize();
}

namespace {

constexpr std::string_view kTranscriptVersion = "cairo-air/v1";

void append_u64_le(std::vector<std::uint8_t>& out, u64 v) {
    for (int i = 0; i < 8; ++i) out.push_back((std::uint8_t)(v >> (8 * i)));
}

Felt hash_to_field(const Field& field, std::string_view tag,
                   std::span<const std::uint8_t> bytes, bool reject_zero) {
    for (u64 ctr = 0;; ++ctr) {
        Sha256 h;
        h.update(reinterpret_cast<const std::uint8_t*>(kTranscriptVersion.data()),
                 kTranscriptVersion.size());
        h.update(reinterpret_cast<const std::uint8_t*>(tag.data()), tag.size());
        std::vector<std::uint8_t> ctr_bytes;
        append_u64_le(ctr_bytes, ctr);
        h.update(ctr_bytes.data(), ctr_bytes.size());
        h.update(bytes);
        Felt v = field.from_u256(U256::from_le_bytes(h.finalize()));
        if (!reject_zero || !v.is_zero()) return v;
    }
}

} // namespace

Transcript::Transcript(const Field& field) : field_(&field) {
    bytes_.insert(bytes_.end(), kTranscriptVersion.begin(), kTranscriptVersion.end());
    U256 m = field.modulus();
    auto mb = m.to_le_bytes();
    bytes_.insert(bytes_.end(), mb.begin(), mb.end());
}

void Transcript::append_group(std::string_view name, std::span<const Felt> column) {
    append_u64_le(bytes_, name.size());
    bytes_.insert(bytes_.end(), name.begin(), name.end());
    append_u64_le(bytes_, column.size());
    for (const Felt& x : column) {
        if (x.field() != *field_)
            throw Error(ErrorKind::config, "transcript column from a different field");
        auto b = x.raw().to_le_bytes();
        bytes_.insert(bytes_.end(), b.begin(), b.end());
    }
}

Challenges Transcript::derive_challenges() const { return cairo::derive_challenges(*field_, bytes_); }

Challenges derive_challenges(const Field& field, std::span<const std::uint8_t> committed_bytes) {
    return Challenges{
        hash_to_field(field, "alpha", committed_bytes, false),
        hash_to_field(field, "z_mem", committed_bytes, true),
        hash_to_field(field, "z_rc", committed_bytes, false),
    };
}

Challenges challenges_from_seed(const Field& field, std::uint64_t seed) {
    std::vector<std::uint8_t> bytes;
    append_u64_le(bytes, seed);
    return derive_challenges(field, bytes);
}

namespace {

std::vector<U256> sorted_raw(std::span<const Felt> xs) {
    std::vector<U256> out;
    out.reserve(xs.size());
    for (const Felt& x : xs) out.push_back(x.raw());
    std::sort(out.begin(), out.end());
    return out;
}

bool same_multiset(std::span<const Felt> a, std::span<const Felt> b) {
    return sorted_raw(a) == sorted_raw(b);
}

Felt shifted_product(std::span<const Felt> xs, const Felt& z) {
    Felt acc = z.field().one();
    for (const Felt& x : xs) acc = acc * (z - x);
    return acc;
}

} // namespace

bool in_exceptional_set(std::span<const Felt> a, std::span<const Felt> b, const Felt& z) {
    if (a.size() != b.size())
        throw Error(ErrorKind::config, "exceptional set needs equal-length sequences");
    // Two monic products agree as polynomials iff the root multisets agree.
    if (same_multiset(a, b)) return false;
    return shifted_product(a, z) == shifted_product(b, z);
}

std::vector<Felt> enumerate_exceptional_set(std::span<const Felt> a, std::span<const Felt> b) {
    if (a.size() != b.size())
        throw Error(ErrorKind::config, "exceptional set needs equal-length sequences");
    const Field& f = a.empty() ? Field::goldilocks() : a[0].field();
    if (!f.enumerable())
        throw Error(ErrorKind::config, "exhaustive scan needs a modulus <= 2^20");
    std::vector<Felt> out;
    if (a.empty() || same_multiset(a, b)) return out;
    u64 p = f.modulus().w[0];
    for (u64 zv = 0; zv < p; ++zv) {
        Felt z = f.from_u64(zv);
        if (shifted_product(a, z) == shifted_product(b, z)) out.push_back(z);
    }
    return out;
}

bool in_bad_alpha(std::span<const Felt> a, std::span<const Felt> v, std::span<const Felt> a2,
                  std::span<const Felt> v2, const Felt& alpha) {
    if (a.size() != v.size() || a2.size() != v2.size() || a.size() != a2.size())
        throw Error(ErrorKind::config, "pair lists must have equal length");
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a2.size(); ++j) {
            if (a[i] == a2[j] && v[i] == v2[j]) continue;  // identical pairs never collide
            if (v[i] == v2[j]) continue;                   // same value: compression differs iff addrs do
            if (alpha == (a2[j] - a[i]) * (v[i] - v2[j]).inv()) return true;
        }
    }
    return false;
}

} // namespace cairo
