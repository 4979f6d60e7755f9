// cairo-air: Cairo machine semantics and algebraic trace toolkit
// Copyright 2026 The cairo-air Authors.
// SPDX-License-Identifier: Apache-2.0
#include "cairo/trace.hpp"

#include <algorithm>
#include <utility>

namespace cairo {

using u64 = std::uint64_t;

namespace {

constexpr u64 kMaxGapFill = 1ull << 22;

Felt require(const MaybeFelt& x, const char* what) {
    if (!x) throw Error(ErrorKind::undefined_behavior, std::string(what) + " is undefined");
    return *x;
}

} // namespace

ExecutionColumns build_execution_columns(const std::vector<RegisterState>& trace,
                                         const SparseMemory& mem) {
    if (trace.empty()) throw Error(ErrorKind::format, "empty trace");
    const Field& f = mem.field();
    ExecutionColumns c;
    c.field = &f;
    std::size_t n = trace.size();
    auto reserve_all = [&](auto&... v) { (v.reserve(n), ...); };
    reserve_all(c.pc, c.ap, c.fp, c.inst, c.off_dst, c.off_op0, c.off_op1, c.dst_addr, c.dst,
                c.op0_addr, c.op0, c.op1_addr, c.op1, c.res, c.mul, c.t0, c.t1);
    for (auto& col : c.f_tilde) col.reserve(n);

    for (const RegisterState& s : trace) {
        Felt word = mem.at(s.pc);
        Instruction ins = decode_instruction_felt(word);
        OperandBundle b = compute_operands(ins, mem, s);

        c.pc.push_back(s.pc);
        c.ap.push_back(s.ap);
        c.fp.push_back(s.fp);
        c.inst.push_back(word);
        c.off_dst.push_back(f.from_u64(ins.off_dst));
        c.off_op0.push_back(f.from_u64(ins.off_op0));
        c.off_op1.push_back(f.from_u64(ins.off_op1));
        auto ft = tilde_from_flags(f, ins.flags);
        for (std::size_t k = 0; k < 16; ++k) c.f_tilde[k].push_back(ft[k]);

        c.dst_addr.push_back(b.dst_addr);
        c.dst.push_back(b.dst);
        c.op0_addr.push_back(b.op0_addr);
        c.op0.push_back(b.op0);
        c.op1_addr.push_back(require(b.op1_addr, "op1 address"));
        Felt op1 = require(b.op1, "op1");
        c.op1.push_back(op1);

        Felt res = f.zero();
        if (ins.flag(FlagIndex::pc_jnz)) {
            // Nonzero witness: res = dst^{-1} certifies the taken branch.
            res = b.dst.is_zero() ? f.zero() : b.dst.inv();
        } else {
            res = require(b.res, "res");
        }
        c.res.push_back(res);
        c.mul.push_back(b.op0 * op1);

        Felt jnz_flag = f.from_u64(ins.flag(FlagIndex::pc_jnz) ? 1 : 0);
        Felt t0 = jnz_flag * b.dst;
        c.t0.push_back(t0);
        c.t1.push_back(t0 * res);
    }
    return c;
}

MemoryAccessPairs collect_memory_accesses(const ExecutionColumns& cols, const SparseMemory& mem,
                                          const SparseMemory& m_star) {
    const Field& f = *cols.field;
    for (const auto& [addr, value] : m_star.cells()) {
        auto got = mem.get(Felt(f, addr));
        if (!got || *got != value)
            throw Error(ErrorKind::inconsistent_memory,
                        "public memory disagrees with memory at address " + addr.to_decimal());
    }

    MemoryAccessPairs out;
    std::size_t n = cols.steps();
    out.addr.reserve(4 * n);
    out.value.reserve(4 * n);
    for (std::size_t i = 0; i < n; ++i) {
        out.addr.push_back(cols.pc[i]);
        out.value.push_back(cols.inst[i]);
        out.addr.push_back(cols.dst_addr[i]);
        out.value.push_back(cols.dst[i]);
        out.addr.push_back(cols.op0_addr[i]);
        out.value.push_back(cols.op0[i]);
        out.addr.push_back(cols.op1_addr[i]);
        out.value.push_back(cols.op1[i]);
    }

    out.placeholder_count = m_star.size();
    for (std::size_t i = 0; i < out.placeholder_count; ++i) {
        out.addr.push_back(f.zero());
        out.value.push_back(f.zero());
    }

    // Gap fillers: the accessed addresses plus dom(m*) must form one
    // contiguous integer interval.
    std::vector<U256> touched;
    touched.reserve(out.addr.size());
    for (std::size_t i = 0; i < 4 * n; ++i) touched.push_back(out.addr[i].raw());
    for (const auto& [addr, value] : m_star.cells()) touched.push_back(addr);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

    if (!touched.empty()) {
        U256 span = u256_sub(touched.back(), touched.front());
        if (!span.fits_u64() || span.w[0] >= kMaxGapFill)
            throw Error(ErrorKind::range, "accessed address span too wide for gap filling");
        U256 one = U256::from_u64(1);
        std::size_t idx = 0;
        for (U256 a = touched.front(); u256_cmp(a, touched.back()) <= 0; a = u256_add(a, one)) {
            if (idx < touched.size() && touched[idx] == a) {
                ++idx;
                continue;
            }
            Felt fa(f, a);
            auto v = mem.get(fa);
            out.addr.push_back(fa);
            out.value.push_back(v ? *v : f.zero());
        }
    }
    return out;
}

SortedPairs sort_memory_pairs(const MemoryAccessPairs& pairs, const SparseMemory& m_star) {
    if (pairs.addr.size() != pairs.value.size())
        throw Error(ErrorKind::format, "address/value column length mismatch");
    if (pairs.addr.size() < pairs.placeholder_count)
        throw Error(ErrorKind::format, "placeholder count exceeds pair count");
    const Field& f = pairs.addr.empty() ? Field::goldilocks() : pairs.addr[0].field();

    std::vector<std::pair<U256, U256>> raw;
    raw.reserve(pairs.addr.size());
    // Drop placeholder_count copies of (0,0) from the multiset and add the
    // public pairs instead; which (0,0) occurrences get dropped is irrelevant.
    std::size_t replaced = 0;
    for (std::size_t i = 0; i < pairs.addr.size(); ++i) {
        bool is_placeholder = replaced < pairs.placeholder_count &&
                              pairs.addr[i].is_zero() && pairs.value[i].is_zero();
        if (is_placeholder) {
            ++replaced;
            continue;
        }
        raw.emplace_back(pairs.addr[i].raw(), pairs.value[i].raw());
    }
    if (replaced != pairs.placeholder_count)
        throw Error(ErrorKind::format, "placeholder pairs missing from access list");
    for (const auto& [addr, value] : m_star.cells()) raw.emplace_back(addr, value.raw());
    if (raw.size() != pairs.addr.size())
        throw Error(ErrorKind::format, "public pair count differs from placeholder count");

    std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return x.second < y.second;
    });

    SortedPairs out;
    out.addr.reserve(raw.size());
    out.value.reserve(raw.size());
    for (const auto& [a, v] : raw) {
        out.addr.push_back(Felt(f, a));
        out.value.push_back(Felt(f, v));
    }
    return out;
}

namespace {

// prod_k = prod_{i<=k} (z - num_i) / (z - den_i), batched inversion.
std::vector<Felt> cumulative_ratio(const std::vector<Felt>& num, const std::vector<Felt>& den,
                                   const Felt& z) {
    std::vector<Felt> dens;
    dens.reserve(den.size());
    for (const Felt& d : den) {
        Felt shifted = z - d;
        if (shifted.is_zero())
            throw Error(ErrorKind::degenerate_challenge,
                        "challenge collides with committed value " + d.to_decimal());
        dens.push_back(shifted);
    }
    batch_inverse(dens);
    std::vector<Felt> prod;
    prod.reserve(num.size());
    Felt acc = z.field().one();
    for (std::size_t i = 0; i < num.size(); ++i) {
        acc = acc * (z - num[i]) * dens[i];
        prod.push_back(acc);
    }
    return prod;
}

} // namespace

MemorySegment sort_with_products(const MemoryAccessPairs& pairs, const SparseMemory& m_star,
                                 const Felt& alpha, const Felt& z) {
    SortedPairs sorted = sort_memory_pairs(pairs, m_star);
    for (std::size_t i = 0; i + 1 < sorted.addr.size(); ++i) {
        if (sorted.addr[i] == sorted.addr[i + 1] && sorted.value[i] != sorted.value[i + 1])
            throw Error(ErrorKind::inconsistent_memory,
                        "conflicting values at address " + sorted.addr[i].to_decimal());
    }

    std::vector<Felt> num, den;
    num.reserve(pairs.addr.size());
    den.reserve(pairs.addr.size());
    for (std::size_t i = 0; i < pairs.addr.size(); ++i)
        num.push_back(pairs.addr[i] + alpha * pairs.value[i]);
    for (std::size_t i = 0; i < sorted.addr.size(); ++i)
        den.push_back(sorted.addr[i] + alpha * sorted.value[i]);

    MemorySegment seg;
    seg.addr = pairs.addr;
    seg.value = pairs.value;
    seg.addr_sorted = std::move(sorted.addr);
    seg.value_sorted = std::move(sorted.value);
    seg.prod = cumulative_ratio(num, den, z);
    seg.placeholder_count = pairs.placeholder_count;
    return seg;
}

RcPool build_rc_pool(const ExecutionColumns& cols) {
    const Field& f = *cols.field;
    RcPool out;
    std::size_t n = cols.steps();
    out.pool.reserve(3 * n);
    u64 mn = ~0ull, mx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (const std::vector<Felt>* col : {&cols.off_dst, &cols.off_op0, &cols.off_op1}) {
            const Felt& v = (*col)[i];
            if (!v.raw().fits_u64() || v.raw().w[0] >= (1u << 16))
                throw Error(ErrorKind::range, "offset value outside [0, 2^16): " + v.to_decimal());
            u64 x = v.raw().w[0];
            mn = std::min(mn, x);
            mx = std::max(mx, x);
            out.pool.push_back(v);
        }
    }
    if (out.pool.empty()) throw Error(ErrorKind::format, "empty trace has no rc pool");
    out.rc_min = mn;
    out.rc_max = mx;

    // Pad with the integers missing from [rc_min, rc_max].
    std::vector<bool> seen(mx - mn + 1, false);
    for (const Felt& v : out.pool) seen[v.raw().w[0] - mn] = true;
    for (u64 x = mn; x <= mx; ++x)
        if (!seen[x - mn]) out.pool.push_back(f.from_u64(x));

    out.pool_sorted = out.pool;
    std::sort(out.pool_sorted.begin(), out.pool_sorted.end(),
              [](const Felt& a, const Felt& b) { return a.raw() < b.raw(); });
    return out;
}

RcSegment build_rc_segment(const ExecutionColumns& cols, const Felt& z_rc) {
    RcPool pool = build_rc_pool(cols);
    RcSegment seg;
    seg.prod = cumulative_ratio(pool.pool, pool.pool_sorted, z_rc);
    seg.pool = std::move(pool.pool);
    seg.pool_sorted = std::move(pool.pool_sorted);
    seg.rc_min = pool.rc_min;
    seg.rc_max = pool.rc_max;
    return seg;
}

std::vector<RegisterState> pad_with_infinite_loop(const std::vector<RegisterState>& trace,
                                                  const SparseMemory& mem) {
    if (trace.empty()) throw Error(ErrorKind::format, "empty trace");
    std::size_t n = trace.size();
    std::size_t target = 1;
    while (target < n) target <<= 1;
    if (target == n) return trace;
    if (!next_state_relation(mem, trace.back(), trace.back()))
        throw Error(ErrorKind::config,
                    "pad_with_infinite_loop requires final_pc to hold a self-jump");
    std::vector<RegisterState> out = trace;
    out.reserve(target);
    while (out.size() < target) out.push_back(trace.back());
    return out;
}

Transcript commitment_transcript(const ExecutionColumns& cols, std::span<const Felt> mem_addr,
                                 std::span<const Felt> mem_value,
                                 std::span<const Felt> mem_addr_sorted,
                                 std::span<const Felt> mem_value_sorted,
                                 std::span<const Felt> rc_pool,
                                 std::span<const Felt> rc_pool_sorted) {
    Transcript t(*cols.field);
    t.append_group("pc", cols.pc);
    t.append_group("ap", cols.ap);
    t.append_group("fp", cols.fp);
    t.append_group("inst", cols.inst);
    t.append_group("off_dst", cols.off_dst);
    t.append_group("off_op0", cols.off_op0);
    t.append_group("off_op1", cols.off_op1);
    for (std::size_t k = 0; k < 16; ++k)
        t.append_group("f_tilde" + std::to_string(k), cols.f_tilde[k]);
    t.append_group("dst_addr", cols.dst_addr);
    t.append_group("dst", cols.dst);
    t.append_group("op0_addr", cols.op0_addr);
    t.append_group("op0", cols.op0);
    t.append_group("op1_addr", cols.op1_addr);
    t.append_group("op1", cols.op1);
    t.append_group("res", cols.res);
    t.append_group("mul", cols.mul);
    t.append_group("t0", cols.t0);
    t.append_group("t1", cols.t1);
    t.append_group("mem_addr", mem_addr);
    t.append_group("mem_value", mem_value);
    t.append_group("mem_addr_sorted", mem_addr_sorted);
    t.append_group("mem_value_sorted", mem_value_sorted);
    t.append_group("rc_pool", rc_pool);
    t.append_group("rc_pool_sorted", rc_pool_sorted);
    return t;
}

Challenges derive_column_challenges(const ExecutionColumns& cols, const MemorySegment& mem_seg,
                                    const RcSegment& rc_seg) {
    return commitment_transcript(cols, mem_seg.addr, mem_seg.value, mem_seg.addr_sorted,
                                 mem_seg.value_sorted, rc_seg.pool, rc_seg.pool_sorted)
        .derive_challenges();
}

ProverOutput prove_execution(const SparseMemory& mem, const RegisterState& init,
                             std::uint64_t steps, const SparseMemory& m_star) {
    if (init.fp != init.ap)
        throw Error(ErrorKind::config, "initial fp must equal initial ap");
    std::vector<RegisterState> trace = run_program(mem, init, steps);
    trace = pad_with_infinite_loop(trace, mem);

    ProverOutput out{build_execution_columns(trace, mem),
                     MemorySegment{},
                     RcSegment{},
                     PublicStatement{0,
                                     init.pc,
                                     init.ap,
                                     trace.back().pc,
                                     trace.back().ap,
                                     m_star,
                                     mem.field().zero(),
                                     mem.field().zero(),
                                     mem.field().zero(),
                                     mem.field().zero(),
                                     0,
                                     0}};

    MemoryAccessPairs pairs = collect_memory_accesses(out.cols, mem, m_star);
    SortedPairs sorted = sort_memory_pairs(pairs, m_star);
    RcPool rc_pool = build_rc_pool(out.cols);

    Transcript transcript =
        commitment_transcript(out.cols, pairs.addr, pairs.value, sorted.addr, sorted.value,
                              rc_pool.pool, rc_pool.pool_sorted);
    Challenges ch = transcript.derive_challenges();

    out.memory = sort_with_products(pairs, m_star, ch.alpha, ch.z_mem);
    out.rc = build_rc_segment(out.cols, ch.z_rc);

    Felt pub_prod = mem.field().one();
    for (const auto& [addr, value] : m_star.cells())
        pub_prod = pub_prod * (ch.z_mem - (Felt(mem.field(), addr) + ch.alpha * value));

    out.statement.trace_length = 16 * (u64)trace.size();
    out.statement.alpha = ch.alpha;
    out.statement.z_mem = ch.z_mem;
    out.statement.z_rc = ch.z_rc;
    out.statement.public_memory_prod = pub_prod;
    out.statement.rc_min = out.rc.rc_min;
    out.statement.rc_max = out.rc.rc_max;
    return out;
}

} // namespace cairo
