// cairo-air: Cairo machine semantics and algebraic trace toolkit
// Copyright 2026 The cairo-air Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "cairo/interaction.hpp"
#include "cairo/isa.hpp"

namespace cairo {

/// Logical AIR columns, one entry per step i in [0, T]. Named groups rather
/// than the physical interleaved layout; serialization keeps the names.
struct ExecutionColumns {
    const Field* field = nullptr;
    std::vector<Felt> pc, ap, fp;
    std::vector<Felt> inst;
    std::vector<Felt> off_dst, off_op0, off_op1;    // biased offsets as field values
    std::array<std::vector<Felt>, 16> f_tilde;      // suffix-sum flag columns
    std::vector<Felt> dst_addr, dst, op0_addr, op0, op1_addr, op1;
    std::vector<Felt> res, mul, t0, t1;             // quadratic auxiliaries

    std::size_t steps() const { return pc.size(); }  // T + 1
};

/// Decodes every fetched instruction and fills all columns. At pc_jnz steps
/// the res column holds dst^{-1} (or 0 when dst = 0), the nonzero witness
/// the taken-branch constraint needs.
ExecutionColumns build_execution_columns(const std::vector<RegisterState>& trace,
                                         const SparseMemory& mem);

/// Unsorted access pairs: 4 per step (inst, dst, op0, op1), then
/// |dom m_star| placeholder (0,0) pairs, then gap fillers making the touched
/// address set one contiguous interval.
struct MemoryAccessPairs {
    std::vector<Felt> addr, value;
    std::size_t placeholder_count = 0;
};

MemoryAccessPairs collect_memory_accesses(const ExecutionColumns& cols, const SparseMemory& mem,
                                          const SparseMemory& m_star);

struct SortedPairs {
    std::vector<Felt> addr, value;
};

/// Multiset of the access pairs with placeholders replaced by the public
/// pairs (a, m_star(a)), sorted by address.
SortedPairs sort_memory_pairs(const MemoryAccessPairs& pairs, const SparseMemory& m_star);

struct MemorySegment {
    std::vector<Felt> addr, value;                // unsorted, committed
    std::vector<Felt> addr_sorted, value_sorted;  // committed
    std::vector<Felt> prod;                       // interaction column
    std::size_t placeholder_count = 0;
};

/// Sorted counterpart plus the cumulative permutation products
/// prod_k = prod_{i<=k} (z - (a_i + alpha v_i)) / (z - (a'_i + alpha v'_i)).
MemorySegment sort_with_products(const MemoryAccessPairs& pairs, const SparseMemory& m_star,
                                 const Felt& alpha, const Felt& z);

struct RcPool {
    std::vector<Felt> pool, pool_sorted;
    std::uint64_t rc_min = 0, rc_max = 0;
};

/// All 3(T+1) off~ values plus the integers missing from [rc_min, rc_max].
RcPool build_rc_pool(const ExecutionColumns& cols);

struct RcSegment {
    std::vector<Felt> pool, pool_sorted;  // committed
    std::vector<Felt> prod;               // interaction column
    std::uint64_t rc_min = 0, rc_max = 0;
};

RcSegment build_rc_segment(const ExecutionColumns& cols, const Felt& z_rc);

/// Everything the verifier sees besides the columns.
struct PublicStatement {
    std::uint64_t trace_length = 0;  // 16 * (T + 1), T + 1 a power of two
    Felt initial_pc, initial_ap, final_pc, final_ap;
    SparseMemory m_star;
    Felt alpha, z_mem, z_rc;
    Felt public_memory_prod;  // prod over dom(m*) of (z_mem - (a + alpha m*(a)))
    std::uint64_t rc_min = 0, rc_max = 0;
};

/// Repeats the final state until the state count is a power of two. The
/// final pc must hold a self-jump (the conventional trailing infinite loop).
std::vector<RegisterState> pad_with_infinite_loop(const std::vector<RegisterState>& trace,
                                                  const SparseMemory& mem);

/// Commit-then-derive: serialize the first-stage columns in a fixed group
/// order. Both prover and verifier derive challenges from these bytes.
Transcript commitment_transcript(const ExecutionColumns& cols, std::span<const Felt> mem_addr,
                                 std::span<const Felt> mem_value,
                                 std::span<const Felt> mem_addr_sorted,
                                 std::span<const Felt> mem_value_sorted,
                                 std::span<const Felt> rc_pool,
                                 std::span<const Felt> rc_pool_sorted);

Challenges derive_column_challenges(const ExecutionColumns& cols, const MemorySegment& mem_seg,
                                    const RcSegment& rc_seg);

struct ProverOutput {
    ExecutionColumns cols;
    MemorySegment memory;
    RcSegment rc;
    PublicStatement statement;
};

/// Full prover pipeline: run, pad, build columns, commit, derive challenges,
/// finish the interaction columns, assemble the statement.
ProverOutput prove_execution(const SparseMemory& mem, const RegisterState& init,
                             std::uint64_t steps, const SparseMemory& m_star);

} // namespace cairo
