// cairo-air: Cairo machine semantics and algebraic trace toolkit
// Copyright 2026 The cairo-air Authors.
// SPDX-License-Identifier: Apache-2.0
#include "cairo/fuzz.hpp"

#include <random>

namespace cairo {

MutationKind mutation_kind_from_name(const std::string& name) {
    if (name == "delta") return MutationKind::add_delta;
    if (name == "zero") return MutationKind::set_zero;
    if (name == "random") return MutationKind::set_random;
    throw Error(ErrorKind::format, "unknown mutation kind: " + name);
}

namespace {

std::vector<Felt*> committed_cells(ExecutionColumns& cols, MemorySegment& mem_seg,
                                   RcSegment& rc_seg) {
    std::vector<Felt*> cells;
    auto grab = [&cells](std::vector<Felt>& col) {
        for (Felt& x : col) cells.push_back(&x);
    };
    grab(cols.pc);
    grab(cols.ap);
    grab(cols.fp);
    grab(cols.inst);
    grab(cols.off_dst);
    grab(cols.off_op0);
    grab(cols.off_op1);
    for (auto& col : cols.f_tilde) grab(col);
    grab(cols.dst_addr);
    grab(cols.dst);
    grab(cols.op0_addr);
    grab(cols.op0);
    grab(cols.op1_addr);
    grab(cols.op1);
    grab(cols.res);
    grab(cols.mul);
    grab(cols.t0);
    grab(cols.t1);
    grab(mem_seg.addr);
    grab(mem_seg.value);
    grab(mem_seg.addr_sorted);
    grab(mem_seg.value_sorted);
    grab(rc_seg.pool);
    grab(rc_seg.pool_sorted);
    return cells;
}

Felt random_felt(const Field& f, std::mt19937_64& rng) {
    U256 v{{rng(), rng(), rng(), rng()}};
    return f.from_u256(v);
}

} // namespace

FuzzStats run_fuzz_campaign(const PublicStatement& stmt, ExecutionColumns& cols,
                            MemorySegment& mem_seg, RcSegment& rc_seg, std::uint64_t seed,
                            std::uint64_t iterations, MutationKind kind) {
    std::vector<Felt*> cells = committed_cells(cols, mem_seg, rc_seg);
    if (cells.empty()) throw Error(ErrorKind::format, "no committed cells to mutate");

    std::mt19937_64 rng(seed);
    FuzzStats stats;
    stats.iterations = iterations;
    for (std::uint64_t it = 0; it < iterations; ++it) {
        Felt* cell = cells[rng() % cells.size()];
        Felt original = *cell;
        Felt mutated = original;
        switch (kind) {
            case MutationKind::add_delta: {
                Felt delta = random_felt(cell->field(), rng);
                while (delta.is_zero()) delta = random_felt(cell->field(), rng);
                mutated = original + delta;
                break;
            }
            case MutationKind::set_zero: {
                if (original.is_zero()) {
                    Felt delta = random_felt(cell->field(), rng);
                    while (delta.is_zero()) delta = random_felt(cell->field(), rng);
                    mutated = delta;  // already zero: flip to nonzero instead
                } else {
                    mutated = cell->field().zero();
                }
                break;
            }
            case MutationKind::set_random: {
                mutated = random_felt(cell->field(), rng);
                while (mutated == original) mutated = random_felt(cell->field(), rng);
                break;
            }
        }
        *cell = mutated;

        SoundnessResult result = soundness_check(stmt, cols, mem_seg, rc_seg);
        if (!result.report.empty()) {
            ++stats.constraint_caught;
        } else if (result.ok()) {
            ++stats.witness_valid;
        } else {
            ++stats.semantic_failure;
            stats.failures.push_back("iteration " + std::to_string(it) + ": " +
                                     result.semantic_failure->what);
        }
        *cell = original;
    }
    return stats;
}

} // namespace cairo
