// cairo-air: Cairo machine semantics and algebraic trace toolkit
// Copyright 2026 The cairo-air Authors.
// SPDX-License-Identifier: Apache-2.0
#include "cairo/extract.hpp"

namespace cairo {

TotalMemory extract_memory(const Field& field, std::span<const Felt> addr_sorted,
                           std::span<const Felt> value_sorted) {
    if (addr_sorted.size() != value_sorted.size())
        throw Error(ErrorKind::format, "sorted address/value length mismatch");
    TotalMemory mem(field);
    for (std::size_t i = 0; i < addr_sorted.size(); ++i) {
        Felt existing = mem.at(addr_sorted[i]);
        if (mem.support().count(addr_sorted[i].raw()) && existing != value_sorted[i])
            throw Error(ErrorKind::extraction, "single-valuedness violated at address " +
                                                   addr_sorted[i].to_decimal());
        mem.set(addr_sorted[i], value_sorted[i]);
    }
    return mem;
}

bool check_fn_extends(const TotalMemory& mem, const SparseMemory& m_star) {
    for (const auto& [addr, value] : m_star.cells()) {
        if (mem.at(Felt(mem.field(), addr)) != value) return false;
    }
    return true;
}

std::vector<RegisterState> extract_register_trace(const ExecutionColumns& cols) {
    std::size_t n = cols.steps();
    if (n == 0 || cols.ap.size() != n || cols.fp.size() != n)
        throw Error(ErrorKind::format, "register columns inconsistent");
    std::vector<RegisterState> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(RegisterState{cols.pc[i], cols.ap[i], cols.fp[i]});
    return out;
}

bool check_access_consistency(std::span<const Felt> addr, std::span<const Felt> value,
                              const TotalMemory& mem) {
    if (addr.size() != value.size())
        throw Error(ErrorKind::format, "address/value length mismatch");
    for (std::size_t i = 0; i < addr.size(); ++i)
        if (mem.at(addr[i]) != value[i]) return false;
    return true;
}

SoundnessResult soundness_check(const PublicStatement& stmt, const ExecutionColumns& cols,
                                const MemorySegment& mem_seg, const RcSegment& rc_seg) {
    SoundnessResult out;
    out.report = verify_all(stmt, cols, mem_seg, rc_seg);
    if (!out.report.empty()) return out;

    TotalMemory memory(*cols.field);
    try {
        memory = extract_memory(*cols.field, mem_seg.addr_sorted, mem_seg.value_sorted);
    } catch (const Error& e) {
        out.semantic_failure = SemanticFailure{0, e.what()};
        return out;
    }

    if (!check_fn_extends(memory, stmt.m_star)) {
        out.semantic_failure = SemanticFailure{0, "extracted memory does not extend m_star"};
        return out;
    }

    std::vector<RegisterState> exec = extract_register_trace(cols);
    std::size_t last = exec.size() - 1;
    if (exec[0].pc != stmt.initial_pc || exec[0].ap != stmt.initial_ap ||
        exec[0].fp != stmt.initial_ap || exec[last].pc != stmt.final_pc ||
        exec[last].ap != stmt.final_ap) {
        out.semantic_failure = SemanticFailure{0, "boundary equations do not hold"};
        return out;
    }

    for (std::size_t i = 0; i < last; ++i) {
        if (!next_state_relation(memory, exec[i], exec[i + 1])) {
            out.semantic_failure =
                SemanticFailure{i, "next_state relation fails between steps " +
                                       std::to_string(i) + " and " + std::to_string(i + 1)};
            return out;
        }
    }

    out.witness = ExtractedWitness{std::move(memory), std::move(exec)};
    return out;
}

} // namespace cairo
