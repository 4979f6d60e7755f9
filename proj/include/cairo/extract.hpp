// cairo-air: Cairo machine semantics and algebraic trace toolkit
// Copyright 2026 The cairo-air Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cairo/constraints.hpp"

namespace cairo {

/// The memory function defined by the sorted access columns: an address in
/// addr_sorted maps to its (unique) value, everything else to 0 (so the
/// empty segment gives the constant-0 function). Duplicate addresses with
/// conflicting values fail defensively with ErrorKind::extraction; the
/// single-valuedness constraint makes any occurrence witness equivalent.
TotalMemory extract_memory(const Field& field, std::span<const Felt> addr_sorted,
                           std::span<const Felt> value_sorted);

/// mem extends m_star: every public address maps to its public value.
bool check_fn_extends(const TotalMemory& mem, const SparseMemory& m_star);

/// Register states read straight off the pc/ap/fp columns.
std::vector<RegisterState> extract_register_trace(const ExecutionColumns& cols);

/// Every access pair (a_i, v_i) satisfies mem(a_i) = v_i. This is the
/// consistency a misleading challenge can silently break even though the
/// segment constraints all pass.
bool check_access_consistency(std::span<const Felt> addr, std::span<const Felt> value,
                              const TotalMemory& mem);

struct ExtractedWitness {
    TotalMemory memory;
    std::vector<RegisterState> exec;
};

struct SemanticFailure {
    std::uint64_t step;
    std::string what;
};

struct SoundnessResult {
    ViolationReport report;                          // nonempty: constraints rejected
    std::optional<SemanticFailure> semantic_failure; // constraints passed, semantics did not
    std::optional<ExtractedWitness> witness;
    bool ok() const { return witness.has_value(); }
};

/// Run the verifier; on an empty report, extract memory and trace and
/// re-validate fn_extends, the five boundary equations, and every step
/// against the machine semantics. A semantic failure on an empty report
/// means the challenges sat in an exceptional set (checkable with the
/// interaction module) or an implementation bug.
SoundnessResult soundness_check(const PublicStatement& stmt, const ExecutionColumns& cols,
                                const MemorySegment& mem_seg, const RcSegment& rc_seg);

} // namespace cairo
