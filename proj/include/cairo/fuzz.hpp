// cairo-air: Cairo machine semantics and algebraic trace toolkit
// Copyright 2026 The cairo-air Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cairo/extract.hpp"

namespace cairo {

enum class MutationKind { add_delta, set_zero, set_random };

MutationKind mutation_kind_from_name(const std::string& name);

struct FuzzStats {
    std::uint64_t iterations = 0;
    std::uint64_t constraint_caught = 0;
    std::uint64_t witness_valid = 0;
    std::uint64_t semantic_failure = 0;
    std::vector<std::string> failures;  // diagnostics for any semantic failures
};

/// Seed-fixed single-cell mutation campaign over the committed columns
/// (execution columns, memory access pairs and their sorted counterparts,
/// rc pools). The statement and interaction (product) columns stay fixed:
/// this models a prover cheating after the challenges landed. Columns are
/// restored after every iteration.
FuzzStats run_fuzz_campaign(const PublicStatement& stmt, ExecutionColumns& cols,
                            MemorySegment& mem_seg, RcSegment& rc_seg, std::uint64_t seed,
                            std::uint64_t iterations,
                            MutationKind kind = MutationKind::add_delta);

} // namespace cairo
