// cairo-air: Cairo machine semantics and algebraic trace toolkit
// Copyright 2026 The cairo-air Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cairo/extract.hpp"

namespace cairo {

// All files are JSON; field elements are decimal strings of their canonical
// value (the moduli exceed what floats can carry). Malformed input raises
// ErrorKind::format.

struct ProgramInput {
    const Field* field;
    SparseMemory memory;
    RegisterState initial;  // fp starts equal to ap
};

/// {"modulus": "...", "memory": {"addr": "value", ...},
///  "initial_pc": "...", "initial_ap": "..."}
/// modulus_override: "goldilocks", "cairo", a decimal string, or "" to use
/// the file's modulus (defaulting to goldilocks).
ProgramInput read_program_file(const std::string& path, const std::string& modulus_override = "");

SparseMemory read_memory_map_file(const std::string& path, const Field& field);

nlohmann::json trace_to_json(const std::vector<RegisterState>& trace);
void write_trace_file(const std::string& path, const std::vector<RegisterState>& trace);

struct ColumnsFile {
    ExecutionColumns cols;
    MemorySegment memory;
    RcSegment rc;
};

void write_columns_file(const std::string& path, const ExecutionColumns& cols,
                        const MemorySegment& mem_seg, const RcSegment& rc_seg);
ColumnsFile read_columns_file(const std::string& path);

void write_statement_file(const std::string& path, const PublicStatement& stmt);
PublicStatement read_statement_file(const std::string& path);

nlohmann::json report_to_json(const ViolationReport& report);
void write_report_file(const std::string& path, const ViolationReport& report);

nlohmann::json witness_to_json(const ExtractedWitness& witness);
void write_witness_file(const std::string& path, const ExtractedWitness& witness);

const Field& field_from_spec(const std::string& spec);  // goldilocks | cairo | decimal

} // namespace cairo
