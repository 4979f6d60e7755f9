// cairo-air: Cairo machine semantics and algebraic trace toolkit
// Copyright 2026 The cairo-air Authors.
// SPDX-License-Identifier: Apache-2.0
#include "cairo/io.hpp"

#include <fstream>

namespace cairo {

using nlohmann::json;

namespace {

constexpr const char* kColumnsFormat = "cairo-air/columns/v1";
constexpr const char* kStatementFormat = "cairo-air/statement/v1";

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::format, "cannot open " + path);
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::format, path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::format, "cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

Felt parse_felt(const Field& f, const json& j, const std::string& what) {
    if (!j.is_string())
        throw Error(ErrorKind::format, what + ": field elements must be decimal strings");
    U256 v = U256::from_decimal(j.get<std::string>());
    if (u256_cmp(v, f.modulus()) >= 0)
        throw Error(ErrorKind::format, what + ": value not canonical for the field");
    return Felt(f, v);
}

std::vector<Felt> parse_column(const Field& f, const json& j, const std::string& what) {
    if (!j.is_array()) throw Error(ErrorKind::format, what + ": expected an array");
    std::vector<Felt> out;
    out.reserve(j.size());
    for (const auto& x : j) out.push_back(parse_felt(f, x, what));
    return out;
}

json column_to_json(const std::vector<Felt>& col) {
    json out = json::array();
    for (const Felt& x : col) out.push_back(x.to_decimal());
    return out;
}

SparseMemory parse_memory_map(const Field& f, const json& j, const std::string& what) {
    if (!j.is_object()) throw Error(ErrorKind::format, what + ": expected an address map");
    SparseMemory mem(f);
    for (const auto& [key, value] : j.items()) {
        U256 addr = U256::from_decimal(key);
        if (u256_cmp(addr, f.modulus()) >= 0)
            throw Error(ErrorKind::format, what + ": address not canonical for the field");
        mem.set(Felt(f, addr), parse_felt(f, value, what));
    }
    return mem;
}

json memory_map_to_json(const SparseMemory& mem) {
    json out = json::object();
    for (const auto& [addr, value] : mem.cells()) out[addr.to_decimal()] = value.to_decimal();
    return out;
}

const json& at(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end())
        throw Error(ErrorKind::format, where + ": missing key \"" + key + "\"");
    return *it;
}

} // namespace

const Field& field_from_spec(const std::string& spec) {
    if (spec == "goldilocks" || spec.empty()) return Field::goldilocks();
    if (spec == "cairo") return Field::cairo_prime();
    try {
        return Field::intern(U256::from_decimal(spec));
    } catch (const Error& e) {
        // a bad modulus in an input is malformed input, whatever the cause
        throw Error(ErrorKind::format, e.what());
    }
}

ProgramInput read_program_file(const std::string& path, const std::string& modulus_override) {
    json j = read_json_file(path);
    std::string modulus_spec = modulus_override;
    if (j.contains("modulus")) {
        std::string file_spec = at(j, "modulus", path).get<std::string>();
        if (!modulus_override.empty() && modulus_override != file_spec &&
            field_from_spec(modulus_override) != field_from_spec(file_spec))
            throw Error(ErrorKind::format, path + ": --modulus disagrees with the file");
        modulus_spec = file_spec;
    }
    const Field& f = field_from_spec(modulus_spec);
    ProgramInput out{&f, parse_memory_map(f, at(j, "memory", path), path),
                     RegisterState{f.zero(), f.zero(), f.zero()}};
    Felt pc = parse_felt(f, at(j, "initial_pc", path), path);
    Felt ap = parse_felt(f, at(j, "initial_ap", path), path);
    out.initial = RegisterState{pc, ap, ap};
    return out;
}

SparseMemory read_memory_map_file(const std::string& path, const Field& field) {
    return parse_memory_map(field, read_json_file(path), path);
}

json trace_to_json(const std::vector<RegisterState>& trace) {
    json out = json::array();
    for (const RegisterState& s : trace)
        out.push_back(json{{"pc", s.pc.to_decimal()},
                           {"ap", s.ap.to_decimal()},
                           {"fp", s.fp.to_decimal()}});
    return out;
}

void write_trace_file(const std::string& path, const std::vector<RegisterState>& trace) {
    write_json_file(path, trace_to_json(trace));
}

void write_columns_file(const std::string& path, const ExecutionColumns& cols,
                        const MemorySegment& mem_seg, const RcSegment& rc_seg) {
    json exec = json::object();
    exec["pc"] = column_to_json(cols.pc);
    exec["ap"] = column_to_json(cols.ap);
    exec["fp"] = column_to_json(cols.fp);
    exec["inst"] = column_to_json(cols.inst);
    exec["off_dst"] = column_to_json(cols.off_dst);
    exec["off_op0"] = column_to_json(cols.off_op0);
    exec["off_op1"] = column_to_json(cols.off_op1);
    json ftilde = json::array();
    for (const auto& col : cols.f_tilde) ftilde.push_back(column_to_json(col));
    exec["f_tilde"] = ftilde;
    exec["dst_addr"] = column_to_json(cols.dst_addr);
    exec["dst"] = column_to_json(cols.dst);
    exec["op0_addr"] = column_to_json(cols.op0_addr);
    exec["op0"] = column_to_json(cols.op0);
    exec["op1_addr"] = column_to_json(cols.op1_addr);
    exec["op1"] = column_to_json(cols.op1);
    exec["res"] = column_to_json(cols.res);
    exec["mul"] = column_to_json(cols.mul);
    exec["t0"] = column_to_json(cols.t0);
    exec["t1"] = column_to_json(cols.t1);

    json j{
        {"format", kColumnsFormat},
        {"modulus", cols.field->modulus().to_decimal()},
        {"trace_length", 16 * cols.steps()},
        {"execution", std::move(exec)},
        {"memory",
         {{"addr", column_to_json(mem_seg.addr)},
          {"value", column_to_json(mem_seg.value)},
          {"addr_sorted", column_to_json(mem_seg.addr_sorted)},
          {"value_sorted", column_to_json(mem_seg.value_sorted)},
          {"prod", column_to_json(mem_seg.prod)},
          {"placeholder_count", mem_seg.placeholder_count}}},
        {"rc16",
         {{"pool", column_to_json(rc_seg.pool)},
          {"pool_sorted", column_to_json(rc_seg.pool_sorted)},
          {"prod", column_to_json(rc_seg.prod)},
          {"rc_min", rc_seg.rc_min},
          {"rc_max", rc_seg.rc_max}}},
    };
    write_json_file(path, j);
}

ColumnsFile read_columns_file(const std::string& path) {
    json j = read_json_file(path);
    if (at(j, "format", path).get<std::string>() != kColumnsFormat)
        throw Error(ErrorKind::format, path + ": unsupported columns format");
    const Field& f = field_from_spec(at(j, "modulus", path).get<std::string>());

    const json& exec = at(j, "execution", path);
    ColumnsFile out{ExecutionColumns{}, MemorySegment{}, RcSegment{}};
    ExecutionColumns& c = out.cols;
    c.field = &f;
    c.pc = parse_column(f, at(exec, "pc", path), "pc");
    c.ap = parse_column(f, at(exec, "ap", path), "ap");
    c.fp = parse_column(f, at(exec, "fp", path), "fp");
    c.inst = parse_column(f, at(exec, "inst", path), "inst");
    c.off_dst = parse_column(f, at(exec, "off_dst", path), "off_dst");
    c.off_op0 = parse_column(f, at(exec, "off_op0", path), "off_op0");
    c.off_op1 = parse_column(f, at(exec, "off_op1", path), "off_op1");
    const json& ftilde = at(exec, "f_tilde", path);
    if (!ftilde.is_array() || ftilde.size() != 16)
        throw Error(ErrorKind::format, path + ": f_tilde must hold 16 columns");
    for (std::size_t k = 0; k < 16; ++k)
        c.f_tilde[k] = parse_column(f, ftilde[k], "f_tilde");
    c.dst_addr = parse_column(f, at(exec, "dst_addr", path), "dst_addr");
    c.dst = parse_column(f, at(exec, "dst", path), "dst");
    c.op0_addr = parse_column(f, at(exec, "op0_addr", path), "op0_addr");
    c.op0 = parse_column(f, at(exec, "op0", path), "op0");
    c.op1_addr = parse_column(f, at(exec, "op1_addr", path), "op1_addr");
    c.op1 = parse_column(f, at(exec, "op1", path), "op1");
    c.res = parse_column(f, at(exec, "res", path), "res");
    c.mul = parse_column(f, at(exec, "mul", path), "mul");
    c.t0 = parse_column(f, at(exec, "t0", path), "t0");
    c.t1 = parse_column(f, at(exec, "t1", path), "t1");

    const json& mem = at(j, "memory", path);
    out.memory.addr = parse_column(f, at(mem, "addr", path), "memory.addr");
    out.memory.value = parse_column(f, at(mem, "value", path), "memory.value");
    out.memory.addr_sorted = parse_column(f, at(mem, "addr_sorted", path), "memory.addr_sorted");
    out.memory.value_sorted =
        parse_column(f, at(mem, "value_sorted", path), "memory.value_sorted");
    out.memory.prod = parse_column(f, at(mem, "prod", path), "memory.prod");
    out.memory.placeholder_count = at(mem, "placeholder_count", path).get<std::size_t>();

    const json& rc = at(j, "rc16", path);
    out.rc.pool = parse_column(f, at(rc, "pool", path), "rc16.pool");
    out.rc.pool_sorted = parse_column(f, at(rc, "pool_sorted", path), "rc16.pool_sorted");
    out.rc.prod = parse_column(f, at(rc, "prod", path), "rc16.prod");
    out.rc.rc_min = at(rc, "rc_min", path).get<std::uint64_t>();
    out.rc.rc_max = at(rc, "rc_max", path).get<std::uint64_t>();
    return out;
}

void write_statement_file(const std::string& path, const PublicStatement& stmt) {
    const Field& f = stmt.alpha.field();
    json j{
        {"format", kStatementFormat},
        {"modulus", f.modulus().to_decimal()},
        {"trace_length", stmt.trace_length},
        {"initial_pc", stmt.initial_pc.to_decimal()},
        {"initial_ap", stmt.initial_ap.to_decimal()},
        {"final_pc", stmt.final_pc.to_decimal()},
        {"final_ap", stmt.final_ap.to_decimal()},
        {"m_star", memory_map_to_json(stmt.m_star)},
        {"alpha", stmt.alpha.to_decimal()},
        {"z_mem", stmt.z_mem.to_decimal()},
        {"z_rc", stmt.z_rc.to_decimal()},
        {"public_memory_prod", stmt.public_memory_prod.to_decimal()},
        {"rc_min", stmt.rc_min},
        {"rc_max", stmt.rc_max},
    };
    write_json_file(path, j);
}

PublicStatement read_statement_file(const std::string& path) {
    json j = read_json_file(path);
    if (at(j, "format", path).get<std::string>() != kStatementFormat)
        throw Error(ErrorKind::format, path + ": unsupported statement format");
    const Field& f = field_from_spec(at(j, "modulus", path).get<std::string>());
    return PublicStatement{
        at(j, "trace_length", path).get<std::uint64_t>(),
        parse_felt(f, at(j, "initial_pc", path), "initial_pc"),
        parse_felt(f, at(j, "initial_ap", path), "initial_ap"),
        parse_felt(f, at(j, "final_pc", path), "final_pc"),
        parse_felt(f, at(j, "final_ap", path), "final_ap"),
        parse_memory_map(f, at(j, "m_star", path), "m_star"),
        parse_felt(f, at(j, "alpha", path), "alpha"),
        parse_felt(f, at(j, "z_mem", path), "z_mem"),
        parse_felt(f, at(j, "z_rc", path), "z_rc"),
        parse_felt(f, at(j, "public_memory_prod", path), "public_memory_prod"),
        at(j, "rc_min", path).get<std::uint64_t>(),
        at(j, "rc_max", path).get<std::uint64_t>(),
    };
}

json report_to_json(const ViolationReport& report) {
    json items = json::array();
    for (const Violation& v : report.violations)
        items.push_back(json{{"group", group_name(v.id.group)},
                             {"name", v.id.name},
                             {"row", v.id.row},
                             {"lhs", v.lhs.to_decimal()}});
    return json{{"violations", std::move(items)}};
}

void write_report_file(const std::string& path, const ViolationReport& report) {
    write_json_file(path, report_to_json(report));
}

json witness_to_json(const ExtractedWitness& witness) {
    json mem = json::object();
    for (const auto& [addr, value] : witness.memory.support())
        mem[addr.to_decimal()] = value.to_decimal();
    return json{{"memory", std::move(mem)}, {"exec", trace_to_json(witness.exec)}};
}

void write_witness_file(const std::string& path, const ExtractedWitness& witness) {
    write_json_file(path, witness_to_json(witness));
}

} // namespace cairo
