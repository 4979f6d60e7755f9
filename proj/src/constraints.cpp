// cairo-air: Cairo machine semantics and algebraic trace toolkit
// Copyright 2026 The cairo-air Authors.
// SPDX-License-Identifier: Apache-2.0
#include "cairo/constraints.hpp"

#include <tuple>

namespace cairo {

using u64 = std::uint64_t;

const char* group_name(Group g) {
    switch (g) {
        case Group::cpu_decode: return "cpu_decode";
        case Group::cpu_operands: return "cpu_operands";
        case Group::cpu_update_registers: return "cpu_update_registers";
        case Group::cpu_opcodes: return "cpu_opcodes";
        case Group::memory: return "memory";
        case Group::rc16: return "rc16";
        case Group::public_memory: return "public_memory";
        case Group::initial_and_final: return "initial_and_final";
    }
    return "unknown";
}

Group group_from_name(const std::string& name) {
    for (Group g : {Group::cpu_decode, Group::cpu_operands, Group::cpu_update_registers,
                    Group::cpu_opcodes, Group::memory, Group::rc16, Group::public_memory,
                    Group::initial_and_final}) {
        if (name == group_name(g)) return g;
    }
    throw Error(ErrorKind::format, "unknown constraint group: " + name);
}

void ViolationReport::append(ViolationReport other) {
    violations.insert(violations.end(), std::make_move_iterator(other.violations.begin()),
                      std::make_move_iterator(other.violations.end()));
}

void ViolationReport::sort() {
    std::sort(violations.begin(), violations.end(), [](const Violation& a, const Violation& b) {
        return std::make_tuple(static_cast<int>(a.id.group), std::string_view(a.id.name),
                               a.id.row) < std::make_tuple(static_cast<int>(b.id.group),
                                                           std::string_view(b.id.name), b.id.row);
    });
}

bool ViolationReport::has(Group g, std::string_view name) const {
    for (const Violation& v : violations)
        if (v.id.group == g && v.id.name == name) return true;
    return false;
}

namespace {

struct Limits {
    std::size_t max = 0;
    bool full(const ViolationReport& r) const { return max != 0 && r.size() >= max; }
};

void check_columns_consistent(const ExecutionColumns& cols) {
    std::size_t n = cols.steps();
    if (n == 0) throw Error(ErrorKind::format, "execution columns are empty");
    auto want = [n](const std::vector<Felt>& v, const char* what) {
        if (v.size() != n)
            throw Error(ErrorKind::format, std::string("column length mismatch: ") + what);
    };
    want(cols.ap, "ap");
    want(cols.fp, "fp");
    want(cols.inst, "inst");
    want(cols.off_dst, "off_dst");
    want(cols.off_op0, "off_op0");
    want(cols.off_op1, "off_op1");
    for (const auto& col : cols.f_tilde) want(col, "f_tilde");
    want(cols.dst_addr, "dst_addr");
    want(cols.dst, "dst");
    want(cols.op0_addr, "op0_addr");
    want(cols.op0, "op0");
    want(cols.op1_addr, "op1_addr");
    want(cols.op1, "op1");
    want(cols.res, "res");
    want(cols.mul, "mul");
    want(cols.t0, "t0");
    want(cols.t1, "t1");
}

void check_memory_consistent(const MemorySegment& m) {
    std::size_t n = m.addr.size();
    if (m.value.size() != n || m.addr_sorted.size() != n || m.value_sorted.size() != n ||
        m.prod.size() != n)
        throw Error(ErrorKind::format, "memory segment column length mismatch");
    if (n == 0) throw Error(ErrorKind::format, "memory segment is empty");
}

void check_rc_consistent(const RcSegment& r) {
    std::size_t n = r.pool.size();
    if (r.pool_sorted.size() != n || r.prod.size() != n)
        throw Error(ErrorKind::format, "rc segment column length mismatch");
    if (n == 0) throw Error(ErrorKind::format, "rc segment is empty");
}

StepWindow<Felt> make_step_window(const ExecutionColumns& cols, const MemorySegment* mem_seg,
                                  const RcSegment* rc_seg, std::size_t i, bool has_next) {
    const Field& f = *cols.field;
    Felt zero = f.zero();
    auto acc = [&](std::size_t j, bool value) {
        if (!mem_seg) return zero;
        return value ? mem_seg->value[4 * i + j] : mem_seg->addr[4 * i + j];
    };
    auto rc_at = [&](std::size_t j) { return rc_seg ? rc_seg->pool[3 * i + j] : zero; };
    return StepWindow<Felt>{
        cols.pc[i], cols.ap[i], cols.fp[i], cols.inst[i],
        cols.off_dst[i], cols.off_op0[i], cols.off_op1[i],
        {cols.f_tilde[0][i], cols.f_tilde[1][i], cols.f_tilde[2][i], cols.f_tilde[3][i],
         cols.f_tilde[4][i], cols.f_tilde[5][i], cols.f_tilde[6][i], cols.f_tilde[7][i],
         cols.f_tilde[8][i], cols.f_tilde[9][i], cols.f_tilde[10][i], cols.f_tilde[11][i],
         cols.f_tilde[12][i], cols.f_tilde[13][i], cols.f_tilde[14][i], cols.f_tilde[15][i]},
        cols.dst_addr[i], cols.dst[i], cols.op0_addr[i], cols.op0[i],
        cols.op1_addr[i], cols.op1[i],
        cols.res[i], cols.mul[i], cols.t0[i], cols.t1[i],
        {acc(0, false), acc(1, false), acc(2, false), acc(3, false)},
        {acc(0, true), acc(1, true), acc(2, true), acc(3, true)},
        {rc_at(0), rc_at(1), rc_at(2)},
        has_next ? cols.pc[i + 1] : zero,
        has_next ? cols.ap[i + 1] : zero,
        has_next ? cols.fp[i + 1] : zero,
        f.one(), f.from_u64(2), f.from_u64(1u << 15), f.from_u64(1ull << 16),
        f.from_u64(1ull << 32), f.from_u64(1ull << 48),
    };
}

ViolationReport eval_step_group(Group g, const ExecutionColumns& cols,
                                const MemorySegment* mem_seg, const RcSegment* rc_seg,
                                Limits lim = {}) {
    check_columns_consistent(cols);
    std::size_t n = cols.steps();
    if (mem_seg && mem_seg->addr.size() < 4 * n)
        throw Error(ErrorKind::format, "memory segment shorter than 4 pairs per step");
    if (rc_seg && rc_seg->pool.size() < 3 * n)
        throw Error(ErrorKind::format, "rc pool shorter than 3 entries per step");
    ViolationReport out;
    for (std::size_t i = 0; i < n; ++i) {
        bool has_next = i + 1 < n;
        StepWindow<Felt> w = make_step_window(cols, mem_seg, rc_seg, i, has_next);
        for (const auto& c : step_constraints<Felt>()) {
            if (c.group != g) continue;
            if (c.needs_next && !has_next) continue;
            Felt lhs = c.eval(w);
            if (!lhs.is_zero()) {
                out.violations.push_back({{g, c.name, i}, lhs});
                if (lim.full(out)) return out;
            }
        }
    }
    return out;
}

} // namespace

ViolationReport eval_cpu_decode(const ExecutionColumns& cols) {
    return eval_step_group(Group::cpu_decode, cols, nullptr, nullptr);
}

ViolationReport eval_cpu_operands(const ExecutionColumns& cols, const MemorySegment& mem_seg) {
    check_memory_consistent(mem_seg);
    return eval_step_group(Group::cpu_operands, cols, &mem_seg, nullptr);
}

ViolationReport eval_cpu_update_registers(const ExecutionColumns& cols,
                                          const PublicStatement& stmt) {
    (void)stmt;
    return eval_step_group(Group::cpu_update_registers, cols, nullptr, nullptr);
}

ViolationReport eval_cpu_opcodes(const ExecutionColumns& cols) {
    return eval_step_group(Group::cpu_opcodes, cols, nullptr, nullptr);
}

namespace {

ViolationReport eval_memory_impl(const MemorySegment& m, const PublicStatement& stmt,
                                 Limits lim = {}) {
    check_memory_consistent(m);
    const Field& f = stmt.z_mem.field();
    ViolationReport out;
    std::size_t n = m.addr.size();

    MemBoundaryWindow<Felt> bw{m.addr[0],  m.value[0],        m.addr_sorted[0],
                               m.value_sorted[0], m.prod[0],  m.prod[n - 1],
                               stmt.z_mem, stmt.alpha,        f.one(),
                               f.one(),    f.one()};
    for (const auto& c : memory_boundary_constraints<Felt>()) {
        if (c.group != Group::memory) continue;
        Felt lhs = c.eval(bw);
        if (!lhs.is_zero()) out.violations.push_back({{c.group, c.name, 0}, lhs});
    }

    for (std::size_t i = 1; i < n && !lim.full(out); ++i) {
        MemPairWindow<Felt> w{
            m.addr[i - 1], m.value[i - 1], m.addr_sorted[i - 1], m.value_sorted[i - 1],
            m.prod[i - 1], m.addr[i],      m.value[i],           m.addr_sorted[i],
            m.value_sorted[i], m.prod[i],  stmt.z_mem,           stmt.alpha,
            f.one()};
        for (const auto& c : memory_pair_constraints<Felt>()) {
            Felt lhs = c.eval(w);
            if (!lhs.is_zero()) {
                out.violations.push_back({{c.group, c.name, i}, lhs});
                if (lim.full(out)) break;
            }
        }
    }
    return out;
}

ViolationReport eval_public_memory_impl(const MemorySegment& m, const PublicStatement& stmt) {
    check_memory_consistent(m);
    const Field& f = stmt.z_mem.field();
    ViolationReport out;
    std::size_t n = m.addr.size();

    // Recompute the public-memory product from m_star rather than trusting
    // the statement's cached value; flag a mismatch separately.
    Felt pub_prod = f.one();
    for (const auto& [addr, value] : stmt.m_star.cells())
        pub_prod = pub_prod * (stmt.z_mem - (Felt(f, addr) + stmt.alpha * value));
    if (pub_prod != stmt.public_memory_prod)
        out.violations.push_back(
            {{Group::public_memory, "stmt_public_memory_prod", 0},
             pub_prod - stmt.public_memory_prod});

    u64 k = stmt.m_star.size();
    Felt z_pow_k = stmt.z_mem.pow(U256::from_u64(k));
    MemBoundaryWindow<Felt> bw{m.addr[0],  m.value[0],        m.addr_sorted[0],
                               m.value_sorted[0], m.prod[0],  m.prod[n - 1],
                               stmt.z_mem, stmt.alpha,        f.one(),
                               pub_prod,   z_pow_k};
    for (const auto& c : memory_boundary_constraints<Felt>()) {
        if (c.group != Group::public_memory) continue;
        Felt lhs = c.eval(bw);
        if (!lhs.is_zero()) out.violations.push_back({{c.group, c.name, n - 1}, lhs});
    }

    // Exactly |dom m*| (0,0) placeholder pairs in the unsorted columns.
    u64 found = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (m.addr[i].is_zero() && m.value[i].is_zero()) ++found;
    if (found != k)
        out.violations.push_back({{Group::public_memory, "placeholder_count", 0},
                                  f.from_u64(found) - f.from_u64(k)});
    return out;
}

ViolationReport eval_rc16_impl(const RcSegment& r, const PublicStatement& stmt,
                               const ExecutionColumns* cols, Limits lim = {}) {
    check_rc_consistent(r);
    const Field& f = stmt.z_rc.field();
    ViolationReport out;
    std::size_t n = r.pool.size();

    RcBoundaryWindow<Felt> bw{r.pool[0],     r.pool_sorted[0],      r.prod[0],
                              r.pool_sorted[n - 1], r.prod[n - 1],  stmt.z_rc,
                              f.one(),       f.from_u64(stmt.rc_min), f.from_u64(stmt.rc_max)};
    for (const auto& c : rc_boundary_constraints<Felt>()) {
        Felt lhs = c.eval(bw);
        if (!lhs.is_zero())
            out.violations.push_back(
                {{c.group, c.name, c.name == "prod_init" || c.name == "min_boundary" ? 0 : n - 1},
                 lhs});
    }

    for (std::size_t i = 1; i < n && !lim.full(out); ++i) {
        RcPairWindow<Felt> w{r.pool[i - 1], r.pool_sorted[i - 1], r.prod[i - 1],
                             r.pool[i],     r.pool_sorted[i],     r.prod[i],
                             stmt.z_rc,     f.one()};
        for (const auto& c : rc_pair_constraints<Felt>()) {
            Felt lhs = c.eval(w);
            if (!lhs.is_zero()) {
                out.violations.push_back({{c.group, c.name, i}, lhs});
                if (lim.full(out)) break;
            }
        }
    }

    // Embedding: the off~ columns are literally entries of the pool.
    if (cols) out.append(eval_step_group(Group::rc16, *cols, nullptr, &r, lim));
    return out;
}

} // namespace

ViolationReport eval_memory(const MemorySegment& mem_seg, const PublicStatement& stmt) {
    return eval_memory_impl(mem_seg, stmt);
}

ViolationReport eval_public_memory(const MemorySegment& mem_seg, const PublicStatement& stmt) {
    return eval_public_memory_impl(mem_seg, stmt);
}

ViolationReport eval_rc16(const RcSegment& rc_seg, const PublicStatement& stmt,
                          const ExecutionColumns& cols) {
    return eval_rc16_impl(rc_seg, stmt, &cols);
}

ViolationReport eval_rc16(const RcSegment& rc_seg, const PublicStatement& stmt) {
    return eval_rc16_impl(rc_seg, stmt, nullptr);
}

ViolationReport eval_initial_and_final(const ExecutionColumns& cols, const PublicStatement& stmt) {
    check_columns_consistent(cols);
    std::size_t n = cols.steps();
    EndpointWindow<Felt> w{cols.pc[0],      cols.ap[0],      cols.fp[0],
                           cols.pc[n - 1],  cols.ap[n - 1],  stmt.initial_pc,
                           stmt.initial_ap, stmt.final_pc,   stmt.final_ap};
    ViolationReport out;
    for (const auto& c : endpoint_constraints<Felt>()) {
        Felt lhs = c.eval(w);
        if (!lhs.is_zero()) {
            bool initial = c.name.rfind("initial", 0) == 0;
            out.violations.push_back({{c.group, c.name, initial ? 0 : n - 1}, lhs});
        }
    }
    return out;
}

namespace {

ViolationReport eval_statement_invariants(const PublicStatement& stmt, const Field& f) {
    ViolationReport out;
    if (stmt.rc_max >= (1u << 16))
        out.violations.push_back(
            {{Group::rc16, "stmt_rc_max_lt", 0}, f.from_u64(stmt.rc_max)});
    // trace_length <= char(F)
    if (u256_cmp(U256::from_u64(stmt.trace_length), f.modulus()) > 0)
        out.violations.push_back({{Group::initial_and_final, "stmt_trace_length_le_char", 0},
                                  f.from_u64(stmt.trace_length)});
    if (stmt.z_mem.is_zero())
        out.violations.push_back({{Group::memory, "stmt_interaction_elm_nonzero", 0}, f.one()});
    return out;
}

} // namespace

ViolationReport verify_all(const PublicStatement& stmt, const ExecutionColumns& cols,
                           const MemorySegment& mem_seg, const RcSegment& rc_seg,
                           const VerifyOptions& opts) {
    check_columns_consistent(cols);
    check_memory_consistent(mem_seg);
    check_rc_consistent(rc_seg);
    const Field& f = *cols.field;
    std::size_t n = cols.steps();
    if (stmt.trace_length != 16 * n)
        throw Error(ErrorKind::format, "trace_length does not equal 16*(T+1)");
    if ((n & (n - 1)) != 0)
        throw Error(ErrorKind::format, "step count T+1 must be a power of two");
    if (mem_seg.addr.size() < 4 * n + stmt.m_star.size())
        throw Error(ErrorKind::format, "memory segment misses step pairs or placeholders");
    if (rc_seg.pool.size() < 3 * n)
        throw Error(ErrorKind::format, "rc pool misses step entries");

    Limits lim{opts.max_violations};
    ViolationReport out = eval_statement_invariants(stmt, f);
    if (!lim.full(out)) out.append(eval_step_group(Group::cpu_decode, cols, nullptr, nullptr, lim));
    if (!lim.full(out))
        out.append(eval_step_group(Group::cpu_operands, cols, &mem_seg, nullptr, lim));
    if (!lim.full(out))
        out.append(eval_step_group(Group::cpu_update_registers, cols, nullptr, nullptr, lim));
    if (!lim.full(out)) out.append(eval_step_group(Group::cpu_opcodes, cols, nullptr, nullptr, lim));
    if (!lim.full(out)) out.append(eval_memory_impl(mem_seg, stmt, lim));
    if (!lim.full(out)) out.append(eval_rc16_impl(rc_seg, stmt, &cols, lim));
    if (!lim.full(out)) out.append(eval_public_memory_impl(mem_seg, stmt));
    if (!lim.full(out)) out.append(eval_initial_and_final(cols, stmt));
    out.sort();
    if (opts.max_violations != 0 && out.size() > opts.max_violations)
        out.violations.erase(out.violations.begin() + (std::ptrdiff_t)opts.max_violations,
                             out.violations.end());
    return out;
}

// ---------------------------------------------------------------------------
// Symbolic degrees
// ---------------------------------------------------------------------------

namespace {

StepWindow<Degree> degree_step_window() {
    Degree col{1}, cst{0};
    StepWindow<Degree> w{};
    w.pc = w.ap = w.fp = w.inst = col;
    w.off_dst = w.off_op0 = w.off_op1 = col;
    for (auto& x : w.f_tilde) x = col;
    w.dst_addr = w.dst = w.op0_addr = w.op0 = w.op1_addr = w.op1 = col;
    w.res = w.mul = w.t0 = w.t1 = col;
    for (auto& x : w.acc_addr) x = col;
    for (auto& x : w.acc_value) x = col;
    for (auto& x : w.rc_entry) x = col;
    w.next_pc = w.next_ap = w.next_fp = col;
    w.one = w.two = w.half = w.p16 = w.p32 = w.p48 = cst;
    return w;
}

} // namespace

std::vector<std::pair<std::string, int>> registered_constraint_degrees() {
    std::vector<std::pair<std::string, int>> out;
    Degree col{1}, cst{0};

    StepWindow<Degree> sw = degree_step_window();
    for (const auto& c : step_constraints<Degree>())
        out.emplace_back(std::string(group_name(c.group)) + "/" + c.name, c.eval(sw).d);

    MemPairWindow<Degree> mw{col, col, col, col, col, col, col, col, col, col, cst, cst, cst};
    for (const auto& c : memory_pair_constraints<Degree>())
        out.emplace_back(std::string(group_name(c.group)) + "/" + c.name, c.eval(mw).d);

    MemBoundaryWindow<Degree> mb{col, col, col, col, col, col, cst, cst, cst, cst, cst};
    for (const auto& c : memory_boundary_constraints<Degree>())
        out.emplace_back(std::string(group_name(c.group)) + "/" + c.name, c.eval(mb).d);

    RcPairWindow<Degree> rw{col, col, col, col, col, col, cst, cst};
    for (const auto& c : rc_pair_constraints<Degree>())
        out.emplace_back(std::string(group_name(c.group)) + "/" + c.name, c.eval(rw).d);

    RcBoundaryWindow<Degree> rb{col, col, col, col, col, cst, cst, cst, cst};
    for (const auto& c : rc_boundary_constraints<Degree>())
        out.emplace_back(std::string(group_name(c.group)) + "/" + c.name, c.eval(rb).d);

    EndpointWindow<Degree> ew{col, col, col, col, col, cst, cst, cst, cst};
    for (const auto& c : endpoint_constraints<Degree>())
        out.emplace_back(std::string(group_name(c.group)) + "/" + c.name, c.eval(ew).d);

    return out;
}

} // namespace cairo
