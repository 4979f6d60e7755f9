// cairo-air: Cairo machine semantics and algebraic trace toolkit
// Copyright 2026 The cairo-air Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "cairo/trace.hpp"

namespace cairo {

/// The eight constraint groups of the verifier's conjunction.
enum class Group {
    cpu_decode,
    cpu_operands,
    cpu_update_registers,
    cpu_opcodes,
    memory,
    rc16,
    public_memory,
    initial_and_final,
};

const char* group_name(Group g);
Group group_from_name(const std::string& name);

struct ConstraintId {
    Group group;
    std::string name;
    std::uint64_t row;
};

struct Violation {
    ConstraintId id;
    Felt lhs;  // the nonzero left-hand side, for debugging
};

struct ViolationReport {
    std::vector<Violation> violations;
    bool empty() const { return violations.empty(); }
    std::size_t size() const { return violations.size(); }
    void append(ViolationReport other);
    void sort();  // by (group, name, row)
    bool has(Group g, std::string_view name) const;
};

// ---------------------------------------------------------------------------
// Constraint expressions, generic in the scalar. Columns enter with degree 1,
// constants (challenges, statement data, literals) with degree 0, so the same
// registry evaluates field values and symbolic total degrees.
// ---------------------------------------------------------------------------

/// Total-degree tracking scalar: add/sub take the max, mul adds.
struct Degree {
    int d = 0;
    friend Degree operator+(Degree a, Degree b) { return {std::max(a.d, b.d)}; }
    friend Degree operator-(Degree a, Degree b) { return {std::max(a.d, b.d)}; }
    friend Degree operator*(Degree a, Degree b) { return {a.d + b.d}; }
};

/// One execution step plus the successor registers; the only view step
/// constraints get, which pins the two-consecutive-rows locality contract.
template <class S>
struct StepWindow {
    S pc, ap, fp, inst;
    S off_dst, off_op0, off_op1;
    std::array<S, 16> f_tilde;
    S dst_addr, dst, op0_addr, op0, op1_addr, op1;
    S res, mul, t0, t1;
    std::array<S, 4> acc_addr, acc_value;  // this step's unsorted access pairs
    std::array<S, 3> rc_entry;             // this step's rc pool entries
    S next_pc, next_ap, next_fp;           // meaningful when the row has a successor
    S one, two, half, p16, p32, p48;       // constants: 1, 2, 2^15, 2^16, 2^32, 2^48

    S flag(FlagIndex f) const {
        auto i = static_cast<std::size_t>(f);
        return f_tilde[i] - f_tilde[i + 1] - f_tilde[i + 1];
    }
    S inst_size() const { return one + flag(FlagIndex::op1_imm); }
};

template <class S>
struct MemPairWindow {
    S a_prev, v_prev, as_prev, vs_prev, p_prev;
    S a_cur, v_cur, as_cur, vs_cur, p_cur;
    S z, alpha, one;
};

template <class S>
struct MemBoundaryWindow {
    S a0, v0, as0, vs0, p0;
    S p_last;
    S z, alpha, one, pub_prod, z_pow_k;
};

template <class S>
struct RcPairWindow {
    S a_prev, as_prev, p_prev;
    S a_cur, as_cur, p_cur;
    S z, one;
};

template <class S>
struct RcBoundaryWindow {
    S a0, as0, p0;
    S as_last, p_last;
    S z, one, rc_min, rc_max;
};

template <class S>
struct EndpointWindow {
    S pc0, ap0, fp0, pcT, apT;
    S initial_pc, initial_ap, final_pc, final_ap;
};

template <class S, class W>
struct ConstraintDef {
    Group group;
    std::string name;
    bool needs_next;  // step constraints only: window spans (row, row+1)
    std::function<S(const W&)> eval;
};

template <class S>
const std::vector<ConstraintDef<S, StepWindow<S>>>& step_constraints() {
    using W = StepWindow<S>;
    using F = FlagIndex;
    static const std::vector<ConstraintDef<S, W>> defs = [] {
        std::vector<ConstraintDef<S, W>> v;
        auto add = [&v](Group g, std::string name, bool next, std::function<S(const W&)> f) {
            v.push_back({g, std::move(name), next, std::move(f)});
        };

        for (unsigned b = 0; b < kNumFlags; ++b) {
            add(Group::cpu_decode, "bit_f" + std::to_string(b), false, [b](const W& w) {
                S f = w.flag(static_cast<FlagIndex>(b));
                return f * (f - w.one);
            });
        }
        add(Group::cpu_decode, "last_f_tilde_zero", false, [](const W& w) { return w.f_tilde[15]; });
        add(Group::cpu_decode, "instruction_word", false, [](const W& w) {
            return w.inst - (w.off_dst + w.p16 * w.off_op0 + w.p32 * w.off_op1 + w.p48 * w.f_tilde[0]);
        });

        add(Group::cpu_operands, "dst_addr", false, [](const W& w) {
            S f = w.flag(F::dst_reg);
            return w.dst_addr + w.half - (f * w.fp + (w.one - f) * w.ap + w.off_dst);
        });
        add(Group::cpu_operands, "op0_addr", false, [](const W& w) {
            S f = w.flag(F::op0_reg);
            return w.op0_addr + w.half - (f * w.fp + (w.one - f) * w.ap + w.off_op0);
        });
        add(Group::cpu_operands, "op1_addr", false, [](const W& w) {
            S imm = w.flag(F::op1_imm), ffp = w.flag(F::op1_fp), fap = w.flag(F::op1_ap);
            return w.op1_addr + w.half -
                   (imm * w.pc + fap * w.ap + ffp * w.fp +
                    (w.one - imm - ffp - fap) * w.op0 + w.off_op1);
        });
        add(Group::cpu_operands, "ops_mul", false,
            [](const W& w) { return w.mul - w.op0 * w.op1; });
        add(Group::cpu_operands, "res_logic", false, [](const W& w) {
            S jnz = w.flag(F::pc_jnz), radd = w.flag(F::res_add), rmul = w.flag(F::res_mul);
            return (w.one - jnz) * w.res -
                   (radd * (w.op0 + w.op1) + rmul * w.mul +
                    (w.one - radd - rmul - jnz) * w.op1);
        });
        add(Group::cpu_operands, "link_pc_addr", false,
            [](const W& w) { return w.acc_addr[0] - w.pc; });
        add(Group::cpu_operands, "link_inst_value", false,
            [](const W& w) { return w.acc_value[0] - w.inst; });
        add(Group::cpu_operands, "link_dst_addr", false,
            [](const W& w) { return w.acc_addr[1] - w.dst_addr; });
        add(Group::cpu_operands, "link_dst_value", false,
            [](const W& w) { return w.acc_value[1] - w.dst; });
        add(Group::cpu_operands, "link_op0_addr", false,
            [](const W& w) { return w.acc_addr[2] - w.op0_addr; });
        add(Group::cpu_operands, "link_op0_value", false,
            [](const W& w) { return w.acc_value[2] - w.op0; });
        add(Group::cpu_operands, "link_op1_addr", false,
            [](const W& w) { return w.acc_addr[3] - w.op1_addr; });
        add(Group::cpu_operands, "link_op1_value", false,
            [](const W& w) { return w.acc_value[3] - w.op1; });

        add(Group::cpu_update_registers, "pc_tmp0", true,
            [](const W& w) { return w.t0 - w.flag(F::pc_jnz) * w.dst; });
        add(Group::cpu_update_registers, "pc_tmp1", true,
            [](const W& w) { return w.t1 - w.t0 * w.res; });
        add(Group::cpu_update_registers, "pc_cond_negative", true, [](const W& w) {
            S jnz = w.flag(F::pc_jnz), jabs = w.flag(F::pc_jump_abs), jrel = w.flag(F::pc_jump_rel);
            return (w.one - jnz) * w.next_pc + w.t0 * (w.next_pc - (w.pc + w.op1)) -
                   ((w.one - jabs - jrel - jnz) * (w.pc + w.inst_size()) + jabs * w.res +
                    jrel * (w.pc + w.res));
        });
        add(Group::cpu_update_registers, "pc_cond_positive", true, [](const W& w) {
            return (w.t1 - w.flag(F::pc_jnz)) * (w.next_pc - (w.pc + w.inst_size()));
        });
        add(Group::cpu_update_registers, "ap_update", true, [](const W& w) {
            return w.next_ap - (w.ap + w.flag(F::ap_add) * w.res + w.flag(F::ap_add1) +
                                w.flag(F::opcode_call) * w.two);
        });
        add(Group::cpu_update_registers, "fp_update", true, [](const W& w) {
            S ret = w.flag(F::opcode_ret), call = w.flag(F::opcode_call);
            return w.next_fp -
                   ((w.one - ret - call) * w.fp + ret * w.dst + call * (w.ap + w.two));
        });

        add(Group::cpu_opcodes, "assert_eq", false,
            [](const W& w) { return w.flag(F::opcode_assert_eq) * (w.dst - w.res); });
        add(Group::cpu_opcodes, "call_push_fp", false,
            [](const W& w) { return w.flag(F::opcode_call) * (w.dst - w.fp); });
        add(Group::cpu_opcodes, "call_push_pc", false, [](const W& w) {
            return w.flag(F::opcode_call) * (w.op0 - (w.pc + w.inst_size()));
        });

        add(Group::rc16, "embed_off_dst", false,
            [](const W& w) { return w.rc_entry[0] - w.off_dst; });
        add(Group::rc16, "embed_off_op0", false,
            [](const W& w) { return w.rc_entry[1] - w.off_op0; });
        add(Group::rc16, "embed_off_op1", false,
            [](const W& w) { return w.rc_entry[2] - w.off_op1; });
        return v;
    }();
    return defs;
}

template <class S>
const std::vector<ConstraintDef<S, MemPairWindow<S>>>& memory_pair_constraints() {
    using W = MemPairWindow<S>;
    static const std::vector<ConstraintDef<S, W>> defs = {
        {Group::memory, "continuity", false,
         [](const W& w) {
             S d = w.as_cur - w.as_prev;
             return d * (d - w.one);
         }},
        {Group::memory, "single_valued", false,
         [](const W& w) {
             return (w.vs_cur - w.vs_prev) * (w.as_cur - w.as_prev - w.one);
         }},
        {Group::memory, "prod_step", false,
         [](const W& w) {
             return (w.z - (w.as_cur + w.alpha * w.vs_cur)) * w.p_cur -
                    (w.z - (w.a_cur + w.alpha * w.v_cur)) * w.p_prev;
         }},
    };
    return defs;
}

template <class S>
const std::vector<ConstraintDef<S, MemBoundaryWindow<S>>>& memory_boundary_constraints() {
    using W = MemBoundaryWindow<S>;
    static const std::vector<ConstraintDef<S, W>> defs = {
        {Group::memory, "prod_init", false,
         [](const W& w) {
             return (w.z - (w.as0 + w.alpha * w.vs0)) * w.p0 - (w.z - (w.a0 + w.alpha * w.v0));
         }},
        {Group::public_memory, "prod_final", false,
         [](const W& w) { return w.p_last * w.pub_prod - w.z_pow_k; }},
    };
    return defs;
}

template <class S>
const std::vector<ConstraintDef<S, RcPairWindow<S>>>& rc_pair_constraints() {
    using W = RcPairWindow<S>;
    static const std::vector<ConstraintDef<S, W>> defs = {
        {Group::rc16, "continuity", false,
         [](const W& w) {
             S d = w.as_cur - w.as_prev;
             return d * (d - w.one);
         }},
        {Group::rc16, "prod_step", false,
         [](const W& w) {
             return (w.z - w.as_cur) * w.p_cur - (w.z - w.a_cur) * w.p_prev;
         }},
    };
    return defs;
}

template <class S>
const std::vector<ConstraintDef<S, RcBoundaryWindow<S>>>& rc_boundary_constraints() {
    using W = RcBoundaryWindow<S>;
    static const std::vector<ConstraintDef<S, W>> defs = {
        {Group::rc16, "prod_init", false,
         [](const W& w) { return (w.z - w.as0) * w.p0 - (w.z - w.a0); }},
        {Group::rc16, "prod_final", false, [](const W& w) { return w.p_last - w.one; }},
        {Group::rc16, "min_boundary", false, [](const W& w) { return w.as0 - w.rc_min; }},
        {Group::rc16, "max_boundary", false, [](const W& w) { return w.as_last - w.rc_max; }},
    };
    return defs;
}

template <class S>
const std::vector<ConstraintDef<S, EndpointWindow<S>>>& endpoint_constraints() {
    using W = EndpointWindow<S>;
    static const std::vector<ConstraintDef<S, W>> defs = {
        {Group::initial_and_final, "initial_pc", false,
         [](const W& w) { return w.pc0 - w.initial_pc; }},
        {Group::initial_and_final, "initial_ap", false,
         [](const W& w) { return w.ap0 - w.initial_ap; }},
        {Group::initial_and_final, "initial_fp", false,
         [](const W& w) { return w.fp0 - w.initial_ap; }},
        {Group::initial_and_final, "final_pc", false,
         [](const W& w) { return w.pcT - w.final_pc; }},
        {Group::initial_and_final, "final_ap", false,
         [](const W& w) { return w.apT - w.final_ap; }},
    };
    return defs;
}

/// (group/name, symbolic total degree) for every registered constraint.
std::vector<std::pair<std::string, int>> registered_constraint_degrees();

// ---------------------------------------------------------------------------
// Field evaluation
// ---------------------------------------------------------------------------

ViolationReport eval_cpu_decode(const ExecutionColumns& cols);
ViolationReport eval_cpu_operands(const ExecutionColumns& cols, const MemorySegment& mem_seg);
ViolationReport eval_cpu_update_registers(const ExecutionColumns& cols,
                                          const PublicStatement& stmt);
ViolationReport eval_cpu_opcodes(const ExecutionColumns& cols);
ViolationReport eval_memory(const MemorySegment& mem_seg, const PublicStatement& stmt);
ViolationReport eval_rc16(const RcSegment& rc_seg, const PublicStatement& stmt,
                          const ExecutionColumns& cols);
/// Segment-local rc16 families only (no off~ embedding; needs no columns).
ViolationReport eval_rc16(const RcSegment& rc_seg, const PublicStatement& stmt);
ViolationReport eval_public_memory(const MemorySegment& mem_seg, const PublicStatement& stmt);
ViolationReport eval_initial_and_final(const ExecutionColumns& cols, const PublicStatement& stmt);

struct VerifyOptions {
    std::size_t max_violations = 0;  // 0 = collect everything
};

/// Evaluates all eight groups plus the statement invariants; throws
/// ErrorKind::format on structural (length) inconsistencies. The report is
/// sorted by (group, name, row) and empty iff every constraint holds.
ViolationReport verify_all(const PublicStatement& stmt, const ExecutionColumns& cols,
                           const MemorySegment& mem_seg, const RcSegment& rc_seg,
                           const VerifyOptions& opts = {});

} // namespace cairo
