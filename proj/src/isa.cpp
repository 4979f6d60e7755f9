// cairo-air: Cairo machine semantics and algebraic trace toolkit
// Copyright 2026 The cairo-air Authors.
// SPDX-License-Identifier: Apache-2.0
#include "cairo/isa.hpp"

#include <functional>

namespace cairo {

using u64 = std::uint64_t;

Instruction make_instruction(int off_dst, int off_op0, int off_op1,
                             std::initializer_list<FlagIndex> flags) {
    auto bias = [](int off) -> std::uint16_t {
        if (off < -(1 << 15) || off >= (1 << 15))
            throw Error(ErrorKind::not_an_instruction, "offset out of [-2^15, 2^15)");
        return (std::uint16_t)(off + (1 << 15));
    };
    Instruction i;
    i.off_dst = bias(off_dst);
    i.off_op0 = bias(off_op0);
    i.off_op1 = bias(off_op1);
    for (FlagIndex f : flags) i.flags = (std::uint16_t)(i.flags | (1u << unsigned(f)));
    return i;
}

std::uint64_t encode_instruction(const Instruction& i) {
    return (u64)i.off_dst | ((u64)i.off_op0 << 16) | ((u64)i.off_op1 << 32) |
           ((u64)i.flags << 48);
}

Instruction decode_instruction(std::uint64_t word) {
    if (word >> 63)
        throw Error(ErrorKind::not_an_instruction, "word >= 2^63");
    Instruction i;
    i.off_dst = (std::uint16_t)(word & 0xFFFF);
    i.off_op0 = (std::uint16_t)((word >> 16) & 0xFFFF);
    i.off_op1 = (std::uint16_t)((word >> 32) & 0xFFFF);
    i.flags = (std::uint16_t)(word >> 48);  // < 2^15 since word < 2^63
    return i;
}

Instruction decode_instruction_felt(const Felt& word) {
    if (!word.field().supports_isa())
        throw Error(ErrorKind::config, "field characteristic must exceed 2^63 for instructions");
    if (!word.raw().fits_u64())
        throw Error(ErrorKind::not_an_instruction, "word exceeds 64 bits");
    return decode_instruction(word.raw().w[0]);
}

std::array<Felt, 16> tilde_from_flags(const Field& field, std::uint16_t flags) {
    if (flags >> kNumFlags)
        throw Error(ErrorKind::not_an_instruction, "flag word must be below 2^15");
    // f~_i = floor(flags / 2^i) for the suffix-sum encoding
    std::array<Felt, 16> out{
        field.zero(), field.zero(), field.zero(), field.zero(), field.zero(), field.zero(),
        field.zero(), field.zero(), field.zero(), field.zero(), field.zero(), field.zero(),
        field.zero(), field.zero(), field.zero(), field.zero()};
    for (unsigned i = 0; i < 16; ++i) out[i] = field.from_u64((u64)(flags >> i));
    return out;
}

std::array<Felt, 15> flags_from_tilde(const std::array<Felt, 16>& f_tilde) {
    const Field& fld = f_tilde[0].field();
    std::array<Felt, 15> out{fld.zero(), fld.zero(), fld.zero(), fld.zero(), fld.zero(),
                             fld.zero(), fld.zero(), fld.zero(), fld.zero(), fld.zero(),
                             fld.zero(), fld.zero(), fld.zero(), fld.zero(), fld.zero()};
    for (unsigned i = 0; i < 15; ++i) out[i] = f_tilde[i] - f_tilde[i + 1] - f_tilde[i + 1];
    return out;
}

void SparseMemory::set(const Felt& addr, const Felt& value) {
    if (addr.field() != *field_ || value.field() != *field_)
        throw Error(ErrorKind::config, "memory cell from a different field");
    auto [it, inserted] = cells_.emplace(addr.raw(), value);
    if (!inserted && it->second != value)
        throw Error(ErrorKind::inconsistent_memory,
                    "conflicting values at address " + addr.to_decimal());
}

std::optional<Felt> SparseMemory::get(const Felt& addr) const {
    auto it = cells_.find(addr.raw());
    if (it == cells_.end()) return std::nullopt;
    return it->second;
}

Felt SparseMemory::at(const Felt& addr) const {
    auto v = get(addr);
    if (!v) throw Error(ErrorKind::missing_memory, "no value at address " + addr.to_decimal());
    return *v;
}

void TotalMemory::set(const Felt& addr, const Felt& value) {
    if (addr.field() != *field_ || value.field() != *field_)
        throw Error(ErrorKind::config, "memory cell from a different field");
    auto [it, inserted] = cells_.emplace(addr.raw(), value);
    if (!inserted && it->second != value)
        throw Error(ErrorKind::inconsistent_memory,
                    "conflicting values at address " + addr.to_decimal());
}

Felt TotalMemory::at(const Felt& addr) const {
    auto it = cells_.find(addr.raw());
    return it == cells_.end() ? field_->zero() : it->second;
}

namespace {

// Signed offset as a field element.
Felt off_felt(const Field& f, std::int32_t off) { return f.from_int(off); }

struct MemReader {
    std::function<std::optional<Felt>(const Felt&)> get;
    Felt at(const Felt& addr) const {
        auto v = get(addr);
        if (!v)
            throw Error(ErrorKind::missing_memory, "no value at address " + addr.to_decimal());
        return *v;
    }
};

OperandBundle compute_operands_impl(const Instruction& i, const MemReader& mem,
                                    const RegisterState& s) {
    const Field& f = s.pc.field();
    if (!f.supports_isa())
        throw Error(ErrorKind::config, "field characteristic must exceed 2^63 for the machine");

    Felt dst_base = i.flag(FlagIndex::dst_reg) ? s.fp : s.ap;
    Felt op0_base = i.flag(FlagIndex::op0_reg) ? s.fp : s.ap;

    OperandBundle b{
        dst_base + off_felt(f, i.off_dst_signed()), f.zero(),
        op0_base + off_felt(f, i.off_op0_signed()), f.zero(),
        std::nullopt, std::nullopt, std::nullopt,
    };
    b.dst = mem.at(b.dst_addr);
    b.op0 = mem.at(b.op0_addr);

    bool imm = i.flag(FlagIndex::op1_imm);
    bool o1fp = i.flag(FlagIndex::op1_fp);
    bool o1ap = i.flag(FlagIndex::op1_ap);
    int set = (imm ? 1 : 0) + (o1fp ? 1 : 0) + (o1ap ? 1 : 0);
    if (set <= 1) {
        Felt base = imm ? s.pc : o1fp ? s.fp : o1ap ? s.ap : b.op0;
        b.op1_addr = base + off_felt(f, i.off_op1_signed());
        b.op1 = mem.at(*b.op1_addr);
    }
    // else: op1 source is ambiguous -> undefined marker, res follows

    bool add = i.flag(FlagIndex::res_add);
    bool mul = i.flag(FlagIndex::res_mul);
    bool jabs = i.flag(FlagIndex::pc_jump_abs);
    bool jrel = i.flag(FlagIndex::pc_jump_rel);
    bool jnz = i.flag(FlagIndex::pc_jnz);
    // res is defined only for the plain pc modes; under jnz (or conflicting
    // pc/res flags) it is unconstrained.
    bool pc_mode_ok = (!jnz && !(jabs && jrel));
    if (pc_mode_ok && b.op1.has_value()) {
        if (add && !mul)
            b.res = b.op0 + *b.op1;
        else if (mul && !add)
            b.res = b.op0 * *b.op1;
        else if (!add && !mul)
            b.res = *b.op1;
        // add && mul -> undefined
    }
    return b;
}

NextStateOptions next_state_options_impl(const Instruction& i, const MemReader& mem,
                                         const RegisterState& s) {
    const Field& f = s.pc.field();
    OperandBundle b = compute_operands_impl(i, mem, s);
    NextStateOptions out{std::nullopt, std::nullopt, std::nullopt, true};

    Felt size = f.from_u64(i.size());

    bool jabs = i.flag(FlagIndex::pc_jump_abs);
    bool jrel = i.flag(FlagIndex::pc_jump_rel);
    bool jnz = i.flag(FlagIndex::pc_jnz);
    int pc_flags = (jabs ? 1 : 0) + (jrel ? 1 : 0) + (jnz ? 1 : 0);
    if (pc_flags == 0) {
        out.next_pc = s.pc + size;
    } else if (pc_flags == 1 && jabs) {
        out.next_pc = b.res;
    } else if (pc_flags == 1 && jrel) {
        if (b.res) out.next_pc = s.pc + *b.res;
    } else if (pc_flags == 1 && jnz) {
        if (b.dst.is_zero())
            out.next_pc = s.pc + size;
        else if (b.op1)
            out.next_pc = s.pc + *b.op1;  // taken branch: relative jump by op1
    }

    bool call = i.flag(FlagIndex::opcode_call);
    bool ret = i.flag(FlagIndex::opcode_ret);
    bool aeq = i.flag(FlagIndex::opcode_assert_eq);
    int opcode_flags = (call ? 1 : 0) + (ret ? 1 : 0) + (aeq ? 1 : 0);

    bool ap_add = i.flag(FlagIndex::ap_add);
    bool ap_add1 = i.flag(FlagIndex::ap_add1);
    if (call && opcode_flags == 1) {
        if (!ap_add && !ap_add1) out.next_ap = s.ap + f.from_u64(2);
    } else if (opcode_flags <= 1) {
        if (!ap_add && !ap_add1)
            out.next_ap = s.ap;
        else if (ap_add && !ap_add1) {
            if (b.res) out.next_ap = s.ap + *b.res;
        } else if (!ap_add && ap_add1)
            out.next_ap = s.ap + f.one();
    }

    if (opcode_flags == 0) {
        out.next_fp = s.fp;
    } else if (opcode_flags == 1) {
        if (call)
            out.next_fp = s.ap + f.from_u64(2);
        else if (ret)
            out.next_fp = b.dst;
        else
            out.next_fp = s.fp;  // assert_eq
    }

    if (opcode_flags == 1 && aeq) {
        out.assert_ok = b.res.has_value() && b.dst == *b.res;
    } else if (opcode_flags == 1 && call) {
        out.assert_ok = b.op0 == s.pc + size && b.dst == s.fp;
    }
    return out;
}

MemReader sparse_reader(const SparseMemory& mem) {
    return MemReader{[&mem](const Felt& a) { return mem.get(a); }};
}

} // namespace

OperandBundle compute_operands(const Instruction& i, const SparseMemory& mem,
                               const RegisterState& s) {
    return compute_operands_impl(i, sparse_reader(mem), s);
}

NextStateOptions next_state_options(const Instruction& i, const SparseMemory& mem,
                                    const RegisterState& s) {
    return next_state_options_impl(i, sparse_reader(mem), s);
}

namespace {

bool next_state_relation_impl(const MemReader& mem, const RegisterState& s,
                              const RegisterState& t) {
    try {
        Felt word = mem.at(s.pc);
        Instruction i = decode_instruction_felt(word);
        NextStateOptions n = next_state_options_impl(i, mem, s);
        return agrees(n.next_pc, t.pc) && agrees(n.next_ap, t.ap) && agrees(n.next_fp, t.fp) &&
               n.assert_ok;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::missing_memory || e.kind() == ErrorKind::not_an_instruction)
            return false;
        throw;
    }
}

} // namespace

bool next_state_relation(const SparseMemory& mem, const RegisterState& s,
                         const RegisterState& t) {
    return next_state_relation_impl(sparse_reader(mem), s, t);
}

bool next_state_relation(const TotalMemory& mem, const RegisterState& s,
                         const RegisterState& t) {
    MemReader reader{[&mem](const Felt& a) { return std::optional<Felt>(mem.at(a)); }};
    return next_state_relation_impl(reader, s, t);
}

std::vector<RegisterState> run_program(const SparseMemory& mem, const RegisterState& init,
                                       std::uint64_t steps) {
    std::vector<RegisterState> trace;
    trace.reserve(steps + 1);
    trace.push_back(init);
    for (u64 k = 0; k < steps; ++k) {
        const RegisterState& s = trace.back();
        Instruction i = decode_instruction_felt(mem.at(s.pc));
        NextStateOptions n = next_state_options(i, mem, s);
        if (!n.next_pc || !n.next_ap || !n.next_fp)
            throw Error(ErrorKind::undefined_behavior,
                        "step " + std::to_string(k) + ": unconstrained next state at pc " +
                            s.pc.to_decimal());
        if (!n.assert_ok)
            throw Error(ErrorKind::assert_failed,
                        "step " + std::to_string(k) + ": assertion failed at pc " +
                            s.pc.to_decimal());
        trace.push_back(RegisterState{*n.next_pc, *n.next_ap, *n.next_fp});
    }
    return trace;
}

} // namespace cairo
