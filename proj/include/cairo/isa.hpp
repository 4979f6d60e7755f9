// cairo-air: Cairo machine semantics and algebraic trace toolkit
// Copyright 2026 The cairo-air Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <vector>

#include "cairo/field.hpp"

namespace cairo {

/// The 15 instruction flags, bit positions within the flag word.
enum class FlagIndex : unsigned {
    dst_reg = 0,
    op0_reg = 1,
    op1_imm = 2,
    op1_fp = 3,
    op1_ap = 4,
    res_add = 5,
    res_mul = 6,
    pc_jump_abs = 7,
    pc_jump_rel = 8,
    pc_jnz = 9,
    ap_add = 10,
    ap_add1 = 11,
    opcode_call = 12,
    opcode_ret = 13,
    opcode_assert_eq = 14,
};

inline constexpr unsigned kNumFlags = 15;
inline constexpr std::uint32_t kOffsetBias = 1u << 15;

/// One machine instruction: three biased 16-bit offsets plus 15 one-bit
/// flags. The encoded word is always below 2^63.
struct Instruction {
    std::uint16_t off_dst = kOffsetBias;  // biased: stored value = offset + 2^15
    std::uint16_t off_op0 = kOffsetBias;
    std::uint16_t off_op1 = kOffsetBias;
    std::uint16_t flags = 0;              // < 2^15

    bool flag(FlagIndex f) const { return (flags >> unsigned(f)) & 1; }
    std::int32_t off_dst_signed() const { return std::int32_t(off_dst) - std::int32_t(kOffsetBias); }
    std::int32_t off_op0_signed() const { return std::int32_t(off_op0) - std::int32_t(kOffsetBias); }
    std::int32_t off_op1_signed() const { return std::int32_t(off_op1) - std::int32_t(kOffsetBias); }
    /// 2 when the instruction carries an immediate, else 1.
    std::uint64_t size() const { return flag(FlagIndex::op1_imm) ? 2 : 1; }

    friend bool operator==(const Instruction&, const Instruction&) = default;
};

/// Builds an instruction from signed offsets in [-2^15, 2^15) and a flag set.
Instruction make_instruction(int off_dst, int off_op0, int off_op1,
                             std::initializer_list<FlagIndex> flags);

/// word = off_dst + 2^16*off_op0 + 2^32*off_op1 + 2^48*flags; always < 2^63.
std::uint64_t encode_instruction(const Instruction& i);

/// Unique preimage of encode_instruction. Throws not_an_instruction for
/// words >= 2^63.
Instruction decode_instruction(std::uint64_t word);

/// Decode a field element: requires the canonical value to be an integer
/// below 2^63 (only meaningful when char(F) > 2^63).
Instruction decode_instruction_felt(const Felt& word);

/// Suffix-sum flag encoding: f~_i = sum_{j>=i} 2^(j-i) f_j, sixteen values,
/// f~_15 = 0 and f~_0 = flags.
std::array<Felt, 16> tilde_from_flags(const Field& field, std::uint16_t flags);

/// Recovers the bits: f_i = f~_i - 2 f~_{i+1} (field arithmetic).
std::array<Felt, 15> flags_from_tilde(const std::array<Felt, 16>& f_tilde);

struct RegisterState {
    Felt pc, ap, fp;
    friend bool operator==(const RegisterState&, const RegisterState&) = default;
};

/// Finite partial memory, addresses and values both field elements.
/// Immutable once a run starts; set() rejects conflicting rebinds.
class SparseMemory {
public:
    explicit SparseMemory(const Field& field) : field_(&field) {}

    const Field& field() const { return *field_; }
    void set(const Felt& addr, const Felt& value);
    std::optional<Felt> get(const Felt& addr) const;
    Felt at(const Felt& addr) const;  // throws missing_memory
    bool contains(const Felt& addr) const { return cells_.count(addr.raw()) > 0; }
    std::size_t size() const { return cells_.size(); }
    const std::map<U256, Felt>& cells() const { return cells_; }

private:
    const Field* field_;
    std::map<U256, Felt> cells_;
};

/// A total memory function F -> F: finite support plus default 0. This is
/// the shape witness extraction produces from the sorted access columns.
class TotalMemory {
public:
    explicit TotalMemory(const Field& field) : field_(&field) {}

    const Field& field() const { return *field_; }
    void set(const Felt& addr, const Felt& value);
    Felt at(const Felt& addr) const;  // default zero outside the support
    const std::map<U256, Felt>& support() const { return cells_; }

private:
    const Field* field_;
    std::map<U256, Felt> cells_;
};

using MaybeFelt = std::optional<Felt>;

/// none agrees with everything; some(b) agrees only with b.
inline bool agrees(const MaybeFelt& x, const Felt& a) { return !x.has_value() || *x == a; }

struct OperandBundle {
    Felt dst_addr, dst;
    Felt op0_addr, op0;
    MaybeFelt op1_addr, op1;  // undefined when more than one op1 source flag is set
    MaybeFelt res;            // undefined under pc_jnz and for conflicting res flags
};

/// Resolves operand addresses and values for one step. Memory reads of
/// unmapped addresses raise missing_memory.
OperandBundle compute_operands(const Instruction& i, const SparseMemory& mem,
                               const RegisterState& s);

struct NextStateOptions {
    MaybeFelt next_pc, next_ap, next_fp;  // none marks undefined behavior
    bool assert_ok;
};

NextStateOptions next_state_options(const Instruction& i, const SparseMemory& mem,
                                    const RegisterState& s);

/// The step relation: mem[s.pc] decodes to an instruction whose next-state
/// options agree with t component-wise and whose assertions hold. Missing
/// memory or a non-instruction word make the relation false, never throw.
bool next_state_relation(const SparseMemory& mem, const RegisterState& s, const RegisterState& t);

/// Same relation over a total memory (reads never miss).
bool next_state_relation(const TotalMemory& mem, const RegisterState& s, const RegisterState& t);

/// Deterministic executor: runs exactly `steps` steps and returns the
/// steps+1 visited states. Undefined behavior, assertion failures and
/// missing memory are errors; honest traces never contain them.
std::vector<RegisterState> run_program(const SparseMemory& mem, const RegisterState& init,
                                       std::uint64_t steps);

} // namespace cairo
