// cairo-air: Cairo machine semantics and algebraic trace toolkit
// Copyright 2026 The cairo-air Authors.
// SPDX-License-Identifier: Apache-2.0
#include "support/corpus.hpp"

#include <random>

namespace cairo::testing {

using F = FlagIndex;

Instruction asm_assert_ap_imm() {
    return make_instruction(0, -1, 1, {F::op0_reg, F::op1_imm, F::opcode_assert_eq, F::ap_add1});
}

Instruction asm_assert_ap_mul_ap(int a_off, int b_off) {
    return make_instruction(0, a_off, b_off,
                            {F::op1_ap, F::res_mul, F::opcode_assert_eq, F::ap_add1});
}

Instruction asm_assert_ap_add_imm(int a_off) {
    return make_instruction(0, a_off, 1,
                            {F::op1_imm, F::res_add, F::opcode_assert_eq, F::ap_add1});
}

Instruction asm_assert_ap_mov_fp(int src_off) {
    return make_instruction(0, -1, src_off,
                            {F::op0_reg, F::op1_fp, F::opcode_assert_eq, F::ap_add1});
}

Instruction asm_assert_ap_add_fp(int a_off, int b_off) {
    return make_instruction(0, a_off, b_off,
                            {F::op0_reg, F::op1_fp, F::res_add, F::opcode_assert_eq, F::ap_add1});
}

Instruction asm_assert_fp_eq_ap_plus_imm(int dst_off) {
    return make_instruction(dst_off, 0, 1,
                            {F::dst_reg, F::op1_imm, F::res_add, F::opcode_assert_eq, F::ap_add1});
}

Instruction asm_jmp_rel_imm() {
    return make_instruction(-1, -1, 1, {F::dst_reg, F::op0_reg, F::op1_imm, F::pc_jump_rel});
}

Instruction asm_jmp_abs_imm() {
    return make_instruction(-1, -1, 1, {F::dst_reg, F::op0_reg, F::op1_imm, F::pc_jump_abs});
}

Instruction asm_jnz_imm(int dst_off) {
    return make_instruction(dst_off, -1, 1, {F::op0_reg, F::op1_imm, F::pc_jnz});
}

Instruction asm_call_rel_imm() {
    return make_instruction(0, 1, 1, {F::op1_imm, F::pc_jump_rel, F::opcode_call});
}

Instruction asm_ret() {
    return make_instruction(-2, -1, -1,
                            {F::dst_reg, F::op0_reg, F::op1_fp, F::pc_jump_abs, F::opcode_ret});
}

Instruction asm_ap_add_imm() {
    return make_instruction(-1, -1, 1, {F::dst_reg, F::op0_reg, F::op1_imm, F::ap_add});
}

void ProgramImage::emit(const Instruction& ins) {
    cells_.push_back(field_->from_u64(encode_instruction(ins)));
}

void ProgramImage::emit(const Instruction& ins, const Felt& imm) {
    if (!ins.flag(F::op1_imm))
        throw Error(ErrorKind::config, "immediate given for an instruction without op1_imm");
    emit(ins);
    cells_.push_back(imm);
}

namespace {

class WriteOnceVm {
public:
    explicit WriteOnceVm(const Field& f) : mem_(f) {}

    SparseMemory& memory() { return mem_; }

    void step(RegisterState& s) {
        const Field& f = mem_.field();
        Instruction ins = decode_instruction_felt(mem_.at(s.pc));

        Felt dst_addr = (ins.flag(F::dst_reg) ? s.fp : s.ap) + f.from_int(ins.off_dst_signed());
        Felt op0_addr = (ins.flag(F::op0_reg) ? s.fp : s.ap) + f.from_int(ins.off_op0_signed());
        Felt op1_base = ins.flag(F::op1_imm)  ? s.pc
                        : ins.flag(F::op1_fp) ? s.fp
                        : ins.flag(F::op1_ap) ? s.ap
                                              : mem_.at(op0_addr);
        Felt op1_addr = op1_base + f.from_int(ins.off_op1_signed());
        Felt op1 = mem_.at(op1_addr);  // immediates and frame cells always exist

        if (ins.flag(F::opcode_call)) {
            mem_.set(op0_addr, s.pc + f.from_u64(ins.size()));
            mem_.set(dst_addr, s.fp);
        } else if (ins.flag(F::opcode_assert_eq)) {
            if (ins.flag(F::res_add)) {
                if (auto op0 = mem_.get(op0_addr)) {
                    mem_.set(dst_addr, *op0 + op1);
                } else {
                    // deduce op0 = dst - op1 (the "[ap] = [fp+d] - imm" idiom)
                    mem_.set(op0_addr, mem_.at(dst_addr) - op1);
                }
            } else if (ins.flag(F::res_mul)) {
                mem_.set(dst_addr, mem_.at(op0_addr) * op1);
            } else {
                mem_.set(dst_addr, op1);
            }
        }

        NextStateOptions n = next_state_options(ins, mem_, s);
        if (!n.next_pc || !n.next_ap || !n.next_fp)
            throw Error(ErrorKind::undefined_behavior, "corpus program hit undefined behavior");
        if (!n.assert_ok)
            throw Error(ErrorKind::assert_failed, "corpus program assertion failed");
        s = RegisterState{*n.next_pc, *n.next_ap, *n.next_fp};
    }

private:
    SparseMemory mem_;
};

} // namespace

SparseMemory materialize_memory(const ProgramImage& prog, const RegisterState& init,
                                std::uint64_t steps) {
    const Field& f = prog.field();
    WriteOnceVm vm(f);
    for (std::size_t a = 0; a < prog.cells().size(); ++a)
        vm.memory().set(f.from_u64(a), prog.cells()[a]);
    // Two stack dummies below the initial frame so [fp-1]/[fp-2] reads of
    // top-level code resolve.
    vm.memory().set(f.from_u64(prog.cells().size()), f.zero());
    vm.memory().set(f.from_u64(prog.cells().size() + 1), f.zero());

    RegisterState s = init;
    for (std::uint64_t k = 0; k < steps; ++k) vm.step(s);
    return vm.memory();
}

namespace {

RegisterState initial_state(const Field& f, std::uint64_t ap) {
    return RegisterState{f.zero(), f.from_u64(ap), f.from_u64(ap)};
}

SparseMemory public_image(const SparseMemory& mem, std::uint64_t cells) {
    SparseMemory out(mem.field());
    for (std::uint64_t a = 0; a < cells; ++a) {
        Felt addr = mem.field().from_u64(a);
        out.set(addr, mem.at(addr));
    }
    return out;
}

CorpusProgram finish(std::string name, const ProgramImage& prog, std::uint64_t steps) {
    const Field& f = prog.field();
    std::uint64_t image_cells = prog.cells().size() + 2;  // program + stack dummies
    RegisterState init = initial_state(f, image_cells);
    SparseMemory mem = materialize_memory(prog, init, steps);
    return CorpusProgram{std::move(name), mem, init, steps, public_image(mem, image_cells)};
}

} // namespace

CorpusProgram make_straight_line(const Field& f) {
    ProgramImage p(f);
    p.emit(asm_assert_ap_imm(), f.from_u64(5));     // 0: [ap] = 5
    p.emit(asm_assert_ap_mul_ap(-1, -1));           // 2: [ap] = [ap-1] * [ap-1]
    p.emit(asm_assert_ap_add_imm(-1), f.from_u64(7));  // 3: [ap] = [ap-1] + 7
    p.emit(asm_jmp_rel_imm(), f.zero());            // 5: jmp rel 0
    return finish("straight_line", p, 7);
}

CorpusProgram make_cond_jump(const Field& f) {
    ProgramImage p(f);
    p.emit(asm_assert_ap_imm(), f.from_u64(3));   // 0: [ap] = 3
    p.emit(asm_jnz_imm(-1), f.from_u64(4));       // 2: jmp rel 4 if [ap-1] != 0 (taken)
    p.emit(asm_assert_ap_imm(), f.from_u64(111)); // 4: skipped
    p.emit(asm_assert_ap_imm(), f.zero());        // 6: [ap] = 0
    p.emit(asm_jnz_imm(-1), f.from_int(-6));      // 8: jmp rel -6 if [ap-1] != 0 (not taken)
    p.emit(asm_jmp_rel_imm(), f.zero());          // 10: jmp rel 0
    return finish("cond_jump", p, 7);
}

namespace {

CorpusProgram make_fibonacci_impl(const Field& f, std::string name, std::uint64_t n,
                                  std::uint64_t steps) {
    // main: push 1, 1, n; call fib; loop.
    // fib(x=[fp-5], y=[fp-4], n=[fp-3]): n == 0 -> return y, else fib(y, x+y, n-1).
    ProgramImage p(f);
    p.emit(asm_assert_ap_imm(), f.one());           // 0: [ap] = 1
    p.emit(asm_assert_ap_imm(), f.one());           // 2: [ap] = 1
    p.emit(asm_assert_ap_imm(), f.from_u64(n));     // 4: [ap] = n
    p.emit(asm_call_rel_imm(), f.from_u64(4));      // 6: call rel 4  -> 10
    p.emit(asm_jmp_rel_imm(), f.zero());            // 8: jmp rel 0  (return lands here)
    p.emit(asm_jnz_imm(-3), f.from_u64(4));         // 10: jmp rel 4 if [fp-3] != 0 -> 14
    p.emit(asm_assert_ap_mov_fp(-4));               // 12: [ap] = [fp-4]  (return y)
    p.emit(asm_ret());                              // 13: ret
    p.emit(asm_assert_ap_mov_fp(-4));               // 14: [ap] = [fp-4]        (y)
    p.emit(asm_assert_ap_add_fp(-5, -4));           // 15: [ap] = [fp-5]+[fp-4] (x+y)
    p.emit(asm_assert_fp_eq_ap_plus_imm(-3), f.one());  // 16: [fp-3] = [ap] + 1 (n-1)
    p.emit(asm_call_rel_imm(), f.from_int(-8));     // 18: call rel -8 -> 10
    p.emit(asm_ret());                              // 20: ret
    return finish(std::move(name), p, steps);
}

} // namespace

CorpusProgram make_fibonacci(const Field& f) {
    return make_fibonacci_impl(f, "fibonacci", 5, 63);
}

CorpusProgram make_fibonacci_long(const Field& f) {
    // reaches the loop after 7 + 6*88 = 535 steps, then pads to T = 1023
    return make_fibonacci_impl(f, "fibonacci_long", 88, 1023);
}

CorpusProgram make_jnz_ap_bump(const Field& f) {
    ProgramImage p(f);
    p.emit(asm_assert_ap_imm(), f.from_u64(9));  // 0: [ap] = 9
    // 2: jmp rel 4 if [ap-1] != 0; ap++  (taken, and ap moves)
    p.emit(make_instruction(-1, -1, 1, {FlagIndex::op0_reg, FlagIndex::op1_imm,
                                        FlagIndex::pc_jnz, FlagIndex::ap_add1}),
           f.from_u64(4));
    p.emit(asm_assert_ap_imm(), f.from_u64(111));  // 4: skipped
    p.emit(asm_jmp_rel_imm(), f.zero());           // 6: jmp rel 0
    return finish("jnz_ap_bump", p, 7);
}

CorpusProgram make_ap_advance(const Field& f) {
    ProgramImage p(f);
    p.emit(asm_ap_add_imm(), f.from_u64(10));     // 0: ap += 10
    p.emit(asm_assert_ap_imm(), f.from_u64(42));  // 2: [ap] = 42
    p.emit(asm_ap_add_imm(), f.from_u64(3));      // 4: ap += 3
    p.emit(asm_jmp_rel_imm(), f.zero());          // 6: jmp rel 0
    return finish("ap_advance", p, 7);
}

CorpusProgram make_loop_pad(const Field& f) {
    ProgramImage p(f);
    p.emit(asm_jmp_rel_imm(), f.zero());  // 0: jmp rel 0
    return finish("loop_pad", p, 3);
}

CorpusProgram make_jmp_abs(const Field& f) {
    ProgramImage p(f);
    p.emit(asm_jmp_abs_imm(), f.from_u64(4));     // 0: jmp abs 4
    p.emit(asm_assert_ap_imm(), f.from_u64(99));  // 2: skipped
    p.emit(asm_jmp_rel_imm(), f.zero());          // 4: jmp rel 0
    return finish("jmp_abs", p, 3);
}

CorpusProgram make_random_program(const Field& f, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ProgramImage p(f);
    std::size_t instructions = 1 + rng() % 12;
    std::vector<std::pair<Instruction, std::optional<Felt>>> emitted;

    // Choose templates against a simulated ap, tracked relative to the
    // initial ap; fp never moves in a straight-line program.
    std::int64_t ap = 0;
    std::vector<std::int64_t> cells;      // written offsets relative to initial_ap
    for (std::size_t k = 0; k < instructions; ++k) {
        int raw_choice = (int)(rng() % 5);
        if (cells.empty() && (raw_choice == 1 || raw_choice == 2)) raw_choice = 0;
        switch (raw_choice) {
            case 0:  // [ap] = imm; ap++
                emitted.push_back({asm_assert_ap_imm(), f.from_u64(rng() % 1000)});
                cells.push_back(ap);
                ap += 1;
                break;
            case 1: {  // [ap] = [ap+a] + imm; ap++
                std::int64_t a = cells[rng() % cells.size()] - ap;
                emitted.push_back({asm_assert_ap_add_imm((int)a), f.from_u64(rng() % 1000)});
                cells.push_back(ap);
                ap += 1;
                break;
            }
            case 2: {  // [ap] = [ap+a] * [ap+b]; ap++
                std::int64_t a = cells[rng() % cells.size()] - ap;
                std::int64_t b = cells[rng() % cells.size()] - ap;
                emitted.push_back({asm_assert_ap_mul_ap((int)a, (int)b), std::nullopt});
                cells.push_back(ap);
                ap += 1;
                break;
            }
            case 3: {  // [ap] = [fp-1] or [fp-2] (the stack dummies); ap++
                int src = -(int)(1 + rng() % 2);
                emitted.push_back({asm_assert_ap_mov_fp(src), std::nullopt});
                cells.push_back(ap);
                ap += 1;
                break;
            }
            case 4: {  // ap += k, leaving holes for the gap filler
                std::uint64_t k_bump = 1 + rng() % 3;
                emitted.push_back({asm_ap_add_imm(), f.from_u64(k_bump)});
                ap += (std::int64_t)k_bump;
                break;
            }
        }
    }
    for (auto& [ins, imm] : emitted) {
        if (imm)
            p.emit(ins, *imm);
        else
            p.emit(ins);
    }
    p.emit(asm_jmp_rel_imm(), f.zero());

    // steps: all instructions once, then spin in the loop up to a power of two
    std::uint64_t to_loop = instructions;  // one step per emitted instruction
    std::uint64_t total = 1;
    while (total < to_loop + 2) total <<= 1;
    return finish("random_" + std::to_string(seed), p, total - 1);
}

std::vector<CorpusProgram> full_corpus(const Field& f) {
    std::vector<CorpusProgram> out;
    out.push_back(make_straight_line(f));
    out.push_back(make_cond_jump(f));
    out.push_back(make_fibonacci(f));
    out.push_back(make_fibonacci_long(f));
    out.push_back(make_ap_advance(f));
    out.push_back(make_loop_pad(f));
    out.push_back(make_jmp_abs(f));
    out.push_back(make_jnz_ap_bump(f));
    return out;
}

} // namespace cairo::testing
