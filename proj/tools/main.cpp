// cairo-air: Cairo machine semantics and algebraic trace toolkit
// Copyright 2026 The cairo-air Authors.
// SPDX-License-Identifier: Apache-2.0
//
// CLI: run | prove | verify | extract | fuzz. Exit codes: 0 success,
// 1 domain failure (violations, executor errors), 2 format failure.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cairo/fuzz.hpp"
#include "cairo/io.hpp"

namespace {

using namespace cairo;

int run_command(const std::string& program_path, const std::string& modulus,
                std::uint64_t steps, const std::string& output) {
    ProgramInput input = read_program_file(program_path, modulus);
    std::vector<RegisterState> trace = run_program(input.memory, input.initial, steps);
    if (output.empty())
        std::cout << trace_to_json(trace).dump(2) << "\n";
    else
        write_trace_file(output, trace);
    return 0;
}

int prove_command(const std::string& program_path, const std::string& m_star_path,
                  const std::string& modulus, std::uint64_t steps,
                  const std::string& columns_out, const std::string& statement_out) {
    ProgramInput input = read_program_file(program_path, modulus);
    SparseMemory m_star = m_star_path.empty() ? SparseMemory(*input.field)
                                              : read_memory_map_file(m_star_path, *input.field);
    ProverOutput out = prove_execution(input.memory, input.initial, steps, m_star);
    write_columns_file(columns_out, out.cols, out.memory, out.rc);
    write_statement_file(statement_out, out.statement);
    return 0;
}

bool challenges_match(const PublicStatement& stmt, const ColumnsFile& cf) {
    Challenges ch = derive_column_challenges(cf.cols, cf.memory, cf.rc);
    return ch.alpha == stmt.alpha && ch.z_mem == stmt.z_mem && ch.z_rc == stmt.z_rc;
}

int verify_command(const std::string& statement_path, const std::string& columns_path,
                   bool fail_fast, const std::string& output) {
    PublicStatement stmt = read_statement_file(statement_path);
    ColumnsFile cf = read_columns_file(columns_path);
    // A mismatch rejects the proof but the constraint report still names
    // what broke, which is the useful part under single-cell tampering.
    bool challenges_ok = challenges_match(stmt, cf);
    if (!challenges_ok)
        std::cerr << "challenge mismatch: statement challenges do not re-derive from the "
                     "committed columns\n";
    VerifyOptions opts;
    opts.max_violations = fail_fast ? 1 : 0;
    ViolationReport report = verify_all(stmt, cf.cols, cf.memory, cf.rc, opts);
    if (output.empty())
        std::cout << report_to_json(report).dump(2) << "\n";
    else
        write_report_file(output, report);
    return challenges_ok && report.empty() ? 0 : 1;
}

int extract_command(const std::string& statement_path, const std::string& columns_path,
                    const std::string& output) {
    PublicStatement stmt = read_statement_file(statement_path);
    ColumnsFile cf = read_columns_file(columns_path);
    if (!challenges_match(stmt, cf)) {
        std::cerr << "challenge mismatch: statement challenges do not re-derive from the "
                     "committed columns\n";
        return 1;
    }
    SoundnessResult result = soundness_check(stmt, cf.cols, cf.memory, cf.rc);
    if (result.ok()) {
        if (output.empty())
            std::cout << witness_to_json(*result.witness).dump(2) << "\n";
        else
            write_witness_file(output, *result.witness);
        return 0;
    }
    if (!result.report.empty()) {
        if (output.empty())
            std::cout << report_to_json(result.report).dump(2) << "\n";
        else
            write_report_file(output, result.report);
        return 1;
    }
    std::cerr << "semantic failure at step " << result.semantic_failure->step << ": "
              << result.semantic_failure->what << "\n";
    return 1;
}

int fuzz_command(const std::string& statement_path, const std::string& columns_path,
                 std::uint64_t seed, std::uint64_t iters, const std::string& mutation,
                 const std::string& output) {
    PublicStatement stmt = read_statement_file(statement_path);
    ColumnsFile cf = read_columns_file(columns_path);
    FuzzStats stats = run_fuzz_campaign(stmt, cf.cols, cf.memory, cf.rc, seed, iters,
                                        mutation_kind_from_name(mutation));
    nlohmann::json j{{"iterations", stats.iterations},
                     {"constraint_caught", stats.constraint_caught},
                     {"witness_valid", stats.witness_valid},
                     {"semantic_failure", stats.semantic_failure},
                     {"failures", stats.failures}};
    if (output.empty())
        std::cout << j.dump(2) << "\n";
    else {
        std::ofstream out(output);
        out << j.dump(2) << "\n";
    }
    return stats.semantic_failure == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cairo machine executor, trace builder, and AIR verifier"};
    app.require_subcommand(1);

    std::string program_path, m_star_path, statement_path, columns_path;
    std::string modulus, output, statement_out = "statement.json", mutation = "delta";
    std::uint64_t steps = 0, seed = 0, iters = 1000;
    bool fail_fast = false;

    auto* run = app.add_subcommand("run", "Execute a program and emit the register trace");
    run->add_option("--program", program_path, "program+memory JSON file")->required();
    run->add_option("--steps", steps, "number of steps T")->required();
    run->add_option("--modulus", modulus, "goldilocks | cairo | <decimal>");
    run->add_option("--output", output, "trace output path (stdout if omitted)");

    auto* prove = app.add_subcommand("prove", "Execute, pad, and emit columns + statement");
    prove->add_option("--program", program_path, "program+memory JSON file")->required();
    prove->add_option("--m-star", m_star_path, "public memory JSON file");
    prove->add_option("--steps", steps, "number of steps T")->required();
    prove->add_option("--modulus", modulus, "goldilocks | cairo | <decimal>");
    prove->add_option("--output", output, "columns output path")->required();
    prove->add_option("--statement-out", statement_out, "statement output path");

    auto* verify = app.add_subcommand("verify", "Evaluate all constraint groups");
    verify->add_option("--statement", statement_path, "statement JSON file")->required();
    verify->add_option("--columns", columns_path, "columns JSON file")->required();
    verify->add_flag("--fail-fast", fail_fast, "stop at the first violation");
    verify->add_option("--output", output, "report output path (stdout if omitted)");

    auto* extract = app.add_subcommand("extract", "Verify, then extract and re-validate a witness");
    extract->add_option("--statement", statement_path, "statement JSON file")->required();
    extract->add_option("--columns", columns_path, "columns JSON file")->required();
    extract->add_option("--output", output, "witness output path (stdout if omitted)");

    auto* fuzz = app.add_subcommand("fuzz", "Mutate committed cells and count outcomes");
    fuzz->add_option("--statement", statement_path, "statement JSON file")->required();
    fuzz->add_option("--columns", columns_path, "columns JSON file")->required();
    fuzz->add_option("--seed", seed, "RNG seed");
    fuzz->add_option("--iters", iters, "mutation count N");
    fuzz->add_option("--mutation", mutation, "delta | zero | random");
    fuzz->add_option("--output", output, "statistics output path (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_command(program_path, modulus, steps, output);
        if (prove->parsed())
            return prove_command(program_path, m_star_path, modulus, steps, output,
                                 statement_out);
        if (verify->parsed())
            return verify_command(statement_path, columns_path, fail_fast, output);
        if (extract->parsed()) return extract_command(statement_path, columns_path, output);
        if (fuzz->parsed())
            return fuzz_command(statement_path, columns_path, seed, iters, mutation, output);
    } catch (const cairo::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == cairo::ErrorKind::format ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
