// recoupler: compile heteronuclear spin systems into timed X-pulse programs
// (decoupling and selective recoupling) and verify them exactly.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "recoupler/analysis.hpp"
#include "recoupler/io.hpp"
#include "recoupler/verify.hpp"

namespace {

using namespace recoupler;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFail = 2;

struct RegistryOptions {
    long bound = OrderRegistry::default_bound();
    std::vector<std::string> matrix_files;

    OrderRegistry build() const {
        OrderRegistry reg(bound);
        for (const auto& path : matrix_files) reg.add_external(read_hadamard_file(path), path);
        return reg;
    }
};

void add_registry_options(CLI::App* cmd, RegistryOptions& opts) {
    cmd->add_option("--registry-bound", opts.bound, "Largest order the registry precomputes");
    cmd->add_option("--registry-matrix", opts.matrix_files,
                    "Matrix file registering an order the built-in constructions miss (repeatable)");
}

void write_to(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream os(path);
    if (!os) throw ParseError("cannot open for writing: " + path);
    os << text;
}

Target parse_target(const std::string& text) {
    if (text == "identity") return Target::identity();
    const auto parse_pair = [&](std::size_t prefix_len) {
        const auto comma = text.find(',', prefix_len);
        if (comma == std::string::npos) throw ParseError("target pair must be I,J");
        const int i = std::stoi(text.substr(prefix_len, comma - prefix_len));
        const int j = std::stoi(text.substr(comma + 1));
        return std::make_pair(i - 1, j - 1);
    };
    if (text.rfind("zz:", 0) == 0) {
        auto [i, j] = parse_pair(3);
        return Target::zz(i, j);
    }
    throw ParseError("unknown target '" + text + "' (expected identity or zz:I,J)");
}

int run(int argc, char** argv) {
    CLI::App app{"Hadamard-matrix pulse compiler and verifier for heteronuclear spin systems"};
    app.require_subcommand(1);

    // ---- hadamard ----------------------------------------------------------
    auto* hadamard_cmd = app.add_subcommand("hadamard", "Construct and check Hadamard matrices");
    hadamard_cmd->require_subcommand(1);

    auto* gen = hadamard_cmd->add_subcommand("gen", "Generate a matrix of the given order");
    long gen_order = 0;
    std::string gen_recipe = "auto";
    std::string gen_out;
    RegistryOptions gen_reg;
    gen->add_option("--order", gen_order, "Matrix order")->required();
    gen->add_option("--recipe", gen_recipe, "auto|sylvester|paley1|paley2")
        ->check(CLI::IsMember({"auto", "sylvester", "paley1", "paley2"}));
    gen->add_option("-o,--output", gen_out, "Output file ('-' for stdout)");
    add_registry_options(gen, gen_reg);

    auto* check = hadamard_cmd->add_subcommand("check", "Check a matrix file for orthogonality");
    std::string check_file;
    check->add_option("file", check_file, "Matrix file")->required();

    auto* nbar = hadamard_cmd->add_subcommand("nbar", "Nearest constructible order at or above n");
    long nbar_n = 0;
    RegistryOptions nbar_reg;
    nbar->add_option("--n", nbar_n, "Query value")->required();
    add_registry_options(nbar, nbar_reg);

    // ---- compile -----------------------------------------------------------
    auto* compile_cmd = app.add_subcommand("compile", "Compile a system and operation into a pulse program");
    std::string compile_system, compile_op = "decouple", compile_out, compile_signmat;
    int compile_i = 0, compile_j = 0, compile_knn = 0;
    double compile_t = 0.0;
    bool compile_timeline = false;
    RegistryOptions compile_reg;
    compile_cmd->add_option("--system", compile_system, "System document")->required();
    compile_cmd->add_option("--op", compile_op, "decouple|decouple-zeeman|recouple")
        ->check(CLI::IsMember({"decouple", "decouple-zeeman", "recouple"}));
    compile_cmd->add_option("--i", compile_i, "First spin of the recoupled pair (1-based)");
    compile_cmd->add_option("--j", compile_j, "Second spin of the recoupled pair (1-based)");
    compile_cmd->add_option("--t", compile_t, "Interval duration in seconds (decoupling ops)");
    compile_cmd->add_option("--knn", compile_knn, "Treat the system as a chain with k-nearest-neighbor coupling");
    compile_cmd->add_option("-o,--output", compile_out, "Output pulse program file ('-' for stdout)");
    compile_cmd->add_option("--sign-matrix", compile_signmat, "Also write the schedule's sign matrix for audit");
    compile_cmd->add_flag("--timeline", compile_timeline, "Also print a timeline rendering to stderr");
    add_registry_options(compile_cmd, compile_reg);

    // ---- verify ------------------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "Verify a pulse program against a system");
    std::string verify_system, verify_programf, verify_target = "identity";
    bool verify_oracle = false;
    double verify_tol = 1e-10;
    verify_cmd->add_option("--system", verify_system, "System document")->required();
    verify_cmd->add_option("--program", verify_programf, "Pulse program file")->required();
    verify_cmd->add_option("--target", verify_target, "identity or zz:I,J (1-based)");
    verify_cmd->add_flag("--oracle", verify_oracle, "Also run the brute-force simulation oracle");
    verify_cmd->add_option("--tolerance", verify_tol, "Phase tolerance in radians");

    // ---- analysis ----------------------------------------------------------
    auto* analysis_cmd = app.add_subcommand("analysis", "Order-availability and prime-counting reports");
    analysis_cmd->require_subcommand(1);

    auto* ctab = analysis_cmd->add_subcommand("c-table", "Per-n nearest-order stats as CSV");
    long ctab_max = 1000;
    std::string ctab_out = "-";
    RegistryOptions ctab_reg;
    ctab->add_option("--max", ctab_max, "Largest n")->required();
    ctab->add_option("-o,--output", ctab_out, "CSV output file ('-' for stdout)");
    add_registry_options(ctab, ctab_reg);

    auto* primes = analysis_cmd->add_subcommand("primes", "Prime-counting checks");
    std::string primes_check, primes_range;
    int primes_r = 3;
    long primes_sieve = PrimeSieve::kDefaultLimit;
    RegistryOptions primes_reg;
    primes->add_option("--check", primes_check, "rosser|interval|paley")
        ->required()
        ->check(CLI::IsMember({"rosser", "interval", "paley"}));
    primes->add_option("--range", primes_range, "Scan range A:B")->required();
    primes->add_option("--r", primes_r, "Window exponent for the paley check");
    primes->add_option("--sieve-limit", primes_sieve, "Sieve bound");
    add_registry_options(primes, primes_reg);

    CLI11_PARSE(app, argc, argv);

    if (*gen) {
        OrderRegistry reg = gen_reg.build();
        HadamardMatrix h = [&]() {
            if (gen_recipe == "paley1") return paley1(gen_order - 1);
            if (gen_recipe == "paley2") return paley2(gen_order / 2 - 1);
            if (gen_recipe == "sylvester") {
                for (long d = 2; d * d <= gen_order; ++d)
                    if (gen_order % d == 0 && reg.contains(d) && reg.contains(gen_order / d))
                        return sylvester(reg.matrix(d), reg.matrix(gen_order / d));
                throw RegistryExhaustedError(gen_order);
            }
            return reg.matrix(gen_order);
        }();
        std::ostringstream os;
        write_matrix(os, h.entries());
        write_to(gen_out, os.str());
        std::cerr << "order " << h.order() << " via " << h.provenance().describe() << '\n';
        return kExitOk;
    }

    if (*check) {
        HadamardMatrix h = read_hadamard_file(check_file);
        const bool ok = is_hadamard(h.entries());
        std::cout << (ok ? "hadamard" : "not-hadamard") << " order " << h.order() << '\n';
        return ok ? kExitOk : kExitVerifyFail;
    }

    if (*nbar) {
        OrderRegistry reg = nbar_reg.build();
        const OrderGap g = reg.gap(nbar_n);
        std::cout << "n " << g.n << '\n'
                  << "n_bar " << g.n_over << '\n'
                  << "n_under " << g.n_under << '\n'
                  << "gap " << g.delta << '\n'
                  << "c " << g.c << '\n'
                  << "recipe " << reg.recipe_text(g.n_over) << '\n';
        return kExitOk;
    }

    if (*compile_cmd) {
        OrderRegistry reg = compile_reg.build();
        SystemDocument doc = read_system_file(compile_system);
        if (!doc.system.heteronuclear())
            std::cerr << "warning: Zeeman separations are less than 100x the couplings; "
                         "the secular ZZ model may not hold\n";

        CompileRequest req;
        if (compile_op == "decouple")
            req.op = compile_knn > 0 ? CompileRequest::Op::KnnDecouple : CompileRequest::Op::Decouple;
        else if (compile_op == "decouple-zeeman")
            req.op = CompileRequest::Op::DecoupleZeemanFree;
        else
            req.op = compile_knn > 0 ? CompileRequest::Op::KnnRecouple : CompileRequest::Op::Recouple;
        req.i = compile_i - 1;
        req.j = compile_j - 1;
        req.k = compile_knn;
        if (compile_t > 0.0) req.duration = compile_t;

        PulseProgram p = compile(doc.system, req, reg);
        std::ostringstream os;
        write_pulse_program(os, p);
        write_to(compile_out, os.str());
        if (!compile_signmat.empty()) {
            std::ostringstream ss;
            write_sign_matrix(ss, *p.source);
            write_to(compile_signmat, ss.str());
        }
        if (compile_timeline) std::cerr << render_timeline(p);
        return kExitOk;
    }

    if (*verify_cmd) {
        SystemDocument doc = read_system_file(verify_system);
        PulseProgram p = read_pulse_program_file(verify_programf);
        if (p.n != doc.system.n())
            throw ParseError("program has n=" + std::to_string(p.n) + " but system has n=" +
                             std::to_string(doc.system.n()));
        Target target = parse_target(verify_target);
        VerificationReport rep = verify_program(doc.system, p, target, verify_tol, verify_oracle);
        std::cout << render_report(rep, doc.system, target);
        return rep.pass ? kExitOk : kExitVerifyFail;
    }

    if (*ctab) {
        OrderRegistry reg = ctab_reg.build();
        const auto table = c_table(ctab_max, reg);
        std::ostringstream os;
        write_c_table_csv(os, table);
        write_to(ctab_out, os.str());
        const CSummary s = c_summary(table);
        std::cerr << "max_c " << s.max_c << " median_c " << s.median_c << " count_c_above_1.1 "
                  << s.count_above_1_1 << " max_gap " << s.max_delta << '\n';
        return kExitOk;
    }

    if (*primes) {
        const auto colon = primes_range.find(':');
        if (colon == std::string::npos) throw ParseError("range must be A:B");
        const long lo = std::stol(primes_range.substr(0, colon));
        const long hi = std::stol(primes_range.substr(colon + 1));
        if (lo > hi || lo < 3) throw ParseError("range must satisfy 3 <= A <= B");
        PrimeSieve sieve(primes_sieve);

        if (primes_check == "rosser") {
            const RosserScan scan = rosser_scan(sieve, lo, hi);
            std::cout << "rosser scan [" << lo << "," << hi << "]\n"
                      << "checked " << scan.checked << '\n'
                      << "violations " << scan.violations << '\n'
                      << "first_violation " << scan.first_violation << '\n'
                      << "holds " << (scan.holds_everywhere ? "yes" : "no") << '\n';
            return kExitOk;
        }
        if (primes_check == "interval") {
            const IntervalScan scan = prime_interval_scan(sieve, lo, hi);
            std::cout << "prime-in-interval scan [" << lo << "," << hi << "] with eps = 2/ln n\n"
                      << "checked " << scan.checked << '\n'
                      << "misses " << scan.misses << '\n'
                      << "first_miss " << scan.first_miss << '\n'
                      << "holds " << (scan.holds_everywhere ? "yes" : "no") << '\n';
            return kExitOk;
        }
        OrderRegistry reg = primes_reg.build();
        std::cout << "paley reachability scan [" << lo << "," << hi << "]\n";
        for (int r = 1; r <= primes_r; ++r) {
            const PaleyScan scan = paley_scan(sieve, reg, lo, hi, r);
            std::cout << "r " << r << " fraction_with_3mod4 " << scan.fraction << " threshold "
                      << scan.threshold << " holds " << (scan.holds ? "yes" : "no") << '\n';
        }
        return kExitOk;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const recoupler::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
