#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "recoupler/verify.hpp"
#include "test_helpers.hpp"

using namespace recoupler;
using namespace test_helpers;

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

const OrderRegistry& registry() {
    static const OrderRegistry reg(2000);
    return reg;
}

SignMatrix wrap(PackedRows rows, Purpose purpose = Purpose::Decouple) {
    SignMatrix s;
    s.entries = std::move(rows);
    s.purpose = purpose;
    return s;
}

// Well-separated Zeeman frequencies and moderate couplings; keeps phase
// accumulations small enough for sub-1e-12 roundoff.
SpinSystem random_system(int n, std::mt19937_64& rng, bool with_zeeman = true) {
    SpinSystem sys(n);
    std::uniform_real_distribution<double> zj(-50.0, 50.0);
    std::uniform_real_distribution<double> gd(1.0, 10.0);
    for (int i = 0; i < n; ++i) sys.set_zeeman(i, with_zeeman ? kTau * (1000.0 * (i + 1) + zj(rng)) : 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) sys.set_coupling(i, j, kTau * gd(rng));
    return sys;
}

}  // namespace

TEST_CASE("weights of the reference four-spin schedule") {
    const WeightTable w = weights(wrap(fourspin_s4()));
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) CHECK(w.w(i, j) == 0);
    CHECK(w.zeeman_weight == std::vector<long>{4, 0, 0, 0});
}

TEST_CASE("weights of a recoupling schedule") {
    const WeightTable w = weights(build_recouple(4, 1, 2, registry()));
    CHECK(w.w(1, 2) == 4);
    CHECK(w.w(0, 1) == 0);
    CHECK(w.w(0, 2) == 0);
    CHECK(w.w(0, 3) == 0);
    CHECK(w.w(1, 3) == 0);
    CHECK(w.w(2, 3) == 0);
    CHECK(w.zeeman_weight == std::vector<long>{0, 0, 0, 0});
}

TEST_CASE("weights of a single-row matrix carry only the row sum") {
    const WeightTable w = weights(wrap(from_strings({"++-+"})));
    CHECK(w.coupling_weight.empty());
    CHECK(w.zeeman_weight == std::vector<long>{2});
}

TEST_CASE("refocusing simulates to the identity with no Zeeman terms") {
    auto rng = seeded_rng(41);
    SpinSystem sys = random_system(2, rng, /*with_zeeman=*/false);
    const PulseProgram p = emit(wrap(refocus_s2()), 1e-3);
    const SimResult sim = simulate(sys, p);
    CHECK(sim.flip_mask == 0);
    const TargetComparison cmp = compare_to_target(sim, Target::identity());
    CHECK(cmp.coupling_dev < 1e-10);
    CHECK(cmp.total_dev < 1e-10);
}

TEST_CASE("the unsimplified four-spin program is the identity by construction") {
    auto rng = seeded_rng(43);
    SpinSystem sys = random_system(4, rng, /*with_zeeman=*/false);
    const PulseProgram p = emit_unsimplified(wrap(fourspin_s4()), 2e-4);
    const SimResult sim = simulate(sys, p);
    const TargetComparison cmp = compare_to_target(sim, Target::identity());
    CHECK(sim.flip_mask == 0);
    CHECK(cmp.total_dev < 1e-10);
}

TEST_CASE("an empty program is the identity") {
    SpinSystem sys(2);
    PulseProgram p;
    p.n = 2;
    p.m = 0;
    p.interval_duration = 1.0;
    p.boundaries = {{}};
    const SimResult sim = simulate(sys, p);
    CHECK(sim.flip_mask == 0);
    for (double ph : sim.coupling_phase) CHECK(ph == 0.0);
    for (double ph : sim.zeeman_phase) CHECK(ph == 0.0);
}

TEST_CASE("compiled recoupling hits the ZZ target with Zeeman removal") {
    auto rng = seeded_rng(47);
    SpinSystem sys = random_system(4, rng);
    CompileRequest req;
    req.op = CompileRequest::Op::Recouple;
    req.i = 1;
    req.j = 2;
    const PulseProgram p = compile(sys, req, registry());
    const VerificationReport rep = verify_program(sys, p, Target::zz(1, 2));
    CHECK(rep.pass);
    CHECK(rep.weights_pass);
    CHECK(rep.zeeman_pass);
    CHECK(rep.oracle.coupling_dev < 1e-10);
    CHECK(rep.oracle.zeeman_dev < 1e-10);
}

TEST_CASE("negative couplings recouple through the wrapped duration branch") {
    auto rng = seeded_rng(101);
    SpinSystem sys = random_system(4, rng);
    sys.set_coupling(1, 3, -kTau * 7.5);  // target pair with g < 0
    CompileRequest req;
    req.op = CompileRequest::Op::Recouple;
    req.i = 1;
    req.j = 3;
    const PulseProgram p = compile(sys, req, registry());
    CHECK(p.interval_duration > 0.0);
    const VerificationReport rep = verify_program(sys, p, Target::zz(1, 3));
    CHECK(rep.pass);
    CHECK(rep.oracle.coupling_dev < 1e-10);
}

TEST_CASE("decoupling passes its own criterion despite live Zeeman terms") {
    auto rng = seeded_rng(53);
    SpinSystem sys = random_system(5, rng);
    CompileRequest req;
    req.op = CompileRequest::Op::Decouple;
    req.duration = 1e-4;
    const PulseProgram p = compile(sys, req, registry());
    const VerificationReport rep = verify_program(sys, p, Target::identity());
    CHECK(rep.pass);
    CHECK(rep.oracle.coupling_dev < 1e-10);
    CHECK(rep.oracle.zeeman_dev > 1.0);  // the all-plus row leaves Zeeman running
}

TEST_CASE("a ZZ target against the identity deviates by pi/2") {
    SpinSystem sys(2);
    PulseProgram p;
    p.n = 2;
    p.m = 0;
    p.interval_duration = 1.0;
    p.boundaries = {{}};
    const SimResult sim = simulate(sys, p);
    const TargetComparison cmp = compare_to_target(sim, Target::zz(0, 1));
    CHECK(cmp.coupling_dev == doctest::Approx(std::numbers::pi / 2.0));
}

TEST_CASE("compare_to_target rejects malformed targets") {
    SpinSystem sys(2);
    PulseProgram p;
    p.n = 2;
    p.m = 0;
    p.interval_duration = 1.0;
    p.boundaries = {{}};
    const SimResult sim = simulate(sys, p);
    CHECK_THROWS_AS(compare_to_target(sim, Target::zz(0, 5)), TargetShapeMismatchError);
    CHECK_THROWS_AS(compare_to_target(sim, Target::cnot(0, 1)), TargetShapeMismatchError);
}

TEST_CASE("simulate enforces the brute-force cap") {
    SpinSystem sys(21);
    PulseProgram p;
    p.n = 21;
    p.m = 0;
    p.interval_duration = 1.0;
    p.boundaries = {{}};
    CHECK_THROWS_AS(simulate(sys, p), TooManySpinsError);
}

TEST_CASE("weight-based closed form agrees with the simulation oracle") {
    auto rng = seeded_rng(59);
    std::uniform_int_distribution<int> nd(2, 10), md(1, 16);
    std::uniform_real_distribution<double> td(1e-5, 1e-3);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = nd(rng);
        const SignMatrix s = wrap(random_signs(n, md(rng), rng));
        SpinSystem sys = random_system(n, rng);
        const double t = td(rng);
        const SimResult sim = simulate(sys, emit(s, t));
        const PredictedPhases pred = phases_from_weights(weights(s), sys, t);
        for (std::size_t b = 0; b < sim.coupling_phase.size(); ++b) {
            CHECK(std::abs(sim.coupling_phase[b] - pred.coupling_phase[b]) < 1e-12);
            CHECK(std::abs(sim.zeeman_phase[b] - pred.zeeman_phase[b]) < 1e-12);
        }
    }
}

TEST_CASE("interval order is irrelevant for the verdict") {
    auto rng = seeded_rng(61);
    SpinSystem sys = random_system(4, rng);
    const SignMatrix s = build_recouple(4, 0, 3, registry());
    const double t = interval_duration(sys.coupling(0, 3), s.m());

    std::vector<int> perm(s.m());
    for (int i = 0; i < s.m(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    SignMatrix permuted = s;
    for (int r = 0; r < s.n(); ++r)
        for (int c = 0; c < s.m(); ++c) permuted.entries.set(r, c, s.entries.get(r, perm[c]));

    const TargetComparison a = compare_to_target(simulate(sys, emit(s, t)), Target::zz(0, 3));
    const TargetComparison b = compare_to_target(simulate(sys, emit(permuted, t)), Target::zz(0, 3));
    CHECK(a.coupling_dev < 1e-10);
    CHECK(b.coupling_dev < 1e-10);
    CHECK(a.zeeman_dev < 1e-10);
    CHECK(b.zeeman_dev < 1e-10);
}

TEST_CASE("decoupling verdicts are duration invariant over six orders of magnitude") {
    auto rng = seeded_rng(67);
    SpinSystem sys = random_system(4, rng);
    const SignMatrix s = build_decouple(4, registry());
    for (double t = 1e-8; t <= 1.001e-2; t *= 10.0) {
        const TargetComparison cmp = compare_to_target(simulate(sys, emit(s, t)), Target::identity());
        CHECK(cmp.coupling_dev < 1e-10);
    }
}

TEST_CASE("disjoint pairs recouple in parallel") {
    for (int n : {4, 8}) {
        const PackedRows h = normalize(registry().matrix(registry().n_bar(n))).entries();
        // Rows [1,1,2,2,3,3,...]: two spins per non-all-plus row.
        SignMatrix s;
        s.entries = PackedRows(n, h.cols());
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < h.cols(); ++c) s.entries.set(r, c, h.get(1 + r / 2, c));
        const WeightTable w = weights(s);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (i / 2 == j / 2)
                    CHECK(w.w(i, j) == h.cols());
                else
                    CHECK(w.w(i, j) == 0);
            }
    }
}

TEST_CASE("pairwise restricted oracle matches the full oracle") {
    auto rng = seeded_rng(71);
    SpinSystem sys = random_system(6, rng);
    CompileRequest req;
    req.op = CompileRequest::Op::Recouple;
    req.i = 2;
    req.j = 4;
    const PulseProgram p = compile(sys, req, registry());

    const VerificationReport full = verify_program(sys, p, Target::zz(2, 4), 1e-10, true);
    const VerificationReport pairwise = verify_program(sys, p, Target::zz(2, 4), 1e-10, true, /*max_spins=*/4);
    CHECK_FALSE(full.oracle_pairwise);
    CHECK(pairwise.oracle_pairwise);
    CHECK(full.pass);
    CHECK(pairwise.pass);
    CHECK(pairwise.oracle.coupling_dev < 1e-10);
}

TEST_CASE("dense check confirms the CNOT sandwich") {
    const GateSequence seq = cnot_wrapper(0, 1);
    CHECK(dense_gate_check(seq, Target::cnot(0, 1)) < 1e-12);

    SUBCASE("applying it twice is the identity") {
        GateSequence twice = seq;
        twice.insert(twice.end(), seq.begin(), seq.end());
        CHECK(dense_gate_check(twice, Target::identity()) < 1e-12);
    }
    SUBCASE("control fails without the coupling") {
        GateSequence gutted;
        for (const auto& g : seq)
            if (g.kind != Gate::Kind::ZZ) gutted.push_back(g);
        CHECK(dense_gate_check(gutted, Target::cnot(0, 1)) > 0.5);
    }
    SUBCASE("empty sequence vs identity") {
        CHECK(dense_gate_check({}, Target::identity()) == doctest::Approx(0.0));
    }
    SUBCASE("too many spins") {
        GateSequence wide = seq;
        wide.push_back(Gate{Gate::Kind::ZZ, 2, 3, 0.0});
        CHECK_THROWS_AS(dense_gate_check(wide, Target::cnot(0, 1)), TooManySpinsError);
    }
}
