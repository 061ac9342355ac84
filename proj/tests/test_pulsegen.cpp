#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "recoupler/pulsegen.hpp"
#include "recoupler/verify.hpp"
#include "test_helpers.hpp"

using namespace recoupler;
using namespace test_helpers;

namespace {

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

// Oracle for the duration rule: the accumulated angle must sit on the pi/4
// branch and no smaller positive t may.
void check_duration(double g, int m, double t) {
    CHECK(t > 0.0);
    const double angle = std::remainder(g * m * t - std::numbers::pi / 4.0, 2.0 * std::numbers::pi);
    CHECK(std::abs(angle) < 1e-12);
    CHECK(t <= 2.0 * std::numbers::pi / (std::abs(g) * m) + 1e-15);  // within one period
}

}  // namespace

TEST_CASE("emit translates the reference four-spin schedule to eight pulses") {
    const PulseProgram p = emit(wrap(fourspin_s4()), 1.0);
    REQUIRE(p.boundaries.size() == 5);
    CHECK(p.boundaries[0].empty());
    CHECK(p.boundaries[1] == std::vector<int>{2, 3});
    CHECK(p.boundaries[2] == std::vector<int>{1, 3});
    CHECK(p.boundaries[3] == std::vector<int>{2, 3});
    CHECK(p.boundaries[4] == std::vector<int>{1, 3});
    CHECK(p.pulse_count() == 8);
}

TEST_CASE("emit on the refocusing schedule gives tau X tau X") {
    const PulseProgram p = emit(wrap(refocus_s2()), 0.5);
    CHECK(p.boundaries[0].empty());
    CHECK(p.boundaries[1] == std::vector<int>{1});
    CHECK(p.boundaries[2] == std::vector<int>{1});
    CHECK(p.pulse_count() == 2);
}

TEST_CASE("emit produces no pulses for an all-plus schedule") {
    const PulseProgram p = emit(wrap(PackedRows(3, 4)), 1.0);
    for (const auto& b : p.boundaries) CHECK(b.empty());
}

TEST_CASE("emit rejects nonpositive durations") {
    CHECK_THROWS_AS(emit(wrap(refocus_s2()), 0.0), NonPositiveDurationError);
    CHECK_THROWS_AS(emit(wrap(refocus_s2()), -1.0), NonPositiveDurationError);
}

TEST_CASE("interval_duration solves the quarter-turn constraint") {
    SUBCASE("positive coupling") {
        const double g = 2.0 * std::numbers::pi * 100.0;
        const double t = interval_duration(g, 4);
        CHECK(t == doctest::Approx(312.5e-6).epsilon(1e-12));
        check_duration(g, 4, t);
    }
    SUBCASE("unit cases") {
        const double t = interval_duration(std::numbers::pi, 1);
        CHECK(t == doctest::Approx(0.25).epsilon(1e-15));
        check_duration(std::numbers::pi, 1, t);
    }
    SUBCASE("negative coupling wraps one turn back") {
        const double t = interval_duration(-std::numbers::pi, 1);
        CHECK(t == doctest::Approx(1.75).epsilon(1e-15));
        check_duration(-std::numbers::pi, 1, t);
    }
    SUBCASE("zero coupling") { CHECK_THROWS_AS(interval_duration(0.0, 4), ZeroCouplingError); }
}

TEST_CASE("cnot wrapper shape and errors") {
    const GateSequence seq = cnot_wrapper(0, 1);
    CHECK(seq.size() == 7);
    CHECK(seq[1].kind == Gate::Kind::ZZ);
    int zz_count = 0;
    for (const auto& g : seq) zz_count += g.kind == Gate::Kind::ZZ ? 1 : 0;
    CHECK(zz_count == 1);
    CHECK_THROWS_AS(cnot_wrapper(1, 1), BadPairError);
}

TEST_CASE("compile recouple derives the duration from the target pair") {
    SpinSystem sys(4);
    for (int i = 0; i < 4; ++i) sys.set_zeeman(i, 2.0 * std::numbers::pi * 1000.0 * (i + 1));
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) sys.set_coupling(i, j, 2.0 * std::numbers::pi * (2.0 + i + j));

    CompileRequest req;
    req.op = CompileRequest::Op::Recouple;
    req.i = 1;
    req.j = 2;
    const PulseProgram p = compile(sys, req, registry());
    CHECK(p.m == 4);
    CHECK(p.interval_duration == doctest::Approx(std::numbers::pi / (4.0 * sys.coupling(1, 2) * 4)));
    REQUIRE(p.source.has_value());
    CHECK(p.source->purpose == Purpose::Recouple);
    CHECK(validate(*p.source, Topology::all_pairs(4)).pass);
}

TEST_CASE("compile decouple takes the caller's duration") {
    SpinSystem sys(2);
    sys.set_coupling(0, 1, 2.0 * std::numbers::pi * 5.0);
    CompileRequest req;
    req.op = CompileRequest::Op::Decouple;
    req.duration = 1e-3;
    const PulseProgram p = compile(sys, req, registry());
    CHECK(p.m == 2);
    CHECK(p.boundaries[1] == std::vector<int>{1});
    CHECK(p.boundaries[2] == std::vector<int>{1});

    SUBCASE("missing duration is an error") {
        req.duration.reset();
        CHECK_THROWS_AS(compile(sys, req, registry()), NonPositiveDurationError);
    }
}

TEST_CASE("compile rejects recoupling of uncoupled pairs") {
    SpinSystem sys(4);
    sys.set_coupling(0, 1, 2.0 * std::numbers::pi * 5.0);
    CompileRequest req;
    req.op = CompileRequest::Op::Recouple;
    req.i = 0;
    req.j = 2;
    CHECK_THROWS_AS(compile(sys, req, registry()), UncoupledPairError);
}

TEST_CASE("pulse count stays within n*m and per-spin parity is even") {
    for (int n : {2, 5, 16, 33, 64}) {
        const PulseProgram p = emit(build_decouple(n, registry()), 1.0);
        CHECK(p.pulse_count() <= static_cast<long>(n) * p.m);
        for (int spin = 0; spin < n; ++spin) CHECK(p.pulses_on(spin) % 2 == 0);
    }
    for (int n : {4, 10, 32}) {
        const PulseProgram p = emit(build_recouple(n, 0, n / 2, registry()), 1.0);
        CHECK(p.pulse_count() <= static_cast<long>(n) * p.m);
        for (int spin = 0; spin < n; ++spin) CHECK(p.pulses_on(spin) % 2 == 0);
    }
    for (int k : {1, 2, 3}) {
        const PulseProgram p = emit(build_knn_decouple(20, k, registry()), 1.0);
        CHECK(p.pulse_count() <= static_cast<long>(20) * p.m);
    }
}

TEST_CASE("doubled pulses of the unsimplified form cancel to the direct form") {
    auto rng = seeded_rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<int> nd(1, 6), md(1, 10);
        const SignMatrix s = wrap(random_signs(nd(rng), md(rng), rng));
        const PulseProgram direct = emit(s, 1.0);
        const PulseProgram doubled = emit_unsimplified(s, 1.0);
        REQUIRE(direct.boundaries.size() == doubled.boundaries.size());
        for (std::size_t b = 0; b < direct.boundaries.size(); ++b) {
            // Reduce the doubled boundary mod 2 per spin.
            std::vector<int> reduced;
            for (int spin = 0; spin < s.n(); ++spin) {
                const auto& v = doubled.boundaries[b];
                if (std::count(v.begin(), v.end(), spin) % 2 != 0) reduced.push_back(spin);
            }
            CHECK(reduced == direct.boundaries[b]);
        }
        CHECK(sign_matrix_from_program(doubled).entries == s.entries);
    }
}

TEST_CASE("sign matrix round-trips through its program") {
    auto rng = seeded_rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<int> nd(1, 8), md(1, 12);
        const SignMatrix s = wrap(random_signs(nd(rng), md(rng), rng));
        CHECK(sign_matrix_from_program(emit(s, 1.0)).entries == s.entries);
    }

    SUBCASE("odd parity is rejected") {
        PulseProgram p;
        p.n = 1;
        p.m = 1;
        p.interval_duration = 1.0;
        p.boundaries = {{0}, {}};
        CHECK_THROWS_AS(sign_matrix_from_program(p), ParseError);
    }
}

TEST_CASE("column permutations leave the verification weights unchanged") {
    auto rng = seeded_rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const SignMatrix s = wrap(random_signs(5, 8, rng));
        std::vector<int> perm(8);
        for (int i = 0; i < 8; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        SignMatrix permuted = s;
        for (int r = 0; r < 5; ++r)
            for (int c = 0; c < 8; ++c) permuted.entries.set(r, c, s.entries.get(r, perm[c]));
        const WeightTable a = weights(s);
        const WeightTable b = weights(permuted);
        CHECK(a.coupling_weight == b.coupling_weight);
        CHECK(a.zeeman_weight == b.zeeman_weight);
    }
}

TEST_CASE("spin system stores couplings symmetrically and flags narrow systems") {
    SpinSystem sys(3);
    sys.set_zeeman(0, 2.0 * std::numbers::pi * 100.0);
    sys.set_zeeman(1, 2.0 * std::numbers::pi * 5000.0);
    sys.set_zeeman(2, 2.0 * std::numbers::pi * 9000.0);
    sys.set_coupling(2, 0, 2.0 * std::numbers::pi * 3.0);
    CHECK(sys.coupling(0, 2) == sys.coupling(2, 0));
    CHECK(sys.coupled(0, 2));
    CHECK_FALSE(sys.coupled(0, 1));
    CHECK(sys.heteronuclear());

    sys.set_coupling(0, 1, 2.0 * std::numbers::pi * 60.0);  // separation < 100x coupling
    CHECK_FALSE(sys.heteronuclear());
    CHECK_THROWS_AS(sys.set_coupling(1, 1, 1.0), BadPairError);
}
