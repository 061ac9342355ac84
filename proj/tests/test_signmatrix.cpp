#include <doctest.h>

#include "recoupler/signmatrix.hpp"
#include "test_helpers.hpp"

using namespace recoupler;
using namespace test_helpers;

namespace {

const OrderRegistry& registry() {
    static const OrderRegistry reg(2000);
    return reg;
}

// The classic recoupling row shuffle for slots i, j >= 1 (0-based): move row j
// into slot 0 and duplicate row i into slot j. Used as a golden oracle.
PackedRows classic_recouple_shuffle(const PackedRows& normalized, int n, int i, int j) {
    PackedRows out(n, normalized.cols());
    for (int slot = 0; slot < n; ++slot) {
        int src = slot;
        if (slot == 0) src = j;
        if (slot == j) src = i;
        for (int c = 0; c < normalized.cols(); ++c) out.set(slot, c, normalized.get(src, c));
    }
    return out;
}

}  // namespace

TEST_CASE("build_decouple matches the refocusing schedule for two spins") {
    const SignMatrix s = build_decouple(2, registry());
    CHECK(s.m() == 2);
    CHECK(s.entries == refocus_s2());
    CHECK(validate(s, Topology::all_pairs(2)).pass);
}

TEST_CASE("build_decouple n=4 uses four rows of an order-4 matrix") {
    const SignMatrix s = build_decouple(4, registry());
    CHECK(s.m() == 4);
    const ValidationReport rep = validate(s, Topology::all_pairs(4));
    CHECK(rep.pass);
    for (const auto& pc : rep.pairs) CHECK(pc.agreement == 2);
}

TEST_CASE("build_decouple n=5 lands in an order-8 matrix") {
    const SignMatrix s = build_decouple(5, registry());
    CHECK(s.m() == 8);
    const ValidationReport rep = validate(s, Topology::all_pairs(5));
    CHECK(rep.pass);
    CHECK(rep.pairs.size() == 10);
    for (const auto& pc : rep.pairs) CHECK(pc.agreement == 4);
}

TEST_CASE("build_decouple rejects tiny systems") {
    CHECK_THROWS_AS(build_decouple(1, registry()), IndexOutOfRangeError);
}

TEST_CASE("build_decouple_zeeman draws zero-sum rows") {
    SUBCASE("n=3 stays in order 4") {
        const SignMatrix s = build_decouple_zeeman(3, registry());
        CHECK(s.m() == 4);
        for (int r = 0; r < 3; ++r) CHECK(s.entries.row_sum(r) == 0);
        CHECK(validate(s, Topology::all_pairs(3)).pass);
    }
    SUBCASE("n=4 is forced into order 8") {
        const SignMatrix s = build_decouple_zeeman(4, registry());
        CHECK(s.m() == 8);
        CHECK(validate(s, Topology::all_pairs(4)).pass);
    }
    SUBCASE("n=2 uses rows below the all-plus row") {
        const SignMatrix s = build_decouple_zeeman(2, registry());
        CHECK(s.m() == 4);
        CHECK(s.entries.row_sum(0) == 0);
        CHECK(s.entries.row_sum(1) == 0);
        CHECK(s.entries.dot(0, 1) == 0);
    }
}

TEST_CASE("build_recouple reproduces the classic row shuffle for i,j >= 1") {
    const PackedRows h4 = normalize(registry().matrix(4)).entries();
    const SignMatrix s = build_recouple(4, 1, 2, registry());
    CHECK(s.entries == classic_recouple_shuffle(h4, 4, 1, 2));

    const ValidationReport rep = validate(s, Topology::all_pairs(4));
    CHECK(rep.pass);
    CHECK(s.entries.agreement(1, 2) == 4);
    for (int r = 0; r < 4; ++r) CHECK(s.entries.row_sum(r) == 0);
}

TEST_CASE("the classic shuffle applied to the reference order-4 schedule") {
    // Slots become [row3, row2, row2, row4] of the reference matrix.
    const PackedRows shuffled = classic_recouple_shuffle(fourspin_s4(), 4, 1, 2);
    CHECK(shuffled == from_strings({"+--+", "++--", "++--", "+-+-"}));
}

TEST_CASE("build_recouple two-spin case duplicates one row") {
    const SignMatrix s = build_recouple(2, 0, 1, registry());
    CHECK(s.m() == 2);
    CHECK(s.entries == from_strings({"+-", "+-"}));  // coupling never negated
    CHECK(validate(s, Topology::all_pairs(2)).pass);
}

TEST_CASE("build_recouple error cases") {
    CHECK_THROWS_AS(build_recouple(4, 0, 0, registry()), BadPairError);
    CHECK_THROWS_AS(build_recouple(4, 1, 7, registry()), BadPairError);
}

TEST_CASE("build_recouple valid for every pair up to n=16") {
    for (int n = 2; n <= 16; ++n) {
        const long m = registry().n_bar(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const SignMatrix s = build_recouple(n, i, j, registry());
                CHECK(s.m() == m);
                const ValidationReport rep = validate(s, Topology::all_pairs(n));
                CHECK(rep.pass);
            }
    }
}

TEST_CASE("knn decouple cycles rows with period k+1") {
    SUBCASE("k=2 chain of 6") {
        const SignMatrix s = build_knn_decouple(6, 2, registry());
        CHECK(s.m() == 4);
        CHECK(validate(s, Topology::chain(6, 2)).pass);
    }
    SUBCASE("k=3 chain of 10") {
        const SignMatrix s = build_knn_decouple(10, 3, registry());
        CHECK(s.m() == 4);
        CHECK(validate(s, Topology::chain(10, 3)).pass);
    }
    SUBCASE("k=1 alternates two rows") {
        const SignMatrix s = build_knn_decouple(8, 1, registry());
        CHECK(s.m() == 2);
        CHECK(validate(s, Topology::chain(8, 1)).pass);
    }
    SUBCASE("m depends on k only") {
        for (int k = 1; k <= 4; ++k) {
            const int m_small = build_knn_decouple(k + 2, k, registry()).m();
            const int m_large = build_knn_decouple(10 * k, k, registry()).m();
            CHECK(m_small == m_large);
        }
    }
    SUBCASE("bad k") {
        CHECK_THROWS_AS(build_knn_decouple(4, 4, registry()), BadKError);
        CHECK_THROWS_AS(build_knn_decouple(4, 0, registry()), BadKError);
    }
}

TEST_CASE("knn recouple shares a row on the pair and stays valid") {
    SUBCASE("adjacent pair on a k=1 chain") {
        const SignMatrix s = build_knn_recouple(6, 1, 2, 3, registry());
        CHECK(s.m() == registry().n_bar(2));
        CHECK(s.entries.rows_equal(2, 3));
        CHECK(validate(s, Topology::chain(6, 1)).pass);
    }
    SUBCASE("k=3 on four spins degenerates to all-pairs recoupling") {
        const SignMatrix s = build_knn_recouple(4, 3, 0, 2, registry());
        CHECK(s.m() == registry().n_bar(4));
        CHECK(validate(s, Topology::all_pairs(4)).pass);
    }
    SUBCASE("every coupled pair across k and n") {
        for (int k = 1; k <= 3; ++k)
            for (int n : {k + 2, 9}) {
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n && j - i <= k; ++j) {
                        const SignMatrix s = build_knn_recouple(n, k, i, j, registry());
                        CHECK(validate(s, Topology::chain(n, k)).pass);
                    }
            }
    }
    SUBCASE("pair outside the coupling range") {
        CHECK_THROWS_AS(build_knn_recouple(6, 1, 1, 3, registry()), BadPairError);
    }
    SUBCASE("m depends on k only") {
        const int a = build_knn_recouple(5, 2, 1, 2, registry()).m();
        const int b = build_knn_recouple(20, 2, 9, 10, registry()).m();
        CHECK(a == b);
    }
}

TEST_CASE("validate reports the reference schedule correctly") {
    SignMatrix s;
    s.entries = fourspin_s4();
    s.purpose = Purpose::Decouple;
    const ValidationReport rep = validate(s, Topology::all_pairs(4));
    CHECK(rep.pass);
    CHECK(rep.pairs.size() == 6);
    for (const auto& pc : rep.pairs) CHECK(pc.agreement == 2);

    SUBCASE("fails as a Zeeman-free schedule: the all-plus row") {
        s.purpose = Purpose::DecoupleZeemanFree;
        const ValidationReport zrep = validate(s, Topology::all_pairs(4));
        CHECK_FALSE(zrep.pass);
        CHECK(zrep.pairs_ok);
        CHECK_FALSE(zrep.zeeman_ok);
        CHECK(zrep.row_sums[0] == 4);
    }
}

TEST_CASE("validate checks the recoupled pair for full agreement") {
    const SignMatrix s = build_recouple(4, 1, 2, registry());
    const ValidationReport rep = validate(s, Topology::all_pairs(4));
    CHECK(rep.pass);
    for (const auto& pc : rep.pairs) {
        if (pc.i == 1 && pc.j == 2)
            CHECK(pc.agreement == 4);
        else
            CHECK(pc.agreement == 2);
    }
}

TEST_CASE("pairwise agreement counts are m/2 for decoupling up to n=64") {
    for (int n : {2, 3, 7, 12, 17, 33, 64}) {
        const SignMatrix s = build_decouple(n, registry());
        const int m = s.m();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) CHECK(s.entries.agreement(i, j) == m / 2);
    }
}
