#pragma once

#include <string>
#include <utility>
#include <vector>

#include "recoupler/hadamard.hpp"

namespace recoupler {

enum class Purpose { Decouple, DecoupleZeemanFree, Recouple, KnnDecouple, KnnRecouple };

std::string purpose_name(Purpose p);
Purpose purpose_from_name(const std::string& name);

// n x m schedule skeleton: entry (i,a) is the effective sign of spin i's
// sigma_z during interval a. Spin and interval indices are 0-based.
struct SignMatrix {
    PackedRows entries;
    Purpose purpose = Purpose::Decouple;
    int pair_i = -1, pair_j = -1;  // recoupled pair, when applicable
    int k = 0;                     // neighbor range for the chain variants

    int n() const { return entries.rows(); }
    int m() const { return entries.cols(); }
    int sign(int spin, int interval) const { return entries.get(spin, interval); }
};

// Set of spin pairs whose couplings the schedule must control.
struct Topology {
    std::vector<std::pair<int, int>> pairs;  // normalized i < j

    static Topology all_pairs(int n);
    static Topology chain(int n, int k);  // pairs with |i - j| <= k
    bool coupled(int i, int j) const;
};

struct PairCheck {
    int i, j;
    int agreement;  // columns where rows i and j agree
    int required;
    bool ok;
};

struct ValidationReport {
    std::vector<PairCheck> pairs;
    std::vector<int> row_sums;
    bool zeeman_required = false;
    bool zeeman_ok = true;
    bool pairs_ok = true;
    bool pass = false;
    std::string describe() const;
};

// Checks the purpose-specific validity conditions over the given topology:
// decoupled pairs must agree in exactly m/2 columns, the recoupled pair in
// all m, and (when the purpose removes Zeeman evolution) row sums must vanish.
ValidationReport validate(const SignMatrix& s, const Topology& topology);

// n rows of H(n_bar(n)); every pair of rows agrees in exactly m/2 columns.
SignMatrix build_decouple(int n, const OrderRegistry& registry);

// Rows drawn below the all-plus row of a normalized Hadamard matrix, so all
// row sums vanish; m grows to n_bar(n+1) when n itself is a constructible order.
SignMatrix build_decouple_zeeman(int n, const OrderRegistry& registry);

// Rows i and j share one row, all rows avoid the all-plus row, every other
// pair stays orthogonal; removes Zeeman evolution as a side effect.
SignMatrix build_recouple(int n, int i, int j, const OrderRegistry& registry);

// Chain with couplings only for |i - j| <= k: cycles k+1 rows of the nearest
// constructible order, so m depends on k alone.
SignMatrix build_knn_decouple(int n, int k, const OrderRegistry& registry);

// Chain recoupling of pair (i, j) with |i - j| <= k: rows assigned greedily so
// the pair shares one row and every other coupled pair stays orthogonal.
SignMatrix build_knn_recouple(int n, int k, int i, int j, const OrderRegistry& registry);

// Coupled pairs implied by a sign matrix's purpose and parameters.
Topology implied_topology(const SignMatrix& s);

}  // namespace recoupler
