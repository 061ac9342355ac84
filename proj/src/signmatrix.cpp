#include "recoupler/signmatrix.hpp"

#include <algorithm>
#include <sstream>

namespace recoupler {

std::string purpose_name(Purpose p) {
    switch (p) {
        case Purpose::Decouple:
            return "decouple";
        case Purpose::DecoupleZeemanFree:
            return "decouple-zeeman-free";
        case Purpose::Recouple:
            return "recouple";
        case Purpose::KnnDecouple:
            return "knn-decouple";
        case Purpose::KnnRecouple:
            return "knn-recouple";
    }
    return "?";
}

Purpose purpose_from_name(const std::string& name) {
    if (name == "decouple") return Purpose::Decouple;
    if (name == "decouple-zeeman-free") return Purpose::DecoupleZeemanFree;
    if (name == "recouple") return Purpose::Recouple;
    if (name == "knn-decouple") return Purpose::KnnDecouple;
    if (name == "knn-recouple") return Purpose::KnnRecouple;
    throw ParseError("unknown purpose: " + name);
}

Topology Topology::all_pairs(int n) {
    Topology t;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) t.pairs.emplace_back(i, j);
    return t;
}

Topology Topology::chain(int n, int k) {
    Topology t;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n && j - i <= k; ++j) t.pairs.emplace_back(i, j);
    return t;
}

bool Topology::coupled(int i, int j) const {
    if (i > j) std::swap(i, j);
    return std::find(pairs.begin(), pairs.end(), std::make_pair(i, j)) != pairs.end();
}

std::string ValidationReport::describe() const {
    std::ostringstream os;
    os << (pass ? "pass" : "fail");
    for (const auto& p : pairs)
        if (!p.ok)
            os << "; pair (" << p.i + 1 << "," << p.j + 1 << ") agreement " << p.agreement << " != "
               << p.required;
    if (zeeman_required && !zeeman_ok) os << "; nonzero row sum";
    return os.str();
}

ValidationReport validate(const SignMatrix& s, const Topology& topology) {
    ValidationReport rep;
    const int m = s.m();
    const bool recoupling = s.purpose == Purpose::Recouple || s.purpose == Purpose::KnnRecouple;
    rep.zeeman_required = s.purpose == Purpose::DecoupleZeemanFree || s.purpose == Purpose::Recouple;

    for (auto [i, j] : topology.pairs) {
        PairCheck pc;
        pc.i = i;
        pc.j = j;
        pc.agreement = s.entries.agreement(i, j);
        const bool is_target = recoupling && ((i == s.pair_i && j == s.pair_j) || (i == s.pair_j && j == s.pair_i));
        pc.required = is_target ? m : m / 2;
        pc.ok = pc.agreement == pc.required;
        rep.pairs_ok = rep.pairs_ok && pc.ok;
        rep.pairs.push_back(pc);
    }
    for (int r = 0; r < s.n(); ++r) {
        rep.row_sums.push_back(s.entries.row_sum(r));
        if (rep.zeeman_required && rep.row_sums.back() != 0) rep.zeeman_ok = false;
    }
    rep.pass = rep.pairs_ok && (!rep.zeeman_required || rep.zeeman_ok);
    return rep;
}

namespace {

// Rows of the normalized matrix for a constructible order, packed for slicing.
PackedRows normalized_order_rows(long order, const OrderRegistry& registry) {
    return normalize(registry.matrix(order)).entries();
}

PackedRows take_rows(const PackedRows& src, const std::vector<int>& rows) {
    PackedRows out(static_cast<int>(rows.size()), src.cols());
    for (int r = 0; r < out.rows(); ++r)
        for (int c = 0; c < src.cols(); ++c) out.set(r, c, src.get(rows[r], c));
    return out;
}

void check_pair(int n, int i, int j) {
    if (i < 0 || j < 0 || i >= n || j >= n)
        throw BadPairError("(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") outside 1.." +
                           std::to_string(n));
    if (i == j) throw BadPairError("i == j");
}

}  // namespace

SignMatrix build_decouple(int n, const OrderRegistry& registry) {
    if (n < 2) throw IndexOutOfRangeError("decoupling needs n >= 2");
    const long m = registry.n_bar(n);
    const PackedRows h = normalized_order_rows(m, registry);
    std::vector<int> rows(n);
    for (int r = 0; r < n; ++r) rows[r] = r;  // ties broken by lowest index
    SignMatrix s;
    s.entries = take_rows(h, rows);
    s.purpose = Purpose::Decouple;
    return s;
}

SignMatrix build_decouple_zeeman(int n, const OrderRegistry& registry) {
    if (n < 2) throw IndexOutOfRangeError("decoupling needs n >= 2");
    long m = registry.n_bar(n);
    if (m == n) m = registry.n_bar(n + 1);  // the all-plus row is excluded, so n == n_bar needs the next order
    const PackedRows h = normalized_order_rows(m, registry);
    std::vector<int> rows(n);
    for (int r = 0; r < n; ++r) rows[r] = r + 1;
    SignMatrix s;
    s.entries = take_rows(h, rows);
    s.purpose = Purpose::DecoupleZeemanFree;
    return s;
}

SignMatrix build_recouple(int n, int i, int j, const OrderRegistry& registry) {
    if (n < 2) throw IndexOutOfRangeError("recoupling needs n >= 2");
    check_pair(n, i, j);
    if (i > j) std::swap(i, j);
    const long m = registry.n_bar(n);
    const PackedRows h = normalized_order_rows(m, registry);

    // Slots hold distinct non-all-plus rows except that i and j share one.
    // For i >= 1 this reproduces the row shuffle that moves row j to slot 0
    // and duplicates row i; for i == 0 the duplicated row is row j.
    std::vector<int> rows(n);
    for (int r = 0; r < n; ++r) rows[r] = r;
    if (i == 0) {
        rows[0] = j;
        rows[j] = j;
    } else {
        rows[0] = j;
        rows[j] = i;
    }
    SignMatrix s;
    s.entries = take_rows(h, rows);
    s.purpose = Purpose::Recouple;
    s.pair_i = i;
    s.pair_j = j;
    return s;
}

SignMatrix build_knn_decouple(int n, int k, const OrderRegistry& registry) {
    if (k < 1 || k >= n) throw BadKError(std::to_string(k) + " outside 1.." + std::to_string(n - 1));
    // Cycling p distinct rows keeps every pair at chain distance < p orthogonal,
    // so the smallest valid period is k+1. Starting from n_bar(k) and escalating
    // whenever validation fails lands on the smallest order >= k+1.
    for (long m = registry.n_bar(k);; m = registry.n_bar(m + 1)) {
        const PackedRows h = normalized_order_rows(m, registry);
        const int period = static_cast<int>(std::min<long>(k + 1, m));
        std::vector<int> rows(n);
        for (int r = 0; r < n; ++r) rows[r] = r % period;
        SignMatrix s;
        s.entries = take_rows(h, rows);
        s.purpose = Purpose::KnnDecouple;
        s.k = k;
        if (validate(s, Topology::chain(n, k)).pass) return s;
    }
}

SignMatrix build_knn_recouple(int n, int k, int i, int j, const OrderRegistry& registry) {
    if (k < 1 || k >= n) throw BadKError(std::to_string(k) + " outside 1.." + std::to_string(n - 1));
    check_pair(n, i, j);
    if (i > j) std::swap(i, j);
    if (j - i > k)
        throw BadPairError("(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                           ") farther apart than k = " + std::to_string(k));

    // Greedy interval coloring of the chain with spins i and j identified;
    // left-to-right assignment needs at most k+1 distinct rows, which every
    // order >= n_bar(k+1) provides.
    for (long m = registry.n_bar(static_cast<long>(k) + 1);; m = registry.n_bar(m + 1)) {
        const PackedRows h = normalized_order_rows(m, registry);
        std::vector<int> rows(n, -1);
        bool feasible = true;
        for (int spin = 0; spin < n && feasible; ++spin) {
            if (spin == j) {
                rows[spin] = rows[i];
                continue;
            }
            std::vector<bool> used(m, false);
            for (int prev = 0; prev < spin; ++prev) {
                bool conflict = std::abs(prev - spin) <= k;
                if (spin == i) conflict = conflict || std::abs(prev - j) <= k;  // slot i also speaks for j
                if (prev == i && rows[i] >= 0) conflict = conflict || std::abs(spin - j) <= k;
                if (conflict && rows[prev] >= 0) used[rows[prev]] = true;
            }
            int pick = -1;
            for (long r = 0; r < m; ++r)
                if (!used[r]) {
                    pick = static_cast<int>(r);
                    break;
                }
            if (pick < 0)
                feasible = false;
            else
                rows[spin] = pick;
        }
        if (!feasible) continue;
        SignMatrix s;
        s.entries = take_rows(h, rows);
        s.purpose = Purpose::KnnRecouple;
        s.pair_i = i;
        s.pair_j = j;
        s.k = k;
        if (validate(s, Topology::chain(n, k)).pass) return s;
    }
}

Topology implied_topology(const SignMatrix& s) {
    switch (s.purpose) {
        case Purpose::KnnDecouple:
        case Purpose::KnnRecouple:
            return Topology::chain(s.n(), s.k);
        default:
            return Topology::all_pairs(s.n());
    }
}

}  // namespace recoupler
