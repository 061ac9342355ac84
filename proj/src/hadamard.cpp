#include "recoupler/hadamard.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace recoupler {

namespace {

std::shared_ptr<const Provenance> share(Provenance p) {
    return std::make_shared<const Provenance>(std::move(p));
}

bool is_prime_small(long q) {
    if (q < 2) return false;
    for (long d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

}  // namespace

std::string Provenance::describe() const {
    switch (kind) {
        case Kind::Base:
            return "base";
        case Kind::Sylvester:
            return "sylvester(" + (left ? left->describe() : "?") + ", " + (right ? right->describe() : "?") + ")";
        case Kind::Paley1:
            return "paley1(" + std::to_string(q) + ")";
        case Kind::Paley2:
            return "paley2(" + std::to_string(q) + ")";
        case Kind::RegistryFile:
            return "file(" + file + ")";
        case Kind::Transformed:
            return "transformed(" + (left ? left->describe() : "?") + ")";
    }
    return "?";
}

HadamardMatrix::HadamardMatrix(PackedRows entries, Provenance provenance)
    : entries_(std::move(entries)), provenance_(std::move(provenance)) {
    if (entries_.rows() != entries_.cols()) throw NonSquareError();
}

HadamardMatrix HadamardMatrix::base(int order) {
    if (order != 1 && order != 2) throw IndexOutOfRangeError("base order must be 1 or 2");
    PackedRows m(order, order);
    if (order == 2) m.set(1, 1, -1);
    return HadamardMatrix(std::move(m), Provenance{Provenance::Kind::Base});
}

bool is_hadamard(const PackedRows& m) {
    if (m.rows() != m.cols()) return false;
    const int n = m.rows();
    if (n % 2 == 1 && n != 1) return false;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (m.dot(a, b) != 0) return false;
    return true;
}

PackedRows pack_rows(const std::vector<std::vector<int>>& m) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows > 0 ? static_cast<int>(m[0].size()) : 0;
    PackedRows packed(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(m[r].size()) != cols) throw NonSquareError();
        for (int c = 0; c < cols; ++c) packed.set(r, c, m[r][c]);  // set() rejects non-sign entries
    }
    return packed;
}

bool is_hadamard(const std::vector<std::vector<int>>& m) {
    if (m.empty()) throw NonSquareError();
    if (m.size() != m[0].size()) throw NonSquareError();
    return is_hadamard(pack_rows(m));
}

HadamardMatrix sylvester(const HadamardMatrix& a, const HadamardMatrix& b) {
    const int an = a.order(), bn = b.order();
    PackedRows out(an * bn, an * bn);
    for (int i = 0; i < an; ++i)
        for (int k = 0; k < bn; ++k)
            for (int j = 0; j < an; ++j)
                for (int l = 0; l < bn; ++l)
                    out.set(i * bn + k, j * bn + l, a.entry(i, j) * b.entry(k, l));
    Provenance p{Provenance::Kind::Sylvester};
    p.left = share(a.provenance());
    p.right = share(b.provenance());
    return HadamardMatrix(std::move(out), std::move(p));
}

namespace {

// chi[a] = Legendre symbol (a/q) for a in [0,q); chi[0] = 0.
std::vector<int> legendre_table(long q) {
    std::vector<int> chi(q, -1);
    chi[0] = 0;
    for (long x = 1; x < q; ++x) chi[(x * x) % q] = 1;
    return chi;
}

}  // namespace

HadamardMatrix paley1(long q) {
    if (!is_prime_small(q)) throw NotPrimeError(q);
    if (q % 4 != 3) throw WrongResidueClassError(q, 3);

    const auto chi = legendre_table(q);
    const int n = static_cast<int>(q + 1);
    // H = I + C with C the skew conference matrix bordering the
    // Jacobsthal matrix Q[a][b] = chi(a-b).
    PackedRows h(n, n);
    for (int j = 1; j < n; ++j) h.set(j, 0, -1);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
            if (a == b) continue;  // diagonal: 0 + 1 from I
            long d = ((a - b) % q + q) % q;
            h.set(a + 1, b + 1, chi[d]);
        }
    Provenance p{Provenance::Kind::Paley1};
    p.q = q;
    return HadamardMatrix(std::move(h), std::move(p));
}

HadamardMatrix paley2(long q) {
    if (!is_prime_small(q)) throw NotPrimeError(q);
    if (q % 4 != 1) throw WrongResidueClassError(q, 1);

    const auto chi = legendre_table(q);
    const int cn = static_cast<int>(q + 1);
    // Symmetric conference matrix C of order q+1.
    std::vector<std::vector<int>> c(cn, std::vector<int>(cn, 0));
    for (int j = 1; j < cn; ++j) c[0][j] = c[j][0] = 1;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            if (a != b) {
                long d = ((a - b) % q + q) % q;
                c[a + 1][b + 1] = chi[d];
            }
    // Block form [[C+I, C-I], [C-I, -C-I]] of order 2(q+1).
    const int n = 2 * cn;
    PackedRows h(n, n);
    for (int a = 0; a < cn; ++a)
        for (int b = 0; b < cn; ++b) {
            const int d = a == b ? 1 : 0;  // c[a][b] is 0 exactly on the diagonal
            h.set(a, b, c[a][b] + d);
            h.set(a, b + cn, c[a][b] - d);
            h.set(a + cn, b, c[a][b] - d);
            h.set(a + cn, b + cn, -(c[a][b] + d));
        }
    Provenance p{Provenance::Kind::Paley2};
    p.q = q;
    return HadamardMatrix(std::move(h), std::move(p));
}

TransformOp TransformOp::permute_rows(std::vector<int> perm) {
    return TransformOp{Kind::PermuteRows, std::move(perm), 0};
}
TransformOp TransformOp::permute_cols(std::vector<int> perm) {
    return TransformOp{Kind::PermuteCols, std::move(perm), 0};
}
TransformOp TransformOp::negate_row(int r) { return TransformOp{Kind::NegateRow, {}, r}; }
TransformOp TransformOp::negate_col(int c) { return TransformOp{Kind::NegateCol, {}, c}; }

namespace {

void check_perm(const std::vector<int>& perm, int n) {
    if (static_cast<int>(perm.size()) != n) throw IndexOutOfRangeError("permutation size");
    std::vector<bool> seen(n, false);
    for (int v : perm) {
        if (v < 0 || v >= n || seen[v]) throw IndexOutOfRangeError("not a permutation");
        seen[v] = true;
    }
}

}  // namespace

HadamardMatrix transform(const HadamardMatrix& h, const std::vector<TransformOp>& ops) {
    const int n = h.order();
    PackedRows cur = h.entries();
    for (const auto& op : ops) {
        switch (op.kind) {
            case TransformOp::Kind::PermuteRows: {
                check_perm(op.perm, n);
                PackedRows next(n, n);
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < n; ++c) next.set(r, c, cur.get(op.perm[r], c));
                cur = std::move(next);
                break;
            }
            case TransformOp::Kind::PermuteCols: {
                check_perm(op.perm, n);
                PackedRows next(n, n);
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < n; ++c) next.set(r, c, cur.get(r, op.perm[c]));
                cur = std::move(next);
                break;
            }
            case TransformOp::Kind::NegateRow:
                cur.negate_row(op.index);
                break;
            case TransformOp::Kind::NegateCol:
                cur.negate_col(op.index);
                break;
        }
    }
    Provenance p{Provenance::Kind::Transformed};
    p.left = share(h.provenance());
    return HadamardMatrix(std::move(cur), std::move(p));
}

HadamardMatrix normalize(const HadamardMatrix& h) {
    const int n = h.order();
    PackedRows cur = h.entries();
    for (int r = 0; r < n; ++r)
        if (cur.get(r, 0) < 0) cur.negate_row(r);
    for (int c = 0; c < n; ++c)
        if (cur.get(0, c) < 0) cur.negate_col(c);
    if (cur == h.entries()) return h;  // already normalized: fixed point
    Provenance p{Provenance::Kind::Transformed};
    p.left = share(h.provenance());
    return HadamardMatrix(std::move(cur), std::move(p));
}

bool is_normalized(const PackedRows& m) {
    for (int c = 0; c < m.cols(); ++c)
        if (m.get(0, c) < 0) return false;
    for (int r = 0; r < m.rows(); ++r)
        if (m.get(r, 0) < 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Order registry
// ---------------------------------------------------------------------------

long OrderRegistry::default_bound() {
    if (const char* env = std::getenv("RECOUPLER_REGISTRY_BOUND")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 2) return v;
    }
    return 20000;
}

OrderRegistry::OrderRegistry(long bound) : bound_(bound) {
    if (bound_ < 2) bound_ = 2;
    recipes_.assign(bound_ + 1, Recipe{});
    present_.assign(bound_ + 1, false);

    auto mark = [&](long order, Recipe r) {
        if (order <= bound_ && !present_[order]) {
            present_[order] = true;
            recipes_[order] = r;
        }
    };

    mark(1, Recipe{Recipe::Kind::Base, 0, 0, 0, -1});
    mark(2, Recipe{Recipe::Kind::Base, 0, 0, 0, -1});

    // Sieve of Eratosthenes up to the bound; covers q for paley1 (q+1 <= bound)
    // and paley2 (2(q+1) <= bound).
    std::vector<bool> composite(bound_ + 1, false);
    for (long p = 2; p * p <= bound_; ++p)
        if (!composite[p])
            for (long m = p * p; m <= bound_; m += p) composite[m] = true;

    for (long n = 3; n <= bound_; ++n) {
        if (present_[n]) continue;
        // Prefer composing smaller members; fall back to the Paley families.
        bool done = false;
        for (long d = 2; d * d <= n && !done; ++d)
            if (n % d == 0 && present_[d] && present_[n / d]) {
                mark(n, Recipe{Recipe::Kind::Sylvester, 0, d, n / d, -1});
                done = true;
            }
        if (done) continue;
        long q1 = n - 1;
        if (q1 >= 3 && q1 % 4 == 3 && !composite[q1]) {
            mark(n, Recipe{Recipe::Kind::Paley1, q1, 0, 0, -1});
            continue;
        }
        if (n % 2 == 0) {
            long q2 = n / 2 - 1;
            if (q2 >= 5 && q2 % 4 == 1 && !composite[q2]) mark(n, Recipe{Recipe::Kind::Paley2, q2, 0, 0, -1});
        }
    }

    rebuild_order_list();
}

void OrderRegistry::close_under_products() {
    // One increasing-n pass reaches the fixpoint: both factors of any product
    // are smaller than the product itself.
    for (long n = 4; n <= bound_; ++n) {
        if (present_[n]) continue;
        for (long d = 2; d * d <= n; ++d)
            if (n % d == 0 && present_[d] && present_[n / d]) {
                present_[n] = true;
                recipes_[n] = Recipe{Recipe::Kind::Sylvester, 0, d, n / d, -1};
                break;
            }
    }
}

void OrderRegistry::rebuild_order_list() {
    orders_.clear();
    for (long n = 1; n <= bound_; ++n)
        if (present_[n]) orders_.push_back(n);
}

bool OrderRegistry::contains(long order) const {
    return order >= 1 && order <= bound_ && present_[order];
}

long OrderRegistry::n_bar(long n) const {
    if (n < 1) throw IndexOutOfRangeError("n_bar of nonpositive n");
    auto it = std::lower_bound(orders_.begin(), orders_.end(), n);
    if (it == orders_.end()) throw RegistryExhaustedError(n);
    return *it;
}

long OrderRegistry::n_under(long n) const {
    auto it = std::lower_bound(orders_.begin(), orders_.end(), n);
    if (it == orders_.begin()) return 0;
    return *(it - 1);
}

OrderGap OrderRegistry::gap(long n) const {
    OrderGap g;
    g.n = n;
    g.n_over = n_bar(n);
    g.n_under = n_under(n);
    g.delta = g.n_over - g.n_under;
    g.c = static_cast<double>(g.n_over) / static_cast<double>(n);
    return g;
}

HadamardMatrix OrderRegistry::matrix(long order) const {
    if (!contains(order)) throw RegistryExhaustedError(order);
    const Recipe& r = recipes_[order];
    switch (r.kind) {
        case Recipe::Kind::Base:
            return HadamardMatrix::base(static_cast<int>(order));
        case Recipe::Kind::Paley1:
            return paley1(r.q);
        case Recipe::Kind::Paley2:
            return paley2(r.q);
        case Recipe::Kind::Sylvester:
            return sylvester(matrix(r.a), matrix(r.b));
        case Recipe::Kind::File:
            return external_[r.file_index];
    }
    throw RegistryExhaustedError(order);
}

std::string OrderRegistry::recipe_text(long order) const {
    if (!contains(order)) throw RegistryExhaustedError(order);
    const Recipe& r = recipes_[order];
    switch (r.kind) {
        case Recipe::Kind::Base:
            return "base(" + std::to_string(order) + ")";
        case Recipe::Kind::Paley1:
            return "paley1(" + std::to_string(r.q) + ")";
        case Recipe::Kind::Paley2:
            return "paley2(" + std::to_string(r.q) + ")";
        case Recipe::Kind::Sylvester:
            return "sylvester(" + recipe_text(r.a) + ", " + recipe_text(r.b) + ")";
        case Recipe::Kind::File:
            return "file(" + external_labels_[r.file_index] + ")";
    }
    return "?";
}

void OrderRegistry::add_external(const HadamardMatrix& h, const std::string& label) {
    if (!is_hadamard(h.entries())) throw NonSignEntriesError();
    const long order = h.order();
    if (order > bound_) {
        bound_ = order;
        present_.resize(bound_ + 1, false);
        recipes_.resize(bound_ + 1, Recipe{});
    }
    if (present_[order]) return;  // keep the existing recipe
    external_.push_back(h);
    external_labels_.push_back(label);
    present_[order] = true;
    recipes_[order] = Recipe{Recipe::Kind::File, 0, 0, 0, static_cast<int>(external_.size()) - 1};
    close_under_products();  // registered orders compose with everything else
    rebuild_order_list();
}

}  // namespace recoupler
