#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "recoupler/packed_rows.hpp"

namespace recoupler {

// How a Hadamard matrix was obtained; kept as a tree so composite
// constructions stay auditable.
struct Provenance {
    enum class Kind { Base, Sylvester, Paley1, Paley2, RegistryFile, Transformed };

    Provenance() = default;
    explicit Provenance(Kind k) : kind(k) {}

    Kind kind = Kind::Base;
    long q = 0;  // Paley prime
    std::shared_ptr<const Provenance> left, right;
    std::string file;

    std::string describe() const;
};

// Square {+1,-1} matrix with pairwise orthogonal rows, H * H^T = n * I.
// Instances are immutable; transformations return new values.
class HadamardMatrix {
public:
    // Orders 1 and 2 are the seed matrices every larger construction composes.
    static HadamardMatrix base(int order);

    HadamardMatrix(PackedRows entries, Provenance provenance);

    int order() const { return entries_.rows(); }
    int entry(int r, int c) const { return entries_.get(r, c); }
    const PackedRows& entries() const { return entries_; }
    const Provenance& provenance() const { return provenance_; }

private:
    PackedRows entries_;
    Provenance provenance_;
};

// Exact orthogonality check: every pair of rows must agree in exactly
// half of the columns (integer arithmetic, no tolerance).
bool is_hadamard(const PackedRows& m);

// Validating overload for unpacked input; throws NonSquare / NonSignEntries.
bool is_hadamard(const std::vector<std::vector<int>>& m);

PackedRows pack_rows(const std::vector<std::vector<int>>& m);

// Kronecker product of two Hadamard matrices, order a.n * b.n.
HadamardMatrix sylvester(const HadamardMatrix& a, const HadamardMatrix& b);

// Quadratic-residue construction, order q+1, for primes q = 3 mod 4.
HadamardMatrix paley1(long q);

// Conference-matrix construction, order 2(q+1), for primes q = 1 mod 4.
HadamardMatrix paley2(long q);

struct TransformOp {
    enum class Kind { PermuteRows, PermuteCols, NegateRow, NegateCol };
    Kind kind;
    std::vector<int> perm;  // image[i] = source index, for the permute kinds
    int index = 0;          // row/col for the negate kinds

    static TransformOp permute_rows(std::vector<int> perm);
    static TransformOp permute_cols(std::vector<int> perm);
    static TransformOp negate_row(int r);
    static TransformOp negate_col(int c);
};

// Row/column permutations and negations; all preserve orthogonality.
HadamardMatrix transform(const HadamardMatrix& h, const std::vector<TransformOp>& ops);

// Negation-only canonical form with all +1 in the first row and column.
HadamardMatrix normalize(const HadamardMatrix& h);

bool is_normalized(const PackedRows& m);

// Nearest constructible orders around n.
struct OrderGap {
    long n;
    long n_under = 0;  // largest order < n known to the registry (0 if none)
    long n_over = 0;   // smallest order >= n
    long delta = 0;    // n_over - n_under
    double c = 0.0;    // n_over / n
};

// Orders we can actually build, with a recipe per order. Built once from
// {1, 2}, the two Paley families over primes, and closure under products;
// externally supplied matrices may be registered for orders outside that set.
// Registration is part of initialization: finish all add_external calls
// before sharing the registry across threads, after which every member is
// const and safe for concurrent reads.
class OrderRegistry {
public:
    struct Recipe {
        enum class Kind { Base, Paley1, Paley2, Sylvester, File };
        Kind kind = Kind::Base;
        long q = 0;     // Paley prime
        long a = 0, b = 0;  // Sylvester factors
        int file_index = -1;
    };

    static long default_bound();  // 20000 unless RECOUPLER_REGISTRY_BOUND is set

    explicit OrderRegistry(long bound = default_bound());

    long bound() const { return bound_; }
    bool contains(long order) const;

    // Smallest constructible order >= n; throws RegistryExhausted past the bound.
    long n_bar(long n) const;

    // Largest constructible order < n, or 0 when none exists.
    long n_under(long n) const;

    OrderGap gap(long n) const;

    const std::vector<long>& orders() const { return orders_; }

    // Builds the matrix for a constructible order by executing its recipe.
    HadamardMatrix matrix(long order) const;

    std::string recipe_text(long order) const;

    // Registers a user-supplied matrix (e.g. an order our constructions miss,
    // like 52 or 92). Validates orthogonality, grows the bound when needed,
    // and re-closes the constructible set under products.
    void add_external(const HadamardMatrix& h, const std::string& label);

private:
    long bound_;
    std::vector<Recipe> recipes_;  // indexed by order; kind meaningless where absent
    std::vector<bool> present_;
    std::vector<long> orders_;
    std::vector<HadamardMatrix> external_;
    std::vector<std::string> external_labels_;

    void rebuild_order_list();
    void close_under_products();
};

}  // namespace recoupler
