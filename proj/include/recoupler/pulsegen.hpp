#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "recoupler/signmatrix.hpp"

namespace recoupler {

// Timed X-pulse schedule: m equal intervals of free evolution separated by
// m+1 boundaries; boundaries[b] lists the spins pulsed at boundary b
// (boundary 0 precedes interval 1, boundary m follows interval m).
struct PulseProgram {
    int n = 0;
    int m = 0;
    double interval_duration = 0.0;  // seconds
    Purpose target = Purpose::Decouple;
    int pair_i = -1, pair_j = -1;
    int k = 0;
    std::vector<std::vector<int>> boundaries;  // sorted spin indices; repeats only in the unsimplified form

    long pulse_count() const;
    // Number of X pulses applied to one spin across all boundaries.
    long pulses_on(int spin) const;

    // The sign matrix the program was compiled from, kept for audit.
    std::optional<SignMatrix> source;
};

// Direct emission: an X pulse wherever a row changes sign between adjacent
// intervals, plus one where a minus sign touches either end of the row.
PulseProgram emit(const SignMatrix& s, double t);

// Two pulses per minus entry (one before, one after its interval); cancelling
// doubled pulses at each boundary reduces this to emit's output.
PulseProgram emit_unsimplified(const SignMatrix& s, double t);

// Inverse of emit: recovers the sign matrix, honoring repeated pulses mod 2.
// Throws ParseError when the final boundary contradicts the accumulated signs.
SignMatrix sign_matrix_from_program(const PulseProgram& p);

// Smallest t > 0 with g * m * t = pi/4 (mod 2pi).
double interval_duration(double g, int m);

// Physical target: Zeeman frequencies and secular ZZ couplings, in rad/s.
class SpinSystem {
public:
    SpinSystem() = default;
    explicit SpinSystem(int n) : n_(n), zeeman_(n, 0.0) {}

    int n() const { return n_; }
    double zeeman(int i) const { return zeeman_.at(i); }
    void set_zeeman(int i, double w);
    const std::vector<double>& zeeman_all() const { return zeeman_; }

    double coupling(int i, int j) const;  // 0 when uncoupled
    void set_coupling(int i, int j, double g);
    bool coupled(int i, int j) const { return coupling(i, j) != 0.0; }
    // Sorted (i, j, g) triples, i < j.
    std::vector<std::tuple<int, int, double>> couplings() const;
    Topology coupled_topology() const;

    // True when every Zeeman separation dominates every coupling by `ratio`.
    bool heteronuclear(double ratio = 100.0) const;

private:
    int n_ = 0;
    std::vector<double> zeeman_;
    std::map<std::pair<int, int>, double> couplings_;
};

struct Gate {
    enum class Kind { RotX, RotY, ZZ };
    Kind kind;
    int spin = 0;   // rotation target, or first spin of ZZ
    int spin2 = 0;  // second spin of ZZ
    double angle = 0.0;  // rotation angle theta in exp(-i theta sigma / 2)
};
using GateSequence = std::vector<Gate>;

// The seven-gate sandwich turning one ZZ primitive into CNOT(i -> j),
// listed in application order (index 0 acts first).
GateSequence cnot_wrapper(int i, int j);

struct CompileRequest {
    enum class Op { Decouple, DecoupleZeemanFree, Recouple, KnnDecouple, KnnRecouple };
    Op op = Op::Decouple;
    int i = -1, j = -1;
    int k = 0;
    // Required for the decoupling ops (valid for arbitrary duration);
    // recoupling derives the duration from the target pair's coupling.
    std::optional<double> duration;
};

// Builds the sign matrix for the request, picks the interval duration, and
// emits the program with the sign matrix attached for audit.
PulseProgram compile(const SpinSystem& system, const CompileRequest& request, const OrderRegistry& registry);

}  // namespace recoupler
