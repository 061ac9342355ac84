#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "recoupler/pulsegen.hpp"

namespace recoupler {

// Exact integer accounting of a schedule: w_ij = sum_a s_ia * s_ja and
// z_i = sum_a s_ia. Couplings cancel iff w_ij = 0; Zeeman cancels iff z_i = 0.
struct WeightTable {
    int n = 0;
    int m = 0;
    std::vector<long> zeeman_weight;                     // z_i per spin
    std::map<std::pair<int, int>, long> coupling_weight;  // w_ij for all i < j

    long w(int i, int j) const;
};

WeightTable weights(const SignMatrix& s);

// Exact representation of the program's net unitary: the Hamiltonian is
// diagonal and X pulses permute basis states by bit flips, so the result is
// a single flip mask plus per-basis-state phases, split into the coupling
// and Zeeman contributions (the two commute and add).
struct SimResult {
    int n = 0;
    uint32_t flip_mask = 0;  // final state = initial ^ flip_mask
    std::vector<double> coupling_phase;  // radians, indexed by basis state
    std::vector<double> zeeman_phase;
};

constexpr int kDefaultSimulationCap = 20;

SimResult simulate(const SpinSystem& system, const PulseProgram& program,
                   int max_spins = kDefaultSimulationCap);

struct Target {
    enum class Kind { Identity, ZZ, Cnot };
    Kind kind = Kind::Identity;
    int i = -1, j = -1;

    static Target identity() { return {}; }
    static Target zz(int i, int j) { return Target{Kind::ZZ, i, j}; }
    static Target cnot(int i, int j) { return Target{Kind::Cnot, i, j}; }
};

// Phase comparison after removing the global phase at basis state 0.
// Coupling and Zeeman deviations are reported separately so schedules that
// only promise coupling removal can pass their own criterion.
struct TargetComparison {
    double coupling_dev = 0.0;  // radians, wrapped to (-pi, pi]
    double zeeman_dev = 0.0;
    double total_dev = 0.0;
    bool perm_ok = false;
};

TargetComparison compare_to_target(const SimResult& sim, const Target& target);

// Closed-form phases predicted by the integer weights; the independent
// counterpart of simulate() for cross-checking the two verifiers.
struct PredictedPhases {
    std::vector<double> coupling_phase;
    std::vector<double> zeeman_phase;
};

PredictedPhases phases_from_weights(const WeightTable& w, const SpinSystem& system, double t);

// Full report tying weights and (optionally) the simulation oracle together.
struct VerificationReport {
    WeightTable weight_table;
    bool weights_pass = false;   // weight criterion over the coupled pairs
    bool zeeman_pass = false;    // z == 0 where the purpose demands it
    bool zeeman_required = false;
    bool oracle_ran = false;
    bool oracle_pairwise = false;  // per-pair restricted oracle (used past the cap)
    TargetComparison oracle;
    double tolerance = 1e-10;
    bool pass = false;
};

// Weight verdict restricted to the system's coupled pairs, plus the oracle
// when requested. Systems above the simulation cap fall back to exact
// per-pair restricted simulations instead of the full-register one.
VerificationReport verify_program(const SpinSystem& system, const PulseProgram& program,
                                  const Target& target, double tolerance = 1e-10,
                                  bool run_oracle = true, int max_spins = kDefaultSimulationCap);

// Restriction of a program to a subset of spins (boundaries filtered and
// relabelled); exact for per-pair checks because the evolution factorizes.
PulseProgram restrict_program(const PulseProgram& p, const std::vector<int>& spins);

// Dense complex-matrix product of a gate sequence (at most 3 distinct spins),
// reported as the best-global-phase entrywise distance to the target.
double dense_gate_check(const GateSequence& seq, const Target& target);

}  // namespace recoupler
