#include "recoupler/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace recoupler {

long WeightTable::w(int i, int j) const {
    if (i > j) std::swap(i, j);
    auto it = coupling_weight.find({i, j});
    return it == coupling_weight.end() ? 0 : it->second;
}

WeightTable weights(const SignMatrix& s) {
    WeightTable t;
    t.n = s.n();
    t.m = s.m();
    for (int i = 0; i < t.n; ++i) t.zeeman_weight.push_back(s.entries.row_sum(i));
    for (int i = 0; i < t.n; ++i)
        for (int j = i + 1; j < t.n; ++j) t.coupling_weight[{i, j}] = s.entries.dot(i, j);
    return t;
}

namespace {

int sign_of_bit(uint32_t state, int spin) { return (state >> spin) & 1 ? -1 : +1; }

double wrap_phase(double x) { return std::remainder(x, 2.0 * std::numbers::pi); }

}  // namespace

SimResult simulate(const SpinSystem& system, const PulseProgram& program, int max_spins) {
    const int n = program.n;
    if (n > max_spins) throw TooManySpinsError(n, max_spins);
    if (n > 30) throw TooManySpinsError(n, 30);  // basis states are indexed by uint32_t
    if (static_cast<int>(program.boundaries.size()) != program.m + 1)
        throw ParseError("program has " + std::to_string(program.boundaries.size()) + " boundaries for m = " +
                         std::to_string(program.m));

    const uint32_t dim = uint32_t{1} << n;
    const double t = program.interval_duration;

    // Static diagonal energies per basis state.
    std::vector<double> zeeman_energy(dim, 0.0), coupling_energy(dim, 0.0);
    const auto pairs = system.couplings();
    for (uint32_t b = 0; b < dim; ++b) {
        double ez = 0.0;
        for (int i = 0; i < n; ++i) ez += -0.5 * system.zeeman(i) * sign_of_bit(b, i);
        zeeman_energy[b] = ez;
        double ec = 0.0;
        for (const auto& [i, j, g] : pairs) ec += g * sign_of_bit(b, i) * sign_of_bit(b, j);
        coupling_energy[b] = ec;
    }

    SimResult res;
    res.n = n;
    res.coupling_phase.assign(dim, 0.0);
    res.zeeman_phase.assign(dim, 0.0);

    uint32_t mask = 0;
    auto apply_boundary = [&](const std::vector<int>& pulses) {
        for (int spin : pulses) {
            if (spin < 0 || spin >= n) throw IndexOutOfRangeError("pulse on spin " + std::to_string(spin + 1));
            mask ^= uint32_t{1} << spin;  // X pulses flip basis states with no phase
        }
    };

    apply_boundary(program.boundaries[0]);
    for (int a = 0; a < program.m; ++a) {
        for (uint32_t b = 0; b < dim; ++b) {
            const uint32_t cur = b ^ mask;
            res.coupling_phase[b] += -t * coupling_energy[cur];
            res.zeeman_phase[b] += -t * zeeman_energy[cur];
        }
        apply_boundary(program.boundaries[a + 1]);
    }
    res.flip_mask = mask;
    return res;
}

TargetComparison compare_to_target(const SimResult& sim, const Target& target) {
    const int n = sim.n;
    const uint32_t dim = uint32_t{1} << n;
    if (target.kind != Target::Kind::Identity) {
        if (target.i < 0 || target.j < 0 || target.i >= n || target.j >= n || target.i == target.j)
            throw TargetShapeMismatchError("target pair outside the register");
    }
    if (target.kind == Target::Kind::Cnot)
        throw TargetShapeMismatchError("pulse programs implement diagonal evolutions; use the gate-sequence checker for CNOT");

    TargetComparison cmp;
    cmp.perm_ok = sim.flip_mask == 0;
    const double c0 = sim.coupling_phase[0];
    const double z0 = sim.zeeman_phase[0];
    for (uint32_t b = 0; b < dim; ++b) {
        double target_phase = 0.0;
        if (target.kind == Target::Kind::ZZ) {
            const int zz = sign_of_bit(b, target.i) * sign_of_bit(b, target.j);
            target_phase = -std::numbers::pi / 4.0 * (zz - 1);  // 0 when bits agree, pi/2 when they differ
        }
        cmp.coupling_dev = std::max(cmp.coupling_dev, std::abs(wrap_phase(sim.coupling_phase[b] - c0 - target_phase)));
        cmp.zeeman_dev = std::max(cmp.zeeman_dev, std::abs(wrap_phase(sim.zeeman_phase[b] - z0)));
        const double total = (sim.coupling_phase[b] - c0 - target_phase) + (sim.zeeman_phase[b] - z0);
        cmp.total_dev = std::max(cmp.total_dev, std::abs(wrap_phase(total)));
    }
    return cmp;
}

PredictedPhases phases_from_weights(const WeightTable& w, const SpinSystem& system, double t) {
    const uint32_t dim = uint32_t{1} << w.n;
    PredictedPhases p;
    p.coupling_phase.assign(dim, 0.0);
    p.zeeman_phase.assign(dim, 0.0);
    for (uint32_t b = 0; b < dim; ++b) {
        double pc = 0.0;
        for (const auto& [pair, wij] : w.coupling_weight) {
            const double g = system.coupling(pair.first, pair.second);
            if (g != 0.0) pc += -t * g * wij * sign_of_bit(b, pair.first) * sign_of_bit(b, pair.second);
        }
        p.coupling_phase[b] = pc;
        double pz = 0.0;
        for (int i = 0; i < w.n; ++i) pz += 0.5 * t * system.zeeman(i) * w.zeeman_weight[i] * sign_of_bit(b, i);
        p.zeeman_phase[b] = pz;
    }
    return p;
}

PulseProgram restrict_program(const PulseProgram& p, const std::vector<int>& spins) {
    PulseProgram out;
    out.n = static_cast<int>(spins.size());
    out.m = p.m;
    out.interval_duration = p.interval_duration;
    out.target = p.target;
    out.k = p.k;
    out.boundaries.assign(p.m + 1, {});
    for (int b = 0; b <= p.m; ++b)
        for (int spin : p.boundaries[b]) {
            auto it = std::find(spins.begin(), spins.end(), spin);
            if (it != spins.end()) out.boundaries[b].push_back(static_cast<int>(it - spins.begin()));
        }
    return out;
}

namespace {

SpinSystem restrict_system(const SpinSystem& sys, const std::vector<int>& spins) {
    SpinSystem out(static_cast<int>(spins.size()));
    for (std::size_t a = 0; a < spins.size(); ++a) {
        out.set_zeeman(static_cast<int>(a), sys.zeeman(spins[a]));
        for (std::size_t b = a + 1; b < spins.size(); ++b) {
            const double g = sys.coupling(spins[a], spins[b]);
            if (g != 0.0) out.set_coupling(static_cast<int>(a), static_cast<int>(b), g);
        }
    }
    return out;
}

// The diagonal evolution factorizes over pairs, so checking each coupled
// pair's two-spin restriction is exact for the coupling phases at any n.
TargetComparison pairwise_oracle(const SpinSystem& system, const PulseProgram& program, const Target& target) {
    TargetComparison total;
    total.perm_ok = true;
    for (const auto& [i, j, g] : system.couplings()) {
        const std::vector<int> spins{i, j};
        SpinSystem sub = restrict_system(system, spins);
        PulseProgram rp = restrict_program(program, spins);
        SimResult sim = simulate(sub, rp, 2);
        const bool is_target_pair =
            target.kind == Target::Kind::ZZ &&
            ((target.i == i && target.j == j) || (target.i == j && target.j == i));
        const Target sub_target = is_target_pair ? Target::zz(0, 1) : Target::identity();
        TargetComparison cmp = compare_to_target(sim, sub_target);
        total.coupling_dev = std::max(total.coupling_dev, cmp.coupling_dev);
        total.zeeman_dev = std::max(total.zeeman_dev, cmp.zeeman_dev);
        total.total_dev = std::max(total.total_dev, cmp.total_dev);
        total.perm_ok = total.perm_ok && cmp.perm_ok;
    }
    return total;
}

}  // namespace

VerificationReport verify_program(const SpinSystem& system, const PulseProgram& program, const Target& target,
                                  double tolerance, bool run_oracle, int max_spins) {
    VerificationReport rep;
    rep.tolerance = tolerance;

    const SignMatrix s = program.source ? *program.source : sign_matrix_from_program(program);
    rep.weight_table = weights(s);
    rep.zeeman_required = program.target == Purpose::DecoupleZeemanFree || program.target == Purpose::Recouple;

    rep.weights_pass = true;
    for (const auto& [i, j, g] : system.couplings()) {
        const bool is_target_pair =
            target.kind == Target::Kind::ZZ &&
            ((target.i == i && target.j == j) || (target.i == j && target.j == i));
        const long required = is_target_pair ? rep.weight_table.m : 0;
        if (rep.weight_table.w(i, j) != required) rep.weights_pass = false;
    }
    rep.zeeman_pass = true;
    for (long z : rep.weight_table.zeeman_weight)
        if (z != 0) rep.zeeman_pass = false;

    if (run_oracle) {
        rep.oracle_ran = true;
        if (program.n <= max_spins) {
            rep.oracle = compare_to_target(simulate(system, program, max_spins), target);
        } else {
            rep.oracle_pairwise = true;
            rep.oracle = pairwise_oracle(system, program, target);
        }
    }

    rep.pass = rep.weights_pass && (!rep.zeeman_required || rep.zeeman_pass);
    if (rep.oracle_ran) {
        const bool zeeman_matters = rep.zeeman_required;
        const double dev = zeeman_matters ? std::max(rep.oracle.coupling_dev, rep.oracle.zeeman_dev)
                                          : rep.oracle.coupling_dev;
        rep.pass = rep.pass && rep.oracle.perm_ok && dev < tolerance;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Dense gate-sequence oracle
// ---------------------------------------------------------------------------

namespace {

using Complex = std::complex<double>;
using Dense = std::vector<Complex>;  // row-major dim x dim

Dense identity_matrix(int dim) {
    Dense m(static_cast<std::size_t>(dim) * dim, Complex(0.0, 0.0));
    for (int i = 0; i < dim; ++i) m[static_cast<std::size_t>(i) * dim + i] = 1.0;
    return m;
}

Dense multiply(const Dense& a, const Dense& b, int dim) {
    Dense out(static_cast<std::size_t>(dim) * dim, Complex(0.0, 0.0));
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) {
            const Complex aik = a[static_cast<std::size_t>(i) * dim + k];
            if (aik == Complex(0.0, 0.0)) continue;
            for (int j = 0; j < dim; ++j) out[static_cast<std::size_t>(i) * dim + j] += aik * b[static_cast<std::size_t>(k) * dim + j];
        }
    return out;
}

// Single-qubit rotation exp(-i theta sigma / 2) embedded on `slot` of `dim`.
Dense embed_rotation(int slot, int qubits, char axis, double theta) {
    const Complex c = std::cos(theta / 2.0);
    const Complex ms = Complex(0.0, -1.0) * std::sin(theta / 2.0);
    // 2x2 blocks: rx = [c, ms; ms, c], ry = [c, -s; s, c]
    Complex u00 = c, u01, u10, u11 = c;
    if (axis == 'x') {
        u01 = ms;
        u10 = ms;
    } else {
        u01 = -std::sin(theta / 2.0);
        u10 = std::sin(theta / 2.0);
    }
    const int dim = 1 << qubits;
    Dense m(static_cast<std::size_t>(dim) * dim, Complex(0.0, 0.0));
    for (int b = 0; b < dim; ++b) {
        const int bit = (b >> slot) & 1;
        const int flipped = b ^ (1 << slot);
        if (bit == 0) {
            m[static_cast<std::size_t>(b) * dim + b] = u00;
            m[static_cast<std::size_t>(flipped) * dim + b] = u10;
        } else {
            m[static_cast<std::size_t>(b) * dim + b] = u11;
            m[static_cast<std::size_t>(flipped) * dim + b] = u01;
        }
    }
    return m;
}

Dense embed_zz(int slot_a, int slot_b, int qubits) {
    const int dim = 1 << qubits;
    Dense m(static_cast<std::size_t>(dim) * dim, Complex(0.0, 0.0));
    for (int b = 0; b < dim; ++b) {
        const int za = (b >> slot_a) & 1 ? -1 : 1;
        const int zb = (b >> slot_b) & 1 ? -1 : 1;
        m[static_cast<std::size_t>(b) * dim + b] = std::exp(Complex(0.0, -std::numbers::pi / 4.0 * za * zb));
    }
    return m;
}

}  // namespace

double dense_gate_check(const GateSequence& seq, const Target& target) {
    // Collect the distinct spins touched by the sequence and the target.
    std::vector<int> spins;
    auto note = [&spins](int s) {
        if (s >= 0 && std::find(spins.begin(), spins.end(), s) == spins.end()) spins.push_back(s);
    };
    for (const auto& g : seq) {
        note(g.spin);
        if (g.kind == Gate::Kind::ZZ) note(g.spin2);
    }
    if (target.kind != Target::Kind::Identity) {
        note(target.i);
        note(target.j);
    }
    std::sort(spins.begin(), spins.end());
    if (spins.empty()) spins.push_back(0);
    if (spins.size() > 3) throw TooManySpinsError(static_cast<int>(spins.size()), 3);

    auto slot_of = [&spins](int s) {
        return static_cast<int>(std::find(spins.begin(), spins.end(), s) - spins.begin());
    };
    const int qubits = static_cast<int>(spins.size());
    const int dim = 1 << qubits;

    Dense u = identity_matrix(dim);
    for (const auto& g : seq) {
        Dense gate;
        switch (g.kind) {
            case Gate::Kind::RotX:
                gate = embed_rotation(slot_of(g.spin), qubits, 'x', g.angle);
                break;
            case Gate::Kind::RotY:
                gate = embed_rotation(slot_of(g.spin), qubits, 'y', g.angle);
                break;
            case Gate::Kind::ZZ:
                gate = embed_zz(slot_of(g.spin), slot_of(g.spin2), qubits);
                break;
        }
        u = multiply(gate, u, dim);  // later gates act on the left
    }

    Dense t = identity_matrix(dim);
    if (target.kind == Target::Kind::ZZ) {
        t = embed_zz(slot_of(target.i), slot_of(target.j), qubits);
    } else if (target.kind == Target::Kind::Cnot) {
        t.assign(static_cast<std::size_t>(dim) * dim, Complex(0.0, 0.0));
        const int ci = slot_of(target.i), tj = slot_of(target.j);
        for (int b = 0; b < dim; ++b) {
            const int out = (b >> ci) & 1 ? b ^ (1 << tj) : b;
            t[static_cast<std::size_t>(out) * dim + b] = 1.0;
        }
    }

    // Best global phase by least squares, then the entrywise distance.
    Complex overlap(0.0, 0.0);
    for (std::size_t idx = 0; idx < u.size(); ++idx) overlap += u[idx] * std::conj(t[idx]);
    const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0, 0.0);
    double dist = 0.0;
    for (std::size_t idx = 0; idx < u.size(); ++idx) dist = std::max(dist, std::abs(u[idx] - phase * t[idx]));
    return dist;
}

}  // namespace recoupler
