#include "recoupler/pulsegen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace recoupler {

long PulseProgram::pulse_count() const {
    long total = 0;
    for (const auto& b : boundaries) total += static_cast<long>(b.size());
    return total;
}

long PulseProgram::pulses_on(int spin) const {
    long total = 0;
    for (const auto& b : boundaries) total += std::count(b.begin(), b.end(), spin);
    return total;
}

namespace {

PulseProgram program_shell(const SignMatrix& s, double t) {
    if (t <= 0.0) throw NonPositiveDurationError(t);
    PulseProgram p;
    p.n = s.n();
    p.m = s.m();
    p.interval_duration = t;
    p.target = s.purpose;
    p.pair_i = s.pair_i;
    p.pair_j = s.pair_j;
    p.k = s.k;
    p.boundaries.assign(p.m + 1, {});
    return p;
}

}  // namespace

PulseProgram emit(const SignMatrix& s, double t) {
    PulseProgram p = program_shell(s, t);
    const int m = s.m();
    if (m == 0) return p;
    for (int i = 0; i < s.n(); ++i) {
        if (s.sign(i, 0) < 0) p.boundaries[0].push_back(i);
        for (int b = 1; b < m; ++b)
            if (s.sign(i, b - 1) != s.sign(i, b)) p.boundaries[b].push_back(i);
        if (s.sign(i, m - 1) < 0) p.boundaries[m].push_back(i);
    }
    for (auto& b : p.boundaries) std::sort(b.begin(), b.end());
    return p;
}

PulseProgram emit_unsimplified(const SignMatrix& s, double t) {
    PulseProgram p = program_shell(s, t);
    const int m = s.m();
    for (int i = 0; i < s.n(); ++i)
        for (int a = 0; a < m; ++a)
            if (s.sign(i, a) < 0) {
                p.boundaries[a].push_back(i);      // before interval a+1
                p.boundaries[a + 1].push_back(i);  // after interval a+1
            }
    for (auto& b : p.boundaries) std::sort(b.begin(), b.end());
    return p;
}

SignMatrix sign_matrix_from_program(const PulseProgram& p) {
    SignMatrix s;
    s.entries = PackedRows(p.n, p.m);
    s.purpose = p.target;
    s.pair_i = p.pair_i;
    s.pair_j = p.pair_j;
    s.k = p.k;
    for (int i = 0; i < p.n; ++i) {
        int sign = +1;
        for (int a = 0; a < p.m; ++a) {
            const auto& b = p.boundaries[a];
            if (std::count(b.begin(), b.end(), i) % 2 != 0) sign = -sign;
            s.entries.set(i, a, sign);
        }
        const auto& last = p.boundaries[p.m];
        if (std::count(last.begin(), last.end(), i) % 2 != 0) sign = -sign;
        if (sign != +1)
            throw ParseError("program is inconsistent: spin " + std::to_string(i + 1) +
                             " has odd net pulse parity");
    }
    return s;
}

double interval_duration(double g, int m) {
    if (g == 0.0) throw ZeroCouplingError();
    if (m < 1) throw IndexOutOfRangeError("interval count must be positive");
    const double quarter = std::numbers::pi / 4.0;
    // Smallest positive solution of g*m*t = pi/4 (mod 2pi): the principal
    // branch for g > 0, one full turn back for g < 0.
    if (g > 0.0) return quarter / (g * m);
    return (quarter - 2.0 * std::numbers::pi) / (g * m);
}

void SpinSystem::set_zeeman(int i, double w) {
    if (i < 0 || i >= n_) throw IndexOutOfRangeError("spin " + std::to_string(i + 1));
    zeeman_[i] = w;
}

double SpinSystem::coupling(int i, int j) const {
    if (i > j) std::swap(i, j);
    auto it = couplings_.find({i, j});
    return it == couplings_.end() ? 0.0 : it->second;
}

void SpinSystem::set_coupling(int i, int j, double g) {
    if (i < 0 || j < 0 || i >= n_ || j >= n_)
        throw IndexOutOfRangeError("pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    if (i == j) throw BadPairError("self-coupling");
    if (i > j) std::swap(i, j);
    if (g == 0.0)
        couplings_.erase({i, j});
    else
        couplings_[{i, j}] = g;
}

std::vector<std::tuple<int, int, double>> SpinSystem::couplings() const {
    std::vector<std::tuple<int, int, double>> out;
    out.reserve(couplings_.size());
    for (const auto& [pair, g] : couplings_) out.emplace_back(pair.first, pair.second, g);
    return out;
}

Topology SpinSystem::coupled_topology() const {
    Topology t;
    for (const auto& [pair, g] : couplings_) t.pairs.push_back(pair);
    return t;
}

bool SpinSystem::heteronuclear(double ratio) const {
    double max_g = 0.0;
    for (const auto& [pair, g] : couplings_) max_g = std::max(max_g, std::abs(g));
    if (max_g == 0.0) return true;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (std::abs(zeeman_[i] - zeeman_[j]) < ratio * max_g) return false;
    return true;
}

GateSequence cnot_wrapper(int i, int j) {
    if (i == j) throw BadPairError("i == j");
    if (i < 0 || j < 0) throw BadPairError("negative index");
    const double half = std::numbers::pi / 2.0;
    // exp(-i pi/4 sigma) = Rot(pi/2), exp(+i pi/4 sigma) = Rot(-pi/2).
    return {
        Gate{Gate::Kind::RotY, j, 0, half},
        Gate{Gate::Kind::ZZ, i, j, 0.0},
        Gate{Gate::Kind::RotY, j, 0, -half},
        Gate{Gate::Kind::RotX, j, 0, half},
        Gate{Gate::Kind::RotY, i, 0, -half},
        Gate{Gate::Kind::RotX, i, 0, -half},
        Gate{Gate::Kind::RotY, i, 0, half},
    };
}

PulseProgram compile(const SpinSystem& system, const CompileRequest& request, const OrderRegistry& registry) {
    const int n = system.n();
    SignMatrix s;
    double t = 0.0;

    auto need_duration = [&]() {
        if (!request.duration) throw NonPositiveDurationError(0.0);
        if (*request.duration <= 0.0) throw NonPositiveDurationError(*request.duration);
        return *request.duration;
    };
    auto coupled_or_throw = [&](int i, int j) {
        if (!system.coupled(i, j)) throw UncoupledPairError(i, j);
        return system.coupling(i, j);
    };

    switch (request.op) {
        case CompileRequest::Op::Decouple:
            s = build_decouple(n, registry);
            t = need_duration();
            break;
        case CompileRequest::Op::DecoupleZeemanFree:
            s = build_decouple_zeeman(n, registry);
            t = need_duration();
            break;
        case CompileRequest::Op::Recouple: {
            s = build_recouple(n, request.i, request.j, registry);
            const double g = coupled_or_throw(request.i, request.j);
            t = interval_duration(g, s.m());
            break;
        }
        case CompileRequest::Op::KnnDecouple:
            s = build_knn_decouple(n, request.k, registry);
            t = need_duration();
            break;
        case CompileRequest::Op::KnnRecouple: {
            s = build_knn_recouple(n, request.k, request.i, request.j, registry);
            const double g = coupled_or_throw(request.i, request.j);
            t = interval_duration(g, s.m());
            break;
        }
    }

    PulseProgram p = emit(s, t);
    p.source = std::move(s);
    return p;
}

}  // namespace recoupler
