#include "recoupler/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace recoupler {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Line reader that tracks numbers and skips blanks/comments.
class LineReader {
public:
    explicit LineReader(std::istream& is) : is_(is) {}

    bool next(std::string& out) {
        std::string line;
        while (std::getline(is_, line)) {
            ++line_no_;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;
            if (line[first] == '#') continue;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            out = line;
            return true;
        }
        return false;
    }

    int line_no() const { return line_no_; }

private:
    std::istream& is_;
    int line_no_ = 0;
};

long parse_long(const std::string& tok, const std::string& field, int line) {
    try {
        std::size_t pos = 0;
        long v = std::stol(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError("field '" + field + "': expected integer, got '" + tok + "'", line);
    }
}

double parse_double(const std::string& tok, const std::string& field, int line) {
    try {
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError("field '" + field + "': expected number, got '" + tok + "'", line);
    }
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

}  // namespace

void write_matrix(std::ostream& os, const PackedRows& m) {
    os << m.rows() << '\n';
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) os << (m.get(r, c) > 0 ? '+' : '-');
        os << '\n';
    }
}

namespace {

PackedRows read_matrix_body(LineReader& reader, int rows, int cols) {
    PackedRows m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        std::string line;
        if (!reader.next(line)) throw ParseError("expected " + std::to_string(rows) + " matrix rows", reader.line_no());
        // Strip trailing whitespace; the row must be exactly `cols` signs.
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.pop_back();
        if (static_cast<int>(line.size()) != cols)
            throw ParseError("row has " + std::to_string(line.size()) + " entries, expected " + std::to_string(cols),
                             reader.line_no());
        for (int c = 0; c < cols; ++c) {
            if (line[c] == '+')
                m.set(r, c, +1);
            else if (line[c] == '-')
                m.set(r, c, -1);
            else
                throw ParseError(std::string("entry must be '+' or '-', got '") + line[c] + "'", reader.line_no());
        }
    }
    return m;
}

}  // namespace

PackedRows read_matrix(std::istream& is) {
    LineReader reader(is);
    std::string line;
    if (!reader.next(line)) throw ParseError("empty matrix file", 1);
    const long n = parse_long(split(line).at(0), "order", reader.line_no());
    if (n < 1 || n > 100000) throw ParseError("field 'order': implausible order " + std::to_string(n), reader.line_no());
    return read_matrix_body(reader, static_cast<int>(n), static_cast<int>(n));
}

void write_hadamard_file(const std::string& path, const HadamardMatrix& h) {
    std::ofstream os(path);
    if (!os) throw ParseError("cannot open for writing: " + path);
    write_matrix(os, h.entries());
}

HadamardMatrix read_hadamard_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open: " + path);
    PackedRows m = read_matrix(is);
    if (m.rows() != m.cols()) throw NonSquareError();
    Provenance p{Provenance::Kind::RegistryFile};
    p.file = path;
    return HadamardMatrix(std::move(m), std::move(p));
}

void write_sign_matrix(std::ostream& os, const SignMatrix& s) {
    os << "signmatrix " << purpose_name(s.purpose);
    if (s.purpose == Purpose::KnnDecouple || s.purpose == Purpose::KnnRecouple) os << " k=" << s.k;
    if (s.pair_i >= 0) os << " i=" << s.pair_i + 1 << " j=" << s.pair_j + 1;
    os << '\n' << s.n() << ' ' << s.m() << '\n';
    for (int r = 0; r < s.n(); ++r) {
        for (int c = 0; c < s.m(); ++c) os << (s.sign(r, c) > 0 ? '+' : '-');
        os << '\n';
    }
}

SignMatrix read_sign_matrix(std::istream& is) {
    LineReader reader(is);
    std::string line;
    if (!reader.next(line)) throw ParseError("empty sign matrix file", 1);
    auto toks = split(line);
    if (toks.empty() || toks[0] != "signmatrix")
        throw ParseError("field 'header': expected 'signmatrix <purpose> ...'", reader.line_no());
    if (toks.size() < 2) throw ParseError("field 'purpose': missing", reader.line_no());

    SignMatrix s;
    s.purpose = purpose_from_name(toks[1]);
    for (std::size_t idx = 2; idx < toks.size(); ++idx) {
        const auto eq = toks[idx].find('=');
        if (eq == std::string::npos) throw ParseError("field '" + toks[idx] + "': expected key=value", reader.line_no());
        const std::string key = toks[idx].substr(0, eq);
        const long value = parse_long(toks[idx].substr(eq + 1), key, reader.line_no());
        if (key == "i")
            s.pair_i = static_cast<int>(value) - 1;
        else if (key == "j")
            s.pair_j = static_cast<int>(value) - 1;
        else if (key == "k")
            s.k = static_cast<int>(value);
        else
            throw ParseError("field '" + key + "': unknown header key", reader.line_no());
    }

    if (!reader.next(line)) throw ParseError("expected 'n m' line", reader.line_no());
    toks = split(line);
    if (toks.size() != 2) throw ParseError("field 'shape': expected 'n m'", reader.line_no());
    const long n = parse_long(toks[0], "n", reader.line_no());
    const long m = parse_long(toks[1], "m", reader.line_no());
    if (n < 1 || m < 1) throw ParseError("field 'shape': n and m must be positive", reader.line_no());
    s.entries = read_matrix_body(reader, static_cast<int>(n), static_cast<int>(m));
    return s;
}

Topology SystemDocument::declared_topology() const {
    if (topology_kind == TopologyKind::Chain) return Topology::chain(system.n(), chain_k);
    return Topology::all_pairs(system.n());
}

SystemDocument read_system(std::istream& is) {
    LineReader reader(is);
    SystemDocument doc;
    int n = -1;
    bool zeeman_seen = false;
    std::string line;
    while (reader.next(line)) {
        auto toks = split(line);
        const std::string& key = toks[0];
        if (key == "n") {
            if (toks.size() != 2) throw ParseError("field 'n': expected one value", reader.line_no());
            n = static_cast<int>(parse_long(toks[1], "n", reader.line_no()));
            if (n < 1 || n > 64) throw ParseError("field 'n': spin count must be in 1..64", reader.line_no());
            doc.system = SpinSystem(n);
        } else if (key == "zeeman_hz") {
            if (n < 0) throw ParseError("field 'zeeman_hz': n must come first", reader.line_no());
            if (static_cast<int>(toks.size()) != n + 1)
                throw ParseError("field 'zeeman_hz': expected " + std::to_string(n) + " values", reader.line_no());
            for (int i = 0; i < n; ++i)
                doc.system.set_zeeman(i, 2.0 * std::numbers::pi * parse_double(toks[i + 1], "zeeman_hz", reader.line_no()));
            zeeman_seen = true;
        } else if (key == "coupling") {
            if (n < 0) throw ParseError("field 'coupling': n must come first", reader.line_no());
            if (toks.size() != 4) throw ParseError("field 'coupling': expected 'coupling i j g_hz'", reader.line_no());
            const long i = parse_long(toks[1], "coupling.i", reader.line_no());
            const long j = parse_long(toks[2], "coupling.j", reader.line_no());
            const double g = parse_double(toks[3], "coupling.g_hz", reader.line_no());
            if (i < 1 || i > n || j < 1 || j > n)
                throw ParseError("field 'coupling': spin index outside 1.." + std::to_string(n), reader.line_no());
            if (i == j) throw ParseError("field 'coupling': self-coupling not allowed", reader.line_no());
            if (g == 0.0) throw ParseError("field 'coupling': zero coupling entries not allowed", reader.line_no());
            if (doc.system.coupled(static_cast<int>(i) - 1, static_cast<int>(j) - 1))
                throw ParseError("field 'coupling': duplicate pair " + toks[1] + "," + toks[2], reader.line_no());
            doc.system.set_coupling(static_cast<int>(i) - 1, static_cast<int>(j) - 1, 2.0 * std::numbers::pi * g);
        } else if (key == "topology") {
            if (toks.size() >= 2 && toks[1] == "all-pairs") {
                doc.topology_kind = SystemDocument::TopologyKind::AllPairs;
            } else if (toks.size() == 3 && toks[1] == "chain") {
                doc.topology_kind = SystemDocument::TopologyKind::Chain;
                doc.chain_k = static_cast<int>(parse_long(toks[2], "topology.k", reader.line_no()));
                if (doc.chain_k < 1) throw ParseError("field 'topology': chain k must be >= 1", reader.line_no());
            } else {
                throw ParseError("field 'topology': expected 'all-pairs' or 'chain K'", reader.line_no());
            }
        } else {
            throw ParseError("field '" + key + "': unknown key", reader.line_no());
        }
    }
    if (n < 0) throw ParseError("field 'n': missing", reader.line_no());
    if (!zeeman_seen) throw ParseError("field 'zeeman_hz': missing", reader.line_no());
    return doc;
}

SystemDocument read_system_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open: " + path);
    return read_system(is);
}

void write_system(std::ostream& os, const SystemDocument& doc) {
    const SpinSystem& sys = doc.system;
    os << "n " << sys.n() << '\n';
    os << "zeeman_hz";
    for (int i = 0; i < sys.n(); ++i) os << ' ' << format_double(sys.zeeman(i) / (2.0 * std::numbers::pi));
    os << '\n';
    for (const auto& [i, j, g] : sys.couplings())
        os << "coupling " << i + 1 << ' ' << j + 1 << ' ' << format_double(g / (2.0 * std::numbers::pi)) << '\n';
    if (doc.topology_kind == SystemDocument::TopologyKind::Chain)
        os << "topology chain " << doc.chain_k << '\n';
    else
        os << "topology all-pairs\n";
}

namespace {

std::string target_text(const PulseProgram& p) {
    std::string out = purpose_name(p.target);
    if (p.target == Purpose::KnnDecouple || p.target == Purpose::KnnRecouple) out += " k=" + std::to_string(p.k);
    if (p.pair_i >= 0) out += " i=" + std::to_string(p.pair_i + 1) + " j=" + std::to_string(p.pair_j + 1);
    return out;
}

}  // namespace

void write_pulse_program(std::ostream& os, const PulseProgram& p) {
    os << "pulseprogram\n";
    os << "n " << p.n << '\n';
    os << "m " << p.m << '\n';
    os << "interval_duration_s " << format_double(p.interval_duration) << '\n';
    os << "target " << target_text(p) << '\n';
    for (int b = 0; b <= p.m; ++b) {
        os << 'b' << b << ':';
        for (int spin : p.boundaries[b]) os << ' ' << spin + 1;
        os << '\n';
    }
}

PulseProgram read_pulse_program(std::istream& is) {
    LineReader reader(is);
    std::string line;
    if (!reader.next(line) || split(line) != std::vector<std::string>{"pulseprogram"})
        throw ParseError("field 'header': expected 'pulseprogram'", reader.line_no());

    PulseProgram p;
    auto expect_kv = [&](const std::string& key) {
        if (!reader.next(line)) throw ParseError("field '" + key + "': missing", reader.line_no());
        auto toks = split(line);
        if (toks.size() < 2 || toks[0] != key) throw ParseError("field '" + key + "': expected here", reader.line_no());
        return toks;
    };
    p.n = static_cast<int>(parse_long(expect_kv("n").at(1), "n", reader.line_no()));
    p.m = static_cast<int>(parse_long(expect_kv("m").at(1), "m", reader.line_no()));
    if (p.n < 1 || p.m < 0) throw ParseError("field 'n/m': implausible sizes", reader.line_no());
    p.interval_duration = parse_double(expect_kv("interval_duration_s").at(1), "interval_duration_s", reader.line_no());
    if (p.interval_duration <= 0.0) throw ParseError("field 'interval_duration_s': must be positive", reader.line_no());

    auto target_toks = expect_kv("target");
    p.target = purpose_from_name(target_toks.at(1));
    for (std::size_t idx = 2; idx < target_toks.size(); ++idx) {
        const auto eq = target_toks[idx].find('=');
        if (eq == std::string::npos) throw ParseError("field 'target': expected key=value", reader.line_no());
        const std::string key = target_toks[idx].substr(0, eq);
        const long value = parse_long(target_toks[idx].substr(eq + 1), "target." + key, reader.line_no());
        if (key == "i")
            p.pair_i = static_cast<int>(value) - 1;
        else if (key == "j")
            p.pair_j = static_cast<int>(value) - 1;
        else if (key == "k")
            p.k = static_cast<int>(value);
        else
            throw ParseError("field 'target." + key + "': unknown key", reader.line_no());
    }

    p.boundaries.assign(p.m + 1, {});
    for (int b = 0; b <= p.m; ++b) {
        if (!reader.next(line)) throw ParseError("field 'b" + std::to_string(b) + "': missing boundary line", reader.line_no());
        auto toks = split(line);
        const std::string want = "b" + std::to_string(b) + ":";
        if (toks.empty() || toks[0] != want)
            throw ParseError("field 'boundaries': expected '" + want + "', got '" + toks[0] + "'", reader.line_no());
        for (std::size_t idx = 1; idx < toks.size(); ++idx) {
            const long spin = parse_long(toks[idx], "b" + std::to_string(b), reader.line_no());
            if (spin < 1 || spin > p.n)
                throw ParseError("field 'b" + std::to_string(b) + "': spin outside 1.." + std::to_string(p.n),
                                 reader.line_no());
            p.boundaries[b].push_back(static_cast<int>(spin) - 1);
        }
    }
    return p;
}

void write_pulse_program_file(const std::string& path, const PulseProgram& p) {
    std::ofstream os(path);
    if (!os) throw ParseError("cannot open for writing: " + path);
    write_pulse_program(os, p);
}

PulseProgram read_pulse_program_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open: " + path);
    return read_pulse_program(is);
}

std::string render_timeline(const PulseProgram& p) {
    std::ostringstream os;
    os << "m = " << p.m << " intervals, t = " << format_double(p.interval_duration) << " s per interval\n";
    const int width = static_cast<int>(std::to_string(p.n).size());
    for (int spin = 0; spin < p.n; ++spin) {
        os << "spin " << std::string(width - std::to_string(spin + 1).size(), ' ') << spin + 1 << ": ";
        for (int b = 0; b <= p.m; ++b) {
            const auto& bd = p.boundaries[b];
            const long hits = std::count(bd.begin(), bd.end(), spin);
            os << (hits % 2 != 0 ? 'X' : '.');
            if (b < p.m) os << "----";
        }
        os << '\n';
    }
    return os.str();
}

std::string render_report(const VerificationReport& rep, const SpinSystem& system, const Target& target) {
    std::ostringstream os;
    os << "verification report\n";
    os << "n " << rep.weight_table.n << '\n';
    os << "m " << rep.weight_table.m << '\n';
    os << "target ";
    switch (target.kind) {
        case Target::Kind::Identity:
            os << "identity";
            break;
        case Target::Kind::ZZ:
            os << "zz:" << target.i + 1 << ',' << target.j + 1;
            break;
        case Target::Kind::Cnot:
            os << "cnot:" << target.i + 1 << ',' << target.j + 1;
            break;
    }
    os << '\n';
    os << "coupling weights (coupled pairs, w=0 cancels, w=m recouples):\n";
    for (const auto& [i, j, g] : system.couplings())
        os << "  w " << i + 1 << ' ' << j + 1 << ' ' << rep.weight_table.w(i, j) << '\n';
    os << "zeeman weights (z=0 cancels):\n";
    for (int i = 0; i < rep.weight_table.n; ++i) os << "  z " << i + 1 << ' ' << rep.weight_table.zeeman_weight[i] << '\n';
    os << "weights_verdict " << (rep.weights_pass ? "pass" : "fail") << '\n';
    os << "zeeman_removal_required " << (rep.zeeman_required ? "yes" : "no") << '\n';
    os << "zeeman_verdict " << (rep.zeeman_pass ? "pass" : "fail") << '\n';
    if (rep.oracle_ran) {
        os << "oracle " << (rep.oracle_pairwise ? "pairwise-restricted" : "full-register") << '\n';
        os << "oracle_permutation " << (rep.oracle.perm_ok ? "identity" : "non-identity") << '\n';
        os << "oracle_coupling_phase_dev " << format_double(rep.oracle.coupling_dev) << '\n';
        os << "oracle_zeeman_phase_dev " << format_double(rep.oracle.zeeman_dev) << '\n';
        os << "oracle_total_phase_dev " << format_double(rep.oracle.total_dev) << '\n';
        os << "tolerance " << format_double(rep.tolerance) << '\n';
    }
    os << "verdict " << (rep.pass ? "pass" : "fail") << '\n';
    return os.str();
}

}  // namespace recoupler
