#pragma once

#include <iosfwd>
#include <string>

#include "recoupler/pulsegen.hpp"
#include "recoupler/verify.hpp"

namespace recoupler {

// Plain-text matrix format: first line the order, then one line of
// '+'/'-' characters per row.
void write_matrix(std::ostream& os, const PackedRows& m);
PackedRows read_matrix(std::istream& is);

void write_hadamard_file(const std::string& path, const HadamardMatrix& h);
HadamardMatrix read_hadamard_file(const std::string& path);

// Sign matrices use the same body prefixed by a header line naming the
// purpose and its (i, j, k) parameters; spin labels are 1-based on disk.
void write_sign_matrix(std::ostream& os, const SignMatrix& s);
SignMatrix read_sign_matrix(std::istream& is);

// System document: spin count, Zeeman frequencies in Hz, couplings in Hz
// (converted to rad/s on load), and an optional topology declaration.
struct SystemDocument {
    SpinSystem system;
    enum class TopologyKind { AllPairs, Chain } topology_kind = TopologyKind::AllPairs;
    int chain_k = 0;

    Topology declared_topology() const;
};

SystemDocument read_system(std::istream& is);
SystemDocument read_system_file(const std::string& path);
void write_system(std::ostream& os, const SystemDocument& doc);

// Pulse program document: n, m, interval_duration_s (17 significant digits,
// round-trips bit-exactly through strtod), target, and m+1 boundary lines.
void write_pulse_program(std::ostream& os, const PulseProgram& p);
PulseProgram read_pulse_program(std::istream& is);
void write_pulse_program_file(const std::string& path, const PulseProgram& p);
PulseProgram read_pulse_program_file(const std::string& path);

// One row per spin, one segment per interval, X marks at pulsed boundaries.
std::string render_timeline(const PulseProgram& p);

// Structured-text verification report.
std::string render_report(const VerificationReport& rep, const SpinSystem& system, const Target& target);

}  // namespace recoupler
