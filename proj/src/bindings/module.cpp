#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "recoupler/analysis.hpp"
#include "recoupler/io.hpp"
#include "recoupler/verify.hpp"

namespace py = pybind11;
using namespace recoupler;

namespace {

std::vector<std::vector<int>> unpack(const PackedRows& m) {
    std::vector<std::vector<int>> out;
    out.reserve(m.rows());
    for (int r = 0; r < m.rows(); ++r) out.push_back(m.row_signs(r));
    return out;
}

Target target_from_string(const std::string& text, int i, int j) {
    if (text == "identity") return Target::identity();
    if (text == "zz") return Target::zz(i, j);
    if (text == "cnot") return Target::cnot(i, j);
    throw ParseError("unknown target kind: " + text);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pulse-sequence compiler for decoupling and selective recoupling in "
              "heteronuclear spin systems, with exact verification oracles.";

    py::register_exception<Error>(m, "RecouplerError", PyExc_ValueError);

    // ---- hadamard ----------------------------------------------------------
    py::class_<HadamardMatrix>(m, "HadamardMatrix")
        .def_property_readonly("order", &HadamardMatrix::order)
        .def("entry", &HadamardMatrix::entry, py::arg("row"), py::arg("col"))
        .def_property_readonly("rows", [](const HadamardMatrix& h) { return unpack(h.entries()); })
        .def_property_readonly("provenance", [](const HadamardMatrix& h) { return h.provenance().describe(); })
        .def("__repr__", [](const HadamardMatrix& h) {
            return "<HadamardMatrix order=" + std::to_string(h.order()) + ">";
        });

    m.def("sylvester", &sylvester, py::arg("a"), py::arg("b"));
    m.def("paley1", &paley1, py::arg("q"));
    m.def("paley2", &paley2, py::arg("q"));
    m.def("base", &HadamardMatrix::base, py::arg("order"));
    m.def(
        "is_hadamard", [](const std::vector<std::vector<int>>& rows) { return is_hadamard(rows); },
        py::arg("rows"));
    m.def(
        "normalize", [](const HadamardMatrix& h) { return normalize(h); }, py::arg("h"));

    py::class_<OrderGap>(m, "OrderGap")
        .def_readonly("n", &OrderGap::n)
        .def_readonly("n_under", &OrderGap::n_under)
        .def_readonly("n_over", &OrderGap::n_over)
        .def_readonly("delta", &OrderGap::delta)
        .def_readonly("c", &OrderGap::c);

    py::class_<OrderRegistry>(m, "OrderRegistry")
        .def(py::init<long>(), py::arg("bound") = OrderRegistry::default_bound())
        .def_property_readonly("bound", &OrderRegistry::bound)
        .def("contains", &OrderRegistry::contains, py::arg("order"))
        .def("n_bar", &OrderRegistry::n_bar, py::arg("n"))
        .def("n_under", &OrderRegistry::n_under, py::arg("n"))
        .def("gap", &OrderRegistry::gap, py::arg("n"))
        .def("orders", &OrderRegistry::orders)
        .def("matrix", &OrderRegistry::matrix, py::arg("order"))
        .def("recipe", &OrderRegistry::recipe_text, py::arg("order"));

    // ---- sign matrices -----------------------------------------------------
    py::enum_<Purpose>(m, "Purpose")
        .value("Decouple", Purpose::Decouple)
        .value("DecoupleZeemanFree", Purpose::DecoupleZeemanFree)
        .value("Recouple", Purpose::Recouple)
        .value("KnnDecouple", Purpose::KnnDecouple)
        .value("KnnRecouple", Purpose::KnnRecouple);

    py::class_<SignMatrix>(m, "SignMatrix")
        .def_property_readonly("n", &SignMatrix::n)
        .def_property_readonly("m", &SignMatrix::m)
        .def_readonly("purpose", &SignMatrix::purpose)
        .def_readonly("pair_i", &SignMatrix::pair_i)
        .def_readonly("pair_j", &SignMatrix::pair_j)
        .def_readonly("k", &SignMatrix::k)
        .def("sign", &SignMatrix::sign, py::arg("spin"), py::arg("interval"))
        .def_property_readonly("rows", [](const SignMatrix& s) { return unpack(s.entries); })
        .def("to_text", [](const SignMatrix& s) {
            std::ostringstream os;
            write_sign_matrix(os, s);
            return os.str();
        })
        .def("__repr__", [](const SignMatrix& s) {
            return "<SignMatrix " + purpose_name(s.purpose) + " " + std::to_string(s.n()) + "x" +
                   std::to_string(s.m()) + ">";
        });

    py::class_<Topology>(m, "Topology")
        .def_static("all_pairs", &Topology::all_pairs, py::arg("n"))
        .def_static("chain", &Topology::chain, py::arg("n"), py::arg("k"))
        .def_readonly("pairs", &Topology::pairs);

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("pass_", &ValidationReport::pass)
        .def_readonly("pairs_ok", &ValidationReport::pairs_ok)
        .def_readonly("zeeman_ok", &ValidationReport::zeeman_ok)
        .def_readonly("row_sums", &ValidationReport::row_sums)
        .def("describe", &ValidationReport::describe);

    m.def("build_decouple", &build_decouple, py::arg("n"), py::arg("registry"));
    m.def("build_decouple_zeeman", &build_decouple_zeeman, py::arg("n"), py::arg("registry"));
    m.def("build_recouple", &build_recouple, py::arg("n"), py::arg("i"), py::arg("j"), py::arg("registry"));
    m.def("build_knn_decouple", &build_knn_decouple, py::arg("n"), py::arg("k"), py::arg("registry"));
    m.def("build_knn_recouple", &build_knn_recouple, py::arg("n"), py::arg("k"), py::arg("i"), py::arg("j"),
          py::arg("registry"));
    m.def("validate", &validate, py::arg("sign_matrix"), py::arg("topology"));

    // ---- pulse programs ----------------------------------------------------
    py::class_<PulseProgram>(m, "PulseProgram")
        .def_readonly("n", &PulseProgram::n)
        .def_readonly("m", &PulseProgram::m)
        .def_readonly("interval_duration", &PulseProgram::interval_duration)
        .def_readonly("target", &PulseProgram::target)
        .def_readonly("boundaries", &PulseProgram::boundaries)
        .def_property_readonly("pulse_count", &PulseProgram::pulse_count)
        .def("to_text", [](const PulseProgram& p) {
            std::ostringstream os;
            write_pulse_program(os, p);
            return os.str();
        })
        .def("timeline", &render_timeline)
        .def("__repr__", [](const PulseProgram& p) {
            return "<PulseProgram n=" + std::to_string(p.n) + " m=" + std::to_string(p.m) + ">";
        });

    m.def("emit", &emit, py::arg("sign_matrix"), py::arg("t"));
    m.def("emit_unsimplified", &emit_unsimplified, py::arg("sign_matrix"), py::arg("t"));
    m.def("sign_matrix_from_program", &sign_matrix_from_program, py::arg("program"));
    m.def("interval_duration", &interval_duration, py::arg("g"), py::arg("m"));
    m.def("program_from_text", [](const std::string& text) {
        std::istringstream is(text);
        return read_pulse_program(is);
    });

    py::class_<SpinSystem>(m, "SpinSystem")
        .def(py::init<int>(), py::arg("n"))
        .def_property_readonly("n", &SpinSystem::n)
        .def("zeeman", &SpinSystem::zeeman, py::arg("i"))
        .def("set_zeeman", &SpinSystem::set_zeeman, py::arg("i"), py::arg("omega_rad_s"))
        .def("coupling", &SpinSystem::coupling, py::arg("i"), py::arg("j"))
        .def("set_coupling", &SpinSystem::set_coupling, py::arg("i"), py::arg("j"), py::arg("g_rad_s"))
        .def("couplings", &SpinSystem::couplings)
        .def("heteronuclear", &SpinSystem::heteronuclear, py::arg("ratio") = 100.0);

    py::class_<CompileRequest> creq(m, "CompileRequest");
    py::enum_<CompileRequest::Op>(creq, "Op")
        .value("Decouple", CompileRequest::Op::Decouple)
        .value("DecoupleZeemanFree", CompileRequest::Op::DecoupleZeemanFree)
        .value("Recouple", CompileRequest::Op::Recouple)
        .value("KnnDecouple", CompileRequest::Op::KnnDecouple)
        .value("KnnRecouple", CompileRequest::Op::KnnRecouple);
    creq.def(py::init([](CompileRequest::Op op, int i, int j, int k, std::optional<double> duration) {
                 CompileRequest r;
                 r.op = op;
                 r.i = i;
                 r.j = j;
                 r.k = k;
                 r.duration = duration;
                 return r;
             }),
             py::arg("op"), py::arg("i") = -1, py::arg("j") = -1, py::arg("k") = 0,
             py::arg("duration") = std::nullopt);

    m.def("compile", &compile, py::arg("system"), py::arg("request"), py::arg("registry"));

    py::class_<Gate> gate(m, "Gate");
    py::enum_<Gate::Kind>(gate, "Kind")
        .value("RotX", Gate::Kind::RotX)
        .value("RotY", Gate::Kind::RotY)
        .value("ZZ", Gate::Kind::ZZ);
    gate.def_readonly("kind", &Gate::kind)
        .def_readonly("spin", &Gate::spin)
        .def_readonly("spin2", &Gate::spin2)
        .def_readonly("angle", &Gate::angle);

    m.def("cnot_wrapper", &cnot_wrapper, py::arg("i"), py::arg("j"));

    // ---- verification ------------------------------------------------------
    py::class_<WeightTable>(m, "WeightTable")
        .def_readonly("n", &WeightTable::n)
        .def_readonly("m", &WeightTable::m)
        .def_readonly("zeeman_weight", &WeightTable::zeeman_weight)
        .def("w", &WeightTable::w, py::arg("i"), py::arg("j"));

    m.def("weights", &weights, py::arg("sign_matrix"));

    py::class_<SimResult>(m, "SimResult")
        .def_readonly("n", &SimResult::n)
        .def_readonly("flip_mask", &SimResult::flip_mask)
        .def_readonly("coupling_phase", &SimResult::coupling_phase)
        .def_readonly("zeeman_phase", &SimResult::zeeman_phase);

    m.def("simulate", &simulate, py::arg("system"), py::arg("program"), py::arg("max_spins") = kDefaultSimulationCap);

    py::class_<Target>(m, "Target")
        .def_static("identity", &Target::identity)
        .def_static("zz", &Target::zz, py::arg("i"), py::arg("j"))
        .def_static("cnot", &Target::cnot, py::arg("i"), py::arg("j"));

    py::class_<TargetComparison>(m, "TargetComparison")
        .def_readonly("coupling_dev", &TargetComparison::coupling_dev)
        .def_readonly("zeeman_dev", &TargetComparison::zeeman_dev)
        .def_readonly("total_dev", &TargetComparison::total_dev)
        .def_readonly("perm_ok", &TargetComparison::perm_ok);

    m.def("compare_to_target", &compare_to_target, py::arg("sim"), py::arg("target"));

    py::class_<VerificationReport>(m, "VerificationReport")
        .def_readonly("weights_pass", &VerificationReport::weights_pass)
        .def_readonly("zeeman_pass", &VerificationReport::zeeman_pass)
        .def_readonly("zeeman_required", &VerificationReport::zeeman_required)
        .def_readonly("oracle_ran", &VerificationReport::oracle_ran)
        .def_readonly("oracle_pairwise", &VerificationReport::oracle_pairwise)
        .def_readonly("oracle", &VerificationReport::oracle)
        .def_readonly("tolerance", &VerificationReport::tolerance)
        .def_readonly("pass_", &VerificationReport::pass)
        .def_property_readonly("weight_table", [](const VerificationReport& r) { return r.weight_table; });

    m.def("verify_program", &verify_program, py::arg("system"), py::arg("program"), py::arg("target"),
          py::arg("tolerance") = 1e-10, py::arg("run_oracle") = true, py::arg("max_spins") = kDefaultSimulationCap);
    m.def(
        "dense_gate_check",
        [](const GateSequence& seq, const std::string& kind, int i, int j) {
            return dense_gate_check(seq, target_from_string(kind, i, j));
        },
        py::arg("sequence"), py::arg("target") = "cnot", py::arg("i") = -1, py::arg("j") = -1);

    // ---- analysis ----------------------------------------------------------
    py::class_<PrimeSieve>(m, "PrimeSieve")
        .def(py::init<long>(), py::arg("limit") = PrimeSieve::kDefaultLimit)
        .def_property_readonly("limit", &PrimeSieve::limit)
        .def("is_prime", &PrimeSieve::is_prime, py::arg("x"));

    m.def("prime_pi", &prime_pi, py::arg("sieve"), py::arg("x"));
    m.def("prime_pi_ap", &prime_pi_ap, py::arg("sieve"), py::arg("x"), py::arg("a"), py::arg("q"));

    py::class_<RosserCheck>(m, "RosserCheck")
        .def_readonly("x", &RosserCheck::x)
        .def_readonly("lower", &RosserCheck::lower)
        .def_readonly("upper", &RosserCheck::upper)
        .def_readonly("pi", &RosserCheck::pi)
        .def_readonly("holds", &RosserCheck::holds);

    m.def("rosser_check", &rosser_check, py::arg("sieve"), py::arg("x"));
    m.def("prime_in_interval", &prime_in_interval, py::arg("sieve"), py::arg("n"), py::arg("epsilon"));

    py::class_<GapStats>(m, "GapStats")
        .def_readonly("n", &GapStats::n)
        .def_readonly("n_under", &GapStats::n_under)
        .def_readonly("n_over", &GapStats::n_over)
        .def_readonly("delta", &GapStats::delta)
        .def_readonly("c", &GapStats::c);

    m.def("c_table", &c_table, py::arg("max_n"), py::arg("registry"));

    m.attr("__version__") = "0.1.0";
}
