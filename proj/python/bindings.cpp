// Python bindings for the core library. Parameter documents cross the
// boundary as JSON text; results come back as plain dicts and lists.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tisbm/dynamics.hpp"
#include "tisbm/errors.hpp"
#include "tisbm/groundstate.hpp"
#include "tisbm/io.hpp"
#include "tisbm/model.hpp"
#include "tisbm/oracle.hpp"
#include "tisbm/units.hpp"

namespace py = pybind11;
using namespace tisbm;

namespace {

py::dict trace_dict(const MagnetizationTrace& tr) {
    py::dict d;
    d["t"] = tr.times;
    d["sigma1z"] = tr.sigma1z;
    d["sigma2z"] = tr.sigma2z;
    d["sigma_total"] = tr.sigma_total;
    d["regime"] = tr.regime ? py::object(py::str(to_string(*tr.regime))) : py::object(py::none());
    d["formula_id"] = tr.formula_id;
    return d;
}

SolverConfig solver(double tol, int max_iter, bool include_gamma_z) {
    SolverConfig cfg;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    cfg.include_gamma_z_shift = include_gamma_z;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Two-impurity spin-boson model: sector mapping, closed-form dynamics, variational ground state, "
              "exact-diagonalization oracle";

    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<UnsupportedQuery>(m, "UnsupportedQuery", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<TisbmParams>(m, "Params")
        .def_static("from_json", &io::parse_params, py::arg("text"))
        .def("to_json", [](const TisbmParams& p) { return io::dump_json(io::params_to_json(p)); })
        .def_readonly("omega1", &TisbmParams::omega1)
        .def_readonly("omega2", &TisbmParams::omega2)
        .def_readonly("gamma_x", &TisbmParams::gamma_x)
        .def_readonly("gamma_y", &TisbmParams::gamma_y)
        .def_readonly("gamma_z", &TisbmParams::gamma_z);

    py::class_<SectorParams>(m, "SectorParams")
        .def_property_readonly("label", [](const SectorParams& s) { return std::string(to_string(s.label)); })
        .def_readonly("omega_eff", &SectorParams::omega_eff)
        .def_readonly("gamma_eff", &SectorParams::gamma_eff)
        .def_readonly("gamma_z_shift", &SectorParams::gamma_z_shift)
        .def_readonly("mode_omegas", &SectorParams::mode_omegas)
        .def_readonly("couplings_eff", &SectorParams::couplings_eff)
        .def_readonly("alpha_eff", &SectorParams::alpha_eff)
        .def_readonly("omega_c", &SectorParams::omega_c);

    m.def("map_to_sectors", [](const TisbmParams& p) {
        const auto s = map_to_sectors(p);
        return py::make_tuple(s.a, s.b);
    });
    m.def("is_decoherence_free", [](const TisbmParams& p, const std::string& sector) {
        const Sector s = sector == "a" ? Sector::A : Sector::B;
        if (const auto* c = std::get_if<ContinuumBath>(&p.bath)) return is_decoherence_free_continuum(*c, s);
        return is_decoherence_free(p, s);
    });
    m.def("renormalized_tunneling", &renormalized_tunneling, py::arg("gamma"), py::arg("alpha"), py::arg("omega_c"));
    m.def("kondo_energy", &kondo_energy, py::arg("gamma"), py::arg("alpha"), py::arg("cutoff"));

    m.def("net_magnetization_alpha_half", &net_magnetization_alpha_half, py::arg("gamma_a"), py::arg("omega_c"),
          py::arg("t"));
    m.def("relaxation_rate", &relaxation_rate, py::arg("alpha"), py::arg("gamma_a"), py::arg("omega_c"),
          py::arg("temperature"));
    m.def("critical_temperature", &critical_temperature, py::arg("gamma_a"), py::arg("alpha"), py::arg("omega_c"));
    m.def("critical_temperature_kelvin", &units::critical_temperature_kelvin, py::arg("gamma_hz"), py::arg("alpha"),
          py::arg("cutoff_hz"));
    m.def(
        "alpha_half_trace",
        [](double g, double wc, const std::vector<double>& t) { return trace_dict(alpha_half_trace(g, wc, t)); },
        py::arg("gamma_a"), py::arg("omega_c"), py::arg("times"));
    m.def(
        "mixed_subspace_trace",
        [](double ga, double gb, double wc, const std::vector<double>& t) {
            return trace_dict(mixed_subspace_trace(ga, gb, wc, t));
        },
        py::arg("gamma_a"), py::arg("gamma_b"), py::arg("omega_c"), py::arg("times"));

    m.def(
        "solve_ground_state",
        [](const SectorParams& s, double alpha, double tol, int max_iter, bool gz) {
            const auto sol = solve_ground_state(s, alpha, solver(tol, max_iter, gz));
            py::dict d;
            d["sector"] = to_string(sol.sector);
            d["gamma_prime"] = sol.gamma_prime;
            d["chi"] = sol.chi;
            d["eta"] = sol.eta;
            d["amp_a"] = sol.amp_a;
            d["amp_b"] = sol.amp_b;
            d["energy"] = sol.energy;
            d["iterations"] = sol.iterations;
            d["residual"] = sol.residual;
            return d;
        },
        py::arg("sector"), py::arg("alpha"), py::arg("tol") = 1e-12, py::arg("max_iter") = 10000,
        py::arg("include_gamma_z_shift") = false);
    m.def("magnetization_prefactor", &magnetization_prefactor, py::arg("alpha"));
    m.def(
        "gap_lambda",
        [](const TisbmParams& p, double aa, double ab) {
            const auto pt = gap_lambda(p, aa, ab);
            py::dict d;
            d["lambda_gap"] = pt.lambda_gap;
            d["gs_sector"] = to_string(pt.gs_sector);
            d["order_parameter"] = pt.order_parameter;
            return d;
        },
        py::arg("params"), py::arg("alpha_a"), py::arg("alpha_b"));
    m.def(
        "classify_transition",
        [](const TisbmParams& p, double k, double alpha_max, int points) {
            return io::dump_json(io::transition_to_json(classify_transition(p, k, alpha_max, {}, points)));
        },
        py::arg("params"), py::arg("k"), py::arg("alpha_max"), py::arg("points") = 200,
        "Transition report as JSON text.");

    m.def(
        "verify_decomposition",
        [](const TisbmParams& p, int n_max, double tol) {
            const auto& bath = std::get<DiscreteBath>(p.bath);
            const auto r = oracle::verify_decomposition(p, {n_max, static_cast<int>(bath.modes.size())}, tol);
            py::dict d;
            d["dimension"] = r.dimension;
            d["max_eigenvalue_deviation"] = r.max_eigenvalue_deviation;
            d["parity_conserved"] = r.parity_conserved;
            d["match"] = r.match;
            return d;
        },
        py::arg("params"), py::arg("n_max") = 4, py::arg("tol") = 1e-10);
    m.def(
        "oracle_evolve",
        [](const TisbmParams& p, int n_max, const oracle::SpinState& psi, const std::vector<double>& times) {
            const auto& bath = std::get<DiscreteBath>(p.bath);
            const auto ev =
                oracle::oracle_evolve(p, {n_max, static_cast<int>(bath.modes.size())}, psi, {}, times);
            auto d = trace_dict(ev.trace);
            d["parity"] = ev.parity;
            d["purity"] = ev.purity;
            d["norm"] = ev.norm;
            return d;
        },
        py::arg("params"), py::arg("n_max"), py::arg("initial"), py::arg("times"));
}
