#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fluxmol/circuit.hpp"
#include "fluxmol/config.hpp"
#include "fluxmol/csv.hpp"
#include "fluxmol/fitter.hpp"
#include "fluxmol/noise.hpp"
#include "fluxmol/operators.hpp"
#include "fluxmol/spectrum.hpp"

namespace py = pybind11;
using namespace fluxmol;

namespace {

std::map<std::string, double> transitions_dict(const Spectrum& s) {
    std::map<std::string, double> out;
    using TL = TransitionLabel;
    for (TL label : {TL::ge, TL::gf, TL::gh, TL::gd, TL::ef})
        out[to_string(label)] = s.transition(label);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "two-fluxonium molecule: operators, spectra, noise budgets, fitting";

    py::class_<MoleculeParams>(m, "MoleculeParams")
        .def(py::init([](double e_j, double e_c, double e_l, double alpha) {
                 MoleculeParams p{e_j, e_c, e_l, alpha};
                 validate(p);
                 return p;
             }),
             py::arg("e_j"), py::arg("e_c"), py::arg("e_l"), py::arg("alpha") = 0.0)
        .def_readwrite("e_j", &MoleculeParams::e_j)
        .def_readwrite("e_c", &MoleculeParams::e_c)
        .def_readwrite("e_l", &MoleculeParams::e_l)
        .def_readwrite("alpha", &MoleculeParams::alpha)
        .def("__repr__", [](const MoleculeParams& p) {
            return "MoleculeParams(e_j=" + format_double(p.e_j) + ", e_c=" + format_double(p.e_c) +
                   ", e_l=" + format_double(p.e_l) + ", alpha=" + format_double(p.alpha) + ")";
        });

    py::class_<ModeBasis>(m, "ModeBasis")
        .def_readonly("dim", &ModeBasis::dim)
        .def_readonly("phi_zpf", &ModeBasis::phi_zpf)
        .def_readonly("n_zpf", &ModeBasis::n_zpf)
        .def_readonly("pad", &ModeBasis::pad);

    m.def("make_mode_basis", &make_mode_basis, py::arg("params"), py::arg("dim") = 30,
          py::arg("pad") = 8);

    m.def("ladder_ops", &ladder_ops, py::arg("basis"));
    m.def("phase_op", &phase_op, py::arg("basis"));
    m.def("number_op", &number_op, py::arg("basis"));
    m.def("cosine_phase_op", &cosine_phase_op, py::arg("basis"), py::arg("offset") = 0.0);
    m.def("tensor_product",
          py::overload_cast<const OperatorMatrix&, const OperatorMatrix&>(&tensor_product),
          py::arg("a"), py::arg("b"));
    m.def("matrix_exponential", &matrix_exponential, py::arg("m"));

    m.def("build_hamiltonian", &build_hamiltonian, py::arg("params"), py::arg("phi_ext"),
          py::arg("basis"));
    m.def("build_hamiltonian_gauge2", &build_hamiltonian_gauge2, py::arg("params"),
          py::arg("phi_ext"), py::arg("basis"));
    m.def("potential_value", &potential_value, py::arg("params"), py::arg("phi_ext"),
          py::arg("phi1"), py::arg("phi2"));
    m.def(
        "potential_landscape",
        [](const MoleculeParams& params, double phi_ext, const std::vector<double>& phi1_axis,
           const std::vector<double>& phi2_axis) {
            PotentialGrid g = potential_landscape(params, phi_ext, phi1_axis, phi2_axis);
            return py::make_tuple(g.phi1_axis, g.phi2_axis, RealMatrix(g.values));
        },
        py::arg("params"), py::arg("phi_ext"), py::arg("phi1_axis"), py::arg("phi2_axis"));
    m.def(
        "classical_minima",
        [](const MoleculeParams& params, double phi_ext, double lo, double hi) {
            std::vector<py::tuple> out;
            for (const auto& m_ : classical_minima(params, phi_ext, SearchBox{lo, hi}))
                out.push_back(py::make_tuple(m_.phi1, m_.phi2, m_.energy));
            return out;
        },
        py::arg("params"), py::arg("phi_ext"), py::arg("lo") = -2.0 * 3.14159265358979323846,
        py::arg("hi") = 2.0 * 3.14159265358979323846);

    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("levels", &Spectrum::levels)
        .def("transition",
             [](const Spectrum& s, const std::string& label) {
                 return s.transition(transition_label_from_string(label));
             })
        .def_property_readonly("transitions", &transitions_dict)
        .def("__repr__", [](const Spectrum& s) {
            return "Spectrum(levels=" + std::to_string(s.levels.size()) +
                   ", ge=" + format_double(s.transition(TransitionLabel::ge)) + ")";
        });

    m.def("diagonalize", &diagonalize, py::arg("h"), py::arg("k") = 8);
    m.def("spectrum_at", &spectrum_at, py::arg("params"), py::arg("phi_ext"), py::arg("basis"),
          py::arg("k") = 8);
    m.def(
        "flux_sweep",
        [](const MoleculeParams& params, const std::vector<double>& grid, const ModeBasis& basis,
           int k) {
            SweepResult r = flux_sweep(params, grid, basis, k);
            std::vector<bool> ok(r.converged.begin(), r.converged.end());
            return py::make_tuple(r.flux, r.spectra, ok);
        },
        py::arg("params"), py::arg("flux_grid"), py::arg("basis"), py::arg("k") = 8);
    m.def(
        "convergence_check",
        [](const MoleculeParams& params, double phi_ext, const std::vector<int>& dims) {
            std::vector<py::tuple> out;
            for (const auto& row : convergence_check(params, phi_ext, dims))
                out.push_back(py::make_tuple(row.dim, row.f_ge, row.converged));
            return out;
        },
        py::arg("params"), py::arg("phi_ext"), py::arg("dims"));
    m.def(
        "flux_sensitivity",
        [](const MoleculeParams& params, double phi_ext, const ModeBasis& basis,
           const std::string& label) {
            return flux_sensitivity(params, phi_ext, basis, transition_label_from_string(label));
        },
        py::arg("params"), py::arg("phi_ext"), py::arg("basis"), py::arg("label") = "ge");
    m.def(
        "asymmetry_sensitivity",
        [](const MoleculeParams& params, double phi_ext, const ModeBasis& basis,
           const std::string& label) {
            return asymmetry_sensitivity(params, phi_ext, basis,
                                         transition_label_from_string(label));
        },
        py::arg("params"), py::arg("phi_ext"), py::arg("basis"), py::arg("label") = "ge");
    m.def(
        "wavefunction_grid",
        [](const MoleculeParams& params, double phi_ext, const ModeBasis& basis,
           const std::vector<int>& states, const std::vector<double>& phi1_axis,
           const std::vector<double>& phi2_axis) {
            WavefunctionGrid g =
                wavefunction_grid(params, phi_ext, basis, states, phi1_axis, phi2_axis);
            std::vector<RealMatrix> amps(g.amplitude.begin(), g.amplitude.end());
            return py::make_tuple(g.phi1_axis, g.phi2_axis, amps);
        },
        py::arg("params"), py::arg("phi_ext"), py::arg("basis"), py::arg("states"),
        py::arg("phi1_axis"), py::arg("phi2_axis"));
    m.def("swap_parity", &swap_parity, py::arg("state"), py::arg("dim"));

    py::class_<FluxNoiseModel>(m, "FluxNoiseModel")
        .def(py::init([](double a_com, double a_diff, double f_ir) {
                 FluxNoiseModel model{a_com, a_diff, f_ir};
                 validate(model);
                 return model;
             }),
             py::arg("a_com"), py::arg("a_diff"), py::arg("f_ir") = 1.0)
        .def_readwrite("a_com", &FluxNoiseModel::a_com)
        .def_readwrite("a_diff", &FluxNoiseModel::a_diff)
        .def_readwrite("f_ir", &FluxNoiseModel::f_ir);

    py::class_<DephasingResult>(m, "DephasingResult")
        .def_readonly("gamma", &DephasingResult::gamma)
        .def_readonly("eta", &DephasingResult::eta)
        .def_readonly("iterations", &DephasingResult::iterations)
        .def_property_readonly("mode",
                               [](const DephasingResult& r) { return to_string(r.mode); })
        .def("__repr__", [](const DephasingResult& r) {
            return "DephasingResult(gamma=" + format_double(r.gamma) +
                   ", eta=" + format_double(r.eta) + ")";
        });

    m.def("one_over_f_psd", &one_over_f_psd, py::arg("amplitude"), py::arg("omega"));
    m.def(
        "ramsey_rate_common",
        [](const FluxNoiseModel& model, double slope, const std::string& mode) {
            return ramsey_rate_common(model, slope, rate_mode_from_string(mode));
        },
        py::arg("model"), py::arg("slope_ghz_per_phi0"), py::arg("mode") = "conventional");
    m.def(
        "ramsey_rate_diff",
        [](const FluxNoiseModel& model, double phi_ext, double alpha_slope,
           const std::string& mode) {
            return ramsey_rate_diff(model, phi_ext, alpha_slope, rate_mode_from_string(mode));
        },
        py::arg("model"), py::arg("phi_ext"), py::arg("alpha_slope_ghz"),
        py::arg("mode") = "conventional");
    m.def("echo_ramsey_ratio", &echo_ramsey_ratio, py::arg("gamma_r"), py::arg("f_ir") = 1.0);
    m.def(
        "critical_current_dephasing",
        [](const MoleculeParams& params, double phi_ext, const ModeBasis& basis,
           const std::string& target, double rel_amp, int n_array, const std::string& mode) {
            CriticalCurrentTarget t;
            if (target == "small-junction")
                t = CriticalCurrentTarget::small_junction;
            else if (target == "array")
                t = CriticalCurrentTarget::junction_array;
            else
                throw std::invalid_argument("target must be 'small-junction' or 'array'");
            return critical_current_dephasing(params, phi_ext, basis, t, rel_amp, n_array,
                                              rate_mode_from_string(mode));
        },
        py::arg("params"), py::arg("phi_ext"), py::arg("basis"), py::arg("target"),
        py::arg("rel_amp"), py::arg("n_array") = 1, py::arg("mode") = "conventional");
    m.def("photon_noise_rate", &photon_noise_rate, py::arg("n_bar"), py::arg("kappa"),
          py::arg("chi"));
    py::class_<PhaseSlipEstimate>(m, "PhaseSlipEstimate")
        .def_readonly("e_s", &PhaseSlipEstimate::e_s)
        .def_readonly("delta", &PhaseSlipEstimate::delta)
        .def_readonly("splitting", &PhaseSlipEstimate::splitting);
    m.def("phase_slip_estimate", &phase_slip_estimate, py::arg("params"));
    m.def("thermal_population", &thermal_population, py::arg("f_ge_ghz"),
          py::arg("temperature_k"));

    py::class_<TransitionObservation>(m, "TransitionObservation")
        .def(py::init([](double phi_ext, double frequency, const std::string& label,
                         double weight) {
                 return TransitionObservation{phi_ext, frequency,
                                              transition_label_from_string(label), weight};
             }),
             py::arg("phi_ext"), py::arg("frequency"), py::arg("label"), py::arg("weight") = 1.0)
        .def_readwrite("phi_ext", &TransitionObservation::phi_ext)
        .def_readwrite("frequency", &TransitionObservation::frequency)
        .def_property(
            "label",
            [](const TransitionObservation& o) { return std::string(to_string(o.label)); },
            [](TransitionObservation& o, const std::string& s) {
                o.label = transition_label_from_string(s);
            })
        .def_readwrite("weight", &TransitionObservation::weight);

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("params", &FitResult::params)
        .def_readonly("residual", &FitResult::residual)
        .def_readonly("evaluations", &FitResult::evaluations)
        .def_readonly("converged", &FitResult::converged);

    m.def(
        "fit",
        [](double ejec_product, const std::array<double, 3>& initial,
           const std::vector<TransitionObservation>& data, int basis_dim, int polish_dim,
           int max_evals) {
            FitConfig config;
            config.ejec_product = ejec_product;
            config.initial = initial;
            config.basis_dim = basis_dim;
            config.polish_dim = polish_dim;
            config.max_evals = max_evals;
            return fit(config, data);
        },
        py::arg("ejec_product"), py::arg("initial"), py::arg("data"), py::arg("basis_dim") = 20,
        py::arg("polish_dim") = 30, py::arg("max_evals") = 400);
    m.def(
        "fit_objective",
        [](const std::array<double, 3>& candidate, double ejec_product,
           const std::vector<TransitionObservation>& data, int basis_dim) {
            FitConfig config;
            config.ejec_product = ejec_product;
            config.initial = candidate;
            config.basis_dim = basis_dim;
            return fit_objective(candidate, config, data);
        },
        py::arg("candidate"), py::arg("ejec_product"), py::arg("data"), py::arg("basis_dim") = 20);

    py::class_<AntennaParams>(m, "AntennaParams")
        .def_readonly("f_a", &AntennaParams::f_a)
        .def_readonly("kappa_over_2pi", &AntennaParams::kappa_over_2pi);
    py::class_<DeviceConfig>(m, "DeviceConfig")
        .def_readonly("name", &DeviceConfig::name)
        .def_readonly("params", &DeviceConfig::params)
        .def_readonly("basis_dim", &DeviceConfig::basis_dim)
        .def_readonly("noise", &DeviceConfig::noise)
        .def_readonly("antenna", &DeviceConfig::antenna);
    m.def("load_device_config", &load_device_config, py::arg("path"));
}
