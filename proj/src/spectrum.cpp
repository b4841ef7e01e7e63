#include "fluxmol/spectrum.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fluxmol/parallel.hpp"

namespace fluxmol {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kHermitianTol = 1e-9;

void check_hermitian(const OperatorMatrix& h) {
    if (h.rows() != h.cols())
        throw std::invalid_argument("diagonalize: matrix must be square");
    if (hermiticity_defect(h) > kHermitianTol)
        throw std::invalid_argument("diagonalize: matrix is not Hermitian (asymmetry > 1e-9)");
}

bool effectively_real(const OperatorMatrix& h) {
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    return h.imag().cwiseAbs().maxCoeff() <= 1e-13 * scale;
}

}  // namespace

const char* to_string(TransitionLabel label) {
    switch (label) {
        case TransitionLabel::ge: return "ge";
        case TransitionLabel::gf: return "gf";
        case TransitionLabel::gh: return "gh";
        case TransitionLabel::gd: return "gd";
        case TransitionLabel::ef: return "ef";
    }
    return "?";
}

TransitionLabel transition_label_from_string(const std::string& s) {
    if (s == "ge") return TransitionLabel::ge;
    if (s == "gf") return TransitionLabel::gf;
    if (s == "gh") return TransitionLabel::gh;
    if (s == "gd") return TransitionLabel::gd;
    if (s == "ef") return TransitionLabel::ef;
    throw std::invalid_argument("unknown transition label: " + s);
}

double Spectrum::transition(TransitionLabel label) const {
    auto level = [this](size_t idx) {
        return idx < levels.size() ? levels[idx] : kNan;
    };
    switch (label) {
        case TransitionLabel::ge: return level(1);
        case TransitionLabel::gf: return level(2);
        case TransitionLabel::gh: return level(3);
        case TransitionLabel::gd: return level(4);
        case TransitionLabel::ef: return level(2) - level(1);
    }
    return kNan;
}

Eigen::VectorXd hermitian_eigenvalues(const OperatorMatrix& h) {
    check_hermitian(h);
    if (effectively_real(h)) {
        Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h.real(), Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("diagonalize: eigensolver failed");
        return solver.eigenvalues();
    }
    Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("diagonalize: eigensolver failed");
    return solver.eigenvalues();
}

EigenSystem hermitian_eigensystem(const OperatorMatrix& h) {
    check_hermitian(h);
    EigenSystem out;
    if (effectively_real(h)) {
        Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h.real());
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("diagonalize: eigensolver failed");
        out.values = solver.eigenvalues();
        out.vectors = solver.eigenvectors().cast<std::complex<double>>();
    } else {
        Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(h);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("diagonalize: eigensolver failed");
        out.values = solver.eigenvalues();
        out.vectors = solver.eigenvectors();
    }
    return out;
}

Spectrum diagonalize(const OperatorMatrix& h, int k) {
    if (k < 1) throw std::invalid_argument("diagonalize: k must be >= 1");
    if (k > h.rows()) throw std::invalid_argument("diagonalize: k exceeds matrix dimension");
    const Eigen::VectorXd values = hermitian_eigenvalues(h);
    Spectrum s;
    s.levels.resize(size_t(k));
    for (int i = 0; i < k; ++i) s.levels[size_t(i)] = values(i) - values(0);
    return s;
}

Spectrum spectrum_at(const MoleculeParams& params, double phi_ext, const ModeBasis& basis,
                     int k) {
    return diagonalize(build_hamiltonian(params, phi_ext, basis), k);
}

SweepResult flux_sweep(const MoleculeParams& params, const std::vector<double>& flux_grid,
                       const ModeBasis& basis, int k) {
    if (flux_grid.empty())
        throw std::invalid_argument("flux_sweep: flux grid must be non-empty");
    SweepResult result;
    result.flux = flux_grid;
    result.spectra.resize(flux_grid.size());
    result.converged.assign(flux_grid.size(), 0);
    parallel_for(int(flux_grid.size()), [&](int i) {
        try {
            result.spectra[size_t(i)] = spectrum_at(params, flux_grid[size_t(i)], basis, k);
            result.converged[size_t(i)] = 1;
        } catch (const std::exception&) {
            result.converged[size_t(i)] = 0;
        }
    });
    return result;
}

std::vector<ConvergenceRow> convergence_check(const MoleculeParams& params, double phi_ext,
                                              const std::vector<int>& dims) {
    for (size_t i = 1; i < dims.size(); ++i)
        if (dims[i] <= dims[i - 1])
            throw std::invalid_argument("convergence_check: dims must be ascending");
    std::vector<ConvergenceRow> rows;
    rows.reserve(dims.size());
    for (int dim : dims) {
        const ModeBasis basis = make_mode_basis(params, dim);
        ConvergenceRow row;
        row.dim = dim;
        row.f_ge = spectrum_at(params, phi_ext, basis, 2).transition(TransitionLabel::ge);
        if (!rows.empty()) {
            const double prev = rows.back().f_ge;
            const double scale = std::max(std::abs(row.f_ge), 1e-12);
            row.converged = std::abs(row.f_ge - prev) / scale < 1e-4;
        }
        rows.push_back(row);
    }
    return rows;
}

double flux_sensitivity(const MoleculeParams& params, double phi_ext, const ModeBasis& basis,
                        TransitionLabel label) {
    constexpr double delta = 1e-4;
    const double up = spectrum_at(params, phi_ext + delta, basis).transition(label);
    const double dn = spectrum_at(params, phi_ext - delta, basis).transition(label);
    return (up - dn) / (2.0 * delta);
}

double asymmetry_sensitivity(const MoleculeParams& params, double phi_ext,
                             const ModeBasis& basis, TransitionLabel label) {
    constexpr double delta = 1e-5;  // step in alpha/2
    MoleculeParams up = params, dn = params;
    up.alpha += 2.0 * delta;
    dn.alpha -= 2.0 * delta;
    const double f_up = spectrum_at(up, phi_ext, basis).transition(label);
    const double f_dn = spectrum_at(dn, phi_ext, basis).transition(label);
    return (f_up - f_dn) / (2.0 * delta);
}

double swap_parity(const Eigen::VectorXcd& state, int dim) {
    if (state.size() != Eigen::Index(dim) * dim)
        throw std::invalid_argument("swap_parity: state size must be dim^2");
    std::complex<double> acc = 0.0;
    for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
            acc += std::conj(state(j * dim + k)) * state(k * dim + j);
    return acc.real();
}

namespace {

// Rows: grid points; columns: normalized oscillator eigenfunctions
// psi_k(phi) = h_k(phi / l) / sqrt(l) with l = sqrt(2) * phi_zpf.
RealMatrix oscillator_functions(const std::vector<double>& axis, double phi_zpf, int dim) {
    const double l = std::sqrt(2.0) * phi_zpf;
    RealMatrix out(Eigen::Index(axis.size()), dim);
    const double norm0 = std::pow(std::numbers::pi, -0.25) / std::sqrt(l);
    for (size_t i = 0; i < axis.size(); ++i) {
        const double y = axis[i] / l;
        out(Eigen::Index(i), 0) = norm0 * std::exp(-0.5 * y * y);
        if (dim > 1) out(Eigen::Index(i), 1) = std::sqrt(2.0) * y * out(Eigen::Index(i), 0);
        for (int k = 2; k < dim; ++k)
            out(Eigen::Index(i), k) = std::sqrt(2.0 / k) * y * out(Eigen::Index(i), k - 1) -
                                      std::sqrt((k - 1.0) / k) * out(Eigen::Index(i), k - 2);
    }
    return out;
}

}  // namespace

WavefunctionGrid wavefunction_grid(const MoleculeParams& params, double phi_ext,
                                   const ModeBasis& basis, const std::vector<int>& states,
                                   const std::vector<double>& phi1_axis,
                                   const std::vector<double>& phi2_axis) {
    if (states.empty())
        throw std::invalid_argument("wavefunction_grid: no states requested");
    const EigenSystem sys = hermitian_eigensystem(build_hamiltonian(params, phi_ext, basis));
    for (int s : states)
        if (s < 0 || s >= sys.values.size())
            throw std::invalid_argument("wavefunction_grid: state index out of range");

    const int dim = basis.dim;
    const RealMatrix b1 = oscillator_functions(phi1_axis, basis.phi_zpf, dim);
    const RealMatrix b2 = oscillator_functions(phi2_axis, basis.phi_zpf, dim);

    WavefunctionGrid grid;
    grid.phi1_axis = phi1_axis;
    grid.phi2_axis = phi2_axis;
    grid.states = states;
    grid.amplitude.reserve(states.size());
    for (int s : states) {
        // Kron convention: coefficient of |j>_1 |k>_2 sits at index j*dim + k.
        Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>
            coeff(sys.vectors.col(s).data(), dim, dim);
        OperatorMatrix values =
            b1.cast<std::complex<double>>() * coeff * b2.transpose().cast<std::complex<double>>();
        Eigen::Index imax = 0, jmax = 0;
        values.cwiseAbs().maxCoeff(&imax, &jmax);
        const std::complex<double> peak = values(imax, jmax);
        if (std::abs(peak) > 0.0) values *= std::abs(peak) / peak;
        grid.amplitude.emplace_back(values.real());
    }
    return grid;
}

}  // namespace fluxmol
