#include "fluxmol/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

namespace fluxmol {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Narrowing applied to the bare inductive basis width; see make_mode_basis.
constexpr double kBasisWidthFactor = 0.85;
}  // namespace

void validate(const MoleculeParams& params) {
    if (!(params.e_j >= 0.0))
        throw std::invalid_argument("MoleculeParams: e_j must be >= 0");
    if (!(params.e_c > 0.0))
        throw std::invalid_argument("MoleculeParams: e_c must be > 0");
    if (!(params.e_l > 0.0))
        throw std::invalid_argument("MoleculeParams: e_l must be > 0");
    if (!(std::abs(params.alpha) < 1.0))
        throw std::invalid_argument("MoleculeParams: |alpha| must be < 1");
}

ModeBasis make_mode_basis(const MoleculeParams& params, int dim, int pad) {
    validate(params);
    if (dim < 2) throw std::invalid_argument("make_mode_basis: dim must be >= 2");
    if (pad < 0) throw std::invalid_argument("make_mode_basis: pad must be >= 0");
    ModeBasis basis;
    basis.dim = dim;
    basis.pad = pad;
    // Bare per-mode quadratic coefficient is (2/3) E_L, i.e. the diagonal of
    // the quadratic form; the junction stiffens the physical wells, so the
    // basis is kept narrower than the bare width by a fixed factor.
    basis.phi_zpf = kBasisWidthFactor * std::pow(2.0 * params.e_c / ((2.0 / 3.0) * params.e_l), 0.25);
    basis.n_zpf = 0.5 / basis.phi_zpf;
    return basis;
}

namespace detail {

ModeOperators mode_operators(const ModeBasis& basis) {
    validate(basis);
    const int dim = basis.dim;
    const int big = fluxmol::detail::converged_workspace(dim + basis.pad, basis.phi_zpf);

    RealMatrix a = RealMatrix::Zero(big, big);
    for (int k = 1; k < big; ++k) a(k - 1, k) = std::sqrt(double(k));
    RealMatrix phi_big = basis.phi_zpf * (a + a.transpose());
    RealMatrix n_im_big = basis.n_zpf * (a.transpose() - a);  // n = i * n_im_big

    const std::complex<double> iu(0.0, 1.0);
    OperatorMatrix e_half = matrix_exponential(iu * 0.5 * phi_big.cast<std::complex<double>>());
    RealMatrix cos_half = 0.5 * (e_half + e_half.adjoint()).real();
    RealMatrix sin_half = (0.5 * (e_half - e_half.adjoint()) * (-iu)).real();
    OperatorMatrix e_full = e_half * e_half;
    RealMatrix cos_big = 0.5 * (e_full + e_full.adjoint()).real();
    RealMatrix sin_big = (0.5 * (e_full - e_full.adjoint()) * (-iu)).real();

    auto crop = [dim](const RealMatrix& m) { return RealMatrix(m.topLeftCorner(dim, dim)); };

    ModeOperators ops;
    ops.phi = crop(phi_big);
    ops.phi_sq = crop(phi_big * phi_big);
    ops.n_sq = crop(-(n_im_big * n_im_big));  // (i X)^2 = -X^2
    ops.cos_phi = crop(cos_big);
    ops.sin_phi = crop(sin_big);
    ops.cos_sq_half = crop(cos_half * cos_half);
    ops.sin_sq_half = crop(sin_half * sin_half);
    return ops;
}

}  // namespace detail

namespace {

RealMatrix kron(const RealMatrix& a, const RealMatrix& b) { return tensor_product(a, b); }

void check_builder_inputs(const MoleculeParams& params, double phi_ext,
                          const ModeBasis& basis) {
    validate(params);
    validate(basis);
    if (!std::isfinite(phi_ext))
        throw std::invalid_argument("build_hamiltonian: phi_ext must be finite");
    if (basis.dim < 10)
        std::cerr << "fluxmol: warning: basis dim " << basis.dim
                  << " is likely too small for E_J/E_C = "
                  << (params.e_c > 0 ? params.e_j / params.e_c : 0.0) << "\n";
}

}  // namespace

OperatorMatrix build_hamiltonian(const MoleculeParams& params, double phi_ext,
                                 const ModeBasis& basis) {
    check_builder_inputs(params, phi_ext, basis);
    const auto ops = detail::mode_operators(basis);
    const int dim = basis.dim;
    const RealMatrix id = RealMatrix::Identity(dim, dim);

    const double theta1 = (1.0 + params.alpha / 2.0) * kTwoPi * phi_ext;
    const double theta2 = (1.0 - params.alpha / 2.0) * kTwoPi * phi_ext;
    RealMatrix cos1 = std::cos(theta1) * ops.cos_phi + std::sin(theta1) * ops.sin_phi;
    RealMatrix cos2 = std::cos(theta2) * ops.cos_phi + std::sin(theta2) * ops.sin_phi;

    RealMatrix h = 4.0 * params.e_c * (kron(ops.n_sq, id) + kron(id, ops.n_sq));
    h += (params.e_l / 3.0) *
         (kron(ops.phi_sq, id) + kron(id, ops.phi_sq) + kron(ops.phi, ops.phi));
    h -= params.e_j * (kron(cos1, id) + kron(id, cos2));
    return h.cast<std::complex<double>>();
}

OperatorMatrix build_hamiltonian_gauge2(const MoleculeParams& params, double phi_ext,
                                        const ModeBasis& basis) {
    check_builder_inputs(params, phi_ext, basis);
    const auto ops = detail::mode_operators(basis);
    const int dim = basis.dim;
    const RealMatrix id = RealMatrix::Identity(dim, dim);
    const RealMatrix id2 = RealMatrix::Identity(dim * dim, dim * dim);

    const double phi_com = 2.0 * kTwoPi * phi_ext;
    const double phi_diff = params.alpha * kTwoPi * phi_ext;

    RealMatrix phi1 = kron(ops.phi, id);
    RealMatrix phi2 = kron(id, ops.phi);
    RealMatrix phi_sq_sum = kron(ops.phi_sq, id) + kron(id, ops.phi_sq);
    RealMatrix cross = kron(ops.phi, ops.phi);

    // (phi1 + phi2 + phi_com)^2 and (phi1 - phi2 + phi_diff)^2, expanded so
    // every operator product stays a tensor product of exact mode blocks.
    RealMatrix sum_sq = phi_sq_sum + 2.0 * cross + 2.0 * phi_com * (phi1 + phi2) +
                        phi_com * phi_com * id2;
    RealMatrix diff_sq = phi_sq_sum - 2.0 * cross + 2.0 * phi_diff * (phi1 - phi2) +
                         phi_diff * phi_diff * id2;

    // cos((phi1+phi2)/2) cos((phi1-phi2)/2), symmetrized; the half-angle
    // cross terms cancel, leaving cos^2(phi/2) x cos^2(phi/2) - sin^2 x sin^2.
    RealMatrix junction = kron(ops.cos_sq_half, ops.cos_sq_half) -
                          kron(ops.sin_sq_half, ops.sin_sq_half);

    RealMatrix h = 4.0 * params.e_c * (kron(ops.n_sq, id) + kron(id, ops.n_sq));
    h += 0.25 * params.e_l * (sum_sq + diff_sq / 3.0);
    h -= 2.0 * params.e_j * junction;
    return h.cast<std::complex<double>>();
}

double potential_value(const MoleculeParams& params, double phi_ext, double phi1,
                       double phi2) {
    const double theta1 = (1.0 + params.alpha / 2.0) * kTwoPi * phi_ext;
    const double theta2 = (1.0 - params.alpha / 2.0) * kTwoPi * phi_ext;
    return (params.e_l / 3.0) * (phi1 * phi1 + phi2 * phi2 + phi1 * phi2) -
           params.e_j * (std::cos(phi1 - theta1) + std::cos(phi2 - theta2));
}

PotentialGrid potential_landscape(const MoleculeParams& params, double phi_ext,
                                  const std::vector<double>& phi1_axis,
                                  const std::vector<double>& phi2_axis) {
    validate(params);
    if (phi1_axis.empty() || phi2_axis.empty())
        throw std::invalid_argument("potential_landscape: grid axes must be non-empty");
    for (const auto* axis : {&phi1_axis, &phi2_axis}) {
        for (size_t i = 0; i < axis->size(); ++i) {
            if (!std::isfinite((*axis)[i]))
                throw std::invalid_argument("potential_landscape: axis values must be finite");
            if (i > 0 && (*axis)[i] <= (*axis)[i - 1])
                throw std::invalid_argument("potential_landscape: axes must be strictly increasing");
        }
    }
    PotentialGrid grid;
    grid.phi1_axis = phi1_axis;
    grid.phi2_axis = phi2_axis;
    grid.values.resize(Eigen::Index(phi1_axis.size()), Eigen::Index(phi2_axis.size()));
    for (size_t i = 0; i < phi1_axis.size(); ++i)
        for (size_t j = 0; j < phi2_axis.size(); ++j)
            grid.values(Eigen::Index(i), Eigen::Index(j)) =
                potential_value(params, phi_ext, phi1_axis[i], phi2_axis[j]);
    return grid;
}

namespace {

// Compass descent with shrinking step; the potential is smooth and cheap.
PotentialMinimum refine_minimum(const MoleculeParams& params, double phi_ext,
                                double p1, double p2) {
    double u = potential_value(params, phi_ext, p1, p2);
    double step = 0.05;
    while (step > 1e-9) {
        bool improved = false;
        const double candidates[4][2] = {
            {p1 + step, p2}, {p1 - step, p2}, {p1, p2 + step}, {p1, p2 - step}};
        for (const auto& c : candidates) {
            const double uc = potential_value(params, phi_ext, c[0], c[1]);
            if (uc < u - 1e-14) {
                p1 = c[0];
                p2 = c[1];
                u = uc;
                improved = true;
            }
        }
        if (!improved) step *= 0.5;
    }
    return {p1, p2, u};
}

}  // namespace

std::vector<PotentialMinimum> classical_minima(const MoleculeParams& params,
                                               double phi_ext, const SearchBox& box) {
    validate(params);
    const double two_pi = kTwoPi;
    if (box.lo > -two_pi + 1e-12 || box.hi < two_pi - 1e-12)
        throw std::invalid_argument("classical_minima: search box must cover [-2pi, 2pi]^2");

    constexpr int n = 201;
    std::vector<double> axis(n);
    for (int i = 0; i < n; ++i) axis[i] = box.lo + (box.hi - box.lo) * i / double(n - 1);
    RealMatrix u(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            u(i, j) = potential_value(params, phi_ext, axis[i], axis[j]);

    std::vector<PotentialMinimum> minima;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            bool lowest = true;
            for (int di = -1; di <= 1 && lowest; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    const int ii = i + di, jj = j + dj;
                    if (ii < 0 || jj < 0 || ii >= n || jj >= n) continue;
                    if (u(ii, jj) < u(i, j)) {
                        lowest = false;
                        break;
                    }
                }
            }
            if (!lowest) continue;
            PotentialMinimum m = refine_minimum(params, phi_ext, axis[i], axis[j]);
            if (m.phi1 < box.lo - 1e-9 || m.phi1 > box.hi + 1e-9 || m.phi2 < box.lo - 1e-9 ||
                m.phi2 > box.hi + 1e-9)
                continue;
            bool duplicate = false;
            for (const auto& seen : minima) {
                if (std::abs(seen.phi1 - m.phi1) < 1e-6 && std::abs(seen.phi2 - m.phi2) < 1e-6) {
                    duplicate = true;
                    break;
                }
            }
            if (!duplicate) minima.push_back(m);
        }
    }
    std::sort(minima.begin(), minima.end(),
              [](const PotentialMinimum& a, const PotentialMinimum& b) {
                  if (a.energy != b.energy) return a.energy < b.energy;
                  if (a.phi1 != b.phi1) return a.phi1 < b.phi1;
                  return a.phi2 < b.phi2;
              });
    return minima;
}

int degenerate_minimum_count(const std::vector<PotentialMinimum>& minima, double tol) {
    if (minima.empty()) return 0;
    int count = 0;
    for (const auto& m : minima)
        if (m.energy - minima.front().energy <= tol) ++count;
    return count;
}

}  // namespace fluxmol
