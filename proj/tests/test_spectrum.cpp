#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "fluxmol/circuit.hpp"
#include "fluxmol/spectrum.hpp"

using namespace fluxmol;

namespace {

const MoleculeParams kDeviceA{9.4, 3.4, 1.2, 0.006};
const MoleculeParams kDeviceC{9.8, 3.3, 1.2, 0.03};

}  // namespace

TEST_CASE("diagonalize: basic contracts") {
    SUBCASE("identity matrix gives all-zero referenced levels") {
        Spectrum s = diagonalize(OperatorMatrix::Identity(6, 6), 6);
        for (double level : s.levels) CHECK(level == 0.0);
    }
    SUBCASE("non-Hermitian input is a contract violation") {
        OperatorMatrix m = OperatorMatrix::Zero(4, 4);
        m(0, 1) = 1.0;  // asymmetry 1 > 1e-9
        CHECK_THROWS_AS(diagonalize(m, 2), std::invalid_argument);
    }
    SUBCASE("k larger than the dimension is rejected") {
        CHECK_THROWS_AS(diagonalize(OperatorMatrix::Identity(3, 3), 4), std::invalid_argument);
    }
    SUBCASE("transition labels follow the energy ordering") {
        OperatorMatrix h = Eigen::VectorXd::LinSpaced(8, 0.0, 7.0)
                               .cast<std::complex<double>>()
                               .asDiagonal();
        Spectrum s = diagonalize(h, 6);
        CHECK(s.transition(TransitionLabel::ge) == doctest::Approx(1.0));
        CHECK(s.transition(TransitionLabel::gf) == doctest::Approx(2.0));
        CHECK(s.transition(TransitionLabel::gh) == doctest::Approx(3.0));
        CHECK(s.transition(TransitionLabel::gd) == doctest::Approx(4.0));
        CHECK(s.transition(TransitionLabel::ef) == doctest::Approx(1.0));
    }
}

TEST_CASE("device A transition at half flux is near 105 MHz") {
    const ModeBasis basis = make_mode_basis(kDeviceA, 30);
    const double ge = spectrum_at(kDeviceA, 0.5, basis).transition(TransitionLabel::ge);
    CHECK(ge > 0.105 * 0.8);
    CHECK(ge < 0.105 * 1.2);
}

TEST_CASE("eigenpair residuals are small relative to the matrix scale") {
    const ModeBasis basis = make_mode_basis(kDeviceA, 20);
    OperatorMatrix h = build_hamiltonian(kDeviceA, 0.5, basis);
    EigenSystem sys = hermitian_eigensystem(h);
    const double h_norm = std::max(std::abs(sys.values(0)), std::abs(sys.values(sys.values.size() - 1)));
    for (int i = 0; i < 8; ++i) {
        const auto v = sys.vectors.col(i);
        const double residual = (h * v - sys.values(i) * v).norm() / v.norm();
        CHECK(residual < 1e-8 * h_norm);
    }
}

TEST_CASE("complex Hermitian path agrees with the real path") {
    // a real symmetric matrix plus an exactly-cancelling imaginary part should
    // take the complex branch and still reproduce the real spectrum
    const ModeBasis basis = make_mode_basis(kDeviceA, 8);
    OperatorMatrix h = build_hamiltonian(kDeviceA, 0.3, basis);
    OperatorMatrix perturbed = h;
    perturbed(0, 1) += std::complex<double>(0.0, 1e-3);
    perturbed(1, 0) -= std::complex<double>(0.0, 1e-3);  // keeps Hermiticity
    Eigen::VectorXd w_real = hermitian_eigenvalues(h);
    Eigen::VectorXd w_complex = hermitian_eigenvalues(perturbed);
    CHECK(std::abs(w_real(0) - w_complex(0)) < 1e-3);
    for (int i = 1; i < w_real.size(); ++i) CHECK(w_complex(i) >= w_complex(i - 1) - 1e-12);
}

TEST_CASE("flux sweep: ordering, flags, determinism under threading") {
    const ModeBasis basis = make_mode_basis(kDeviceC, 24);
    std::vector<double> grid;
    for (int i = 0; i <= 12; ++i) grid.push_back(0.40 + 0.005 * i);

    setenv("FLUXMOL_THREADS", "1", 1);
    SweepResult serial = flux_sweep(kDeviceC, grid, basis, 6);
    setenv("FLUXMOL_THREADS", "3", 1);
    SweepResult threaded = flux_sweep(kDeviceC, grid, basis, 6);
    unsetenv("FLUXMOL_THREADS");

    REQUIRE(serial.spectra.size() == grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        CHECK(bool(serial.converged[i]));
        CHECK(bool(threaded.converged[i]));
        for (size_t l = 0; l < serial.spectra[i].levels.size(); ++l)
            CHECK(serial.spectra[i].levels[l] == threaded.spectra[i].levels[l]);
    }

    // minimum of f_ge for device C sits near 0.43, well below half flux
    size_t best = 0;
    for (size_t i = 1; i < grid.size(); ++i)
        if (serial.spectra[i].transition(TransitionLabel::ge) <
            serial.spectra[best].transition(TransitionLabel::ge))
            best = i;
    CHECK(grid[best] > 0.40);
    CHECK(grid[best] < 0.46);
}

TEST_CASE("flux sweep flags failing points instead of aborting") {
    ModeBasis tiny = make_mode_basis(kDeviceA, 2);  // dim^2 = 4 < k
    SweepResult sweep = flux_sweep(kDeviceA, {0.0, 0.5}, tiny, 5);
    CHECK(!sweep.converged[0]);
    CHECK(!sweep.converged[1]);
}

TEST_CASE("convergence check") {
    SUBCASE("harmonic case is converged by dim 10") {
        const MoleculeParams harmonic{0.0, 3.4, 1.2, 0.0};
        auto rows = convergence_check(harmonic, 0.3, {10, 15});
        REQUIRE(rows.size() == 2);
        CHECK(rows[1].converged);
        CHECK(rows[0].f_ge == doctest::Approx(std::sqrt(8 * 3.4 * 1.2 / 3.0)).epsilon(1e-9));
    }
    SUBCASE("deep-well stress case is flagged as unconverged at dim 15") {
        const MoleculeParams stress{30.0, 1.0, 1.2, 0.0};
        auto rows = convergence_check(stress, 0.0, {10, 15, 40, 50});
        CHECK(!rows[1].converged);
        CHECK(rows[3].converged);
    }
    SUBCASE("device A settles between dim 30 and 35") {
        auto rows = convergence_check(kDeviceA, 0.5, {20, 25, 30, 35});
        CHECK(rows[3].converged);
    }
    SUBCASE("dims must be ascending") {
        CHECK_THROWS_AS(convergence_check(kDeviceA, 0.0, {20, 15}), std::invalid_argument);
    }
}

TEST_CASE("flux sensitivity") {
    SUBCASE("vanishes at the zero-flux symmetry point") {
        MoleculeParams symmetric = kDeviceA;
        symmetric.alpha = 0.0;
        const ModeBasis basis = make_mode_basis(symmetric, 20);
        CHECK(std::abs(flux_sensitivity(symmetric, 0.0, basis, TransitionLabel::ge)) < 1e-6);
    }
    SUBCASE("matches a local quadratic fit through sweep points") {
        // independent oracle: least-squares parabola through 5 points around 0.2
        const ModeBasis basis = make_mode_basis(kDeviceA, 24);
        const double h = 0.01, x0 = 0.2;
        Eigen::MatrixXd design(5, 3);
        Eigen::VectorXd y(5);
        for (int i = -2; i <= 2; ++i) {
            const double dx = i * h;
            design(i + 2, 0) = 1.0;
            design(i + 2, 1) = dx;
            design(i + 2, 2) = dx * dx;
            y(i + 2) = spectrum_at(kDeviceA, x0 + dx, basis).transition(TransitionLabel::ge);
        }
        Eigen::Vector3d coeff = design.colPivHouseholderQr().solve(y);
        const double oracle_slope = coeff(1);
        const double slope = flux_sensitivity(kDeviceA, x0, basis, TransitionLabel::ge);
        CHECK(std::abs(slope - oracle_slope) / std::abs(oracle_slope) < 0.02);
    }
    SUBCASE("nearly flat at the transition-frequency minimum") {
        const ModeBasis basis = make_mode_basis(kDeviceA, 24);
        // locate the minimum by golden-section search around half flux
        double lo = 0.46, hi = 0.54;
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        auto f = [&](double phi) {
            return spectrum_at(kDeviceA, phi, basis, 2).transition(TransitionLabel::ge);
        };
        double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
        double fa = f(a), fb = f(b);
        while (hi - lo > 1e-5) {
            if (fa < fb) {
                hi = b; b = a; fb = fa;
                a = hi - gr * (hi - lo); fa = f(a);
            } else {
                lo = a; a = b; fa = fb;
                b = lo + gr * (hi - lo); fb = f(b);
            }
        }
        const double sweet = 0.5 * (lo + hi);
        CHECK(std::abs(flux_sensitivity(kDeviceA, sweet, basis, TransitionLabel::ge)) < 0.05);
    }
}

TEST_CASE("asymmetry sensitivity") {
    const ModeBasis basis = make_mode_basis(kDeviceA, 24);
    SUBCASE("vanishes at zero flux") {
        CHECK(std::abs(asymmetry_sensitivity(kDeviceA, 0.0, basis, TransitionLabel::ge)) < 1e-8);
    }
    SUBCASE("nonzero and finite at half flux for Table-scale asymmetry") {
        const double s = asymmetry_sensitivity(kDeviceA, 0.5, basis, TransitionLabel::ge);
        CHECK(std::isfinite(s));
        CHECK(std::abs(s) > 0.1);
    }
    SUBCASE("consistent with a finite excursion in alpha") {
        // the spectrum is even in alpha (alpha -> -alpha swaps the modes), so
        // the secant from 0 to alpha equals the derivative at alpha/2
        MoleculeParams base = kDeviceA;
        base.alpha = 0.0;
        MoleculeParams excursion = base, midpoint = base;
        excursion.alpha = 0.002;
        midpoint.alpha = 0.001;
        const double f0 = spectrum_at(base, 0.5, basis).transition(TransitionLabel::ge);
        const double f1 = spectrum_at(excursion, 0.5, basis).transition(TransitionLabel::ge);
        const double sens = asymmetry_sensitivity(midpoint, 0.5, basis, TransitionLabel::ge);
        const double predicted = (0.002 / 2.0) * sens;
        CHECK(std::abs((f1 - f0) - predicted) / std::abs(f1 - f0) < 0.05);
    }
}

TEST_CASE("swap parity labels the low states at alpha = 0") {
    MoleculeParams symmetric = kDeviceA;
    symmetric.alpha = 0.0;
    const ModeBasis basis = make_mode_basis(symmetric, 24);
    for (double phi : {0.1, 0.5}) {
        EigenSystem sys = hermitian_eigensystem(build_hamiltonian(symmetric, phi, basis));
        const double p0 = swap_parity(sys.vectors.col(0), basis.dim);
        const double p1 = swap_parity(sys.vectors.col(1), basis.dim);
        CHECK(p0 == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(p1 == doctest::Approx(-1.0).epsilon(1e-6));
    }
}

TEST_CASE("wavefunction grids") {
    auto linspace = [](double lo, double hi, int n) {
        std::vector<double> v(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) v[size_t(i)] = lo + (hi - lo) * i / double(n - 1);
        return v;
    };

    SUBCASE("harmonic ground state matches the Gaussian-moment oracle") {
        const MoleculeParams harmonic{0.0, 3.4, 1.2, 0.0};
        const ModeBasis basis = make_mode_basis(harmonic, 24);
        const double var_plus = std::sqrt(2.0 * harmonic.e_c / harmonic.e_l);
        const double var_minus = std::sqrt(2.0 * harmonic.e_c / (harmonic.e_l / 3.0));
        const double var1 = 0.5 * (var_plus + var_minus);
        const double cov = 0.5 * (var_plus - var_minus);

        const double span = 3.5 * std::sqrt(var1);
        auto axis = linspace(-span, span, 101);
        WavefunctionGrid grid = wavefunction_grid(harmonic, 0.0, basis, {0}, axis, axis);
        const RealMatrix& amp = grid.amplitude[0];
        const double dphi = axis[1] - axis[0];

        double norm = 0.0, m11 = 0.0, m22 = 0.0, m12 = 0.0;
        for (size_t i = 0; i < axis.size(); ++i) {
            for (size_t j = 0; j < axis.size(); ++j) {
                const double p = amp(Eigen::Index(i), Eigen::Index(j)) *
                                 amp(Eigen::Index(i), Eigen::Index(j)) * dphi * dphi;
                norm += p;
                m11 += p * axis[i] * axis[i];
                m22 += p * axis[j] * axis[j];
                m12 += p * axis[i] * axis[j];
            }
        }
        CHECK(std::abs(norm - 1.0) < 0.02);
        CHECK(std::abs(m11 / norm - var1) / var1 < 0.01);
        CHECK(std::abs(m22 / norm - var1) / var1 < 0.01);
        CHECK(std::abs(m12 / norm - cov) / std::abs(cov) < 0.01);
    }

    SUBCASE("dipole regime: ground state is one lobe near the origin") {
        const ModeBasis basis = make_mode_basis(kDeviceA, 24);
        auto axis = linspace(-2.0 * std::numbers::pi, 2.0 * std::numbers::pi, 81);
        WavefunctionGrid grid = wavefunction_grid(kDeviceA, 0.1, basis, {0}, axis, axis);
        Eigen::Index imax = 0, jmax = 0;
        grid.amplitude[0].cwiseAbs().maxCoeff(&imax, &jmax);
        CHECK(grid.amplitude[0](imax, jmax) > 0.0);  // phase fixing
        CHECK(std::abs(axis[size_t(imax)]) < 1.2);
        CHECK(std::abs(axis[size_t(jmax)]) < 1.2);
    }

    SUBCASE("quadrupole regime: symmetric and antisymmetric two-lobe states") {
        MoleculeParams symmetric = kDeviceA;
        symmetric.alpha = 0.0;
        const ModeBasis basis = make_mode_basis(symmetric, 24);
        auto axis = linspace(-2.0 * std::numbers::pi, 2.0 * std::numbers::pi, 81);
        WavefunctionGrid grid = wavefunction_grid(symmetric, 0.5, basis, {0, 1}, axis, axis);
        const RealMatrix& ground = grid.amplitude[0];
        const RealMatrix& excited = grid.amplitude[1];
        CHECK((ground - ground.transpose()).cwiseAbs().maxCoeff() < 1e-6);
        CHECK((excited + excited.transpose()).cwiseAbs().maxCoeff() < 1e-6);

        Eigen::Index imax = 0, jmax = 0;
        ground.cwiseAbs().maxCoeff(&imax, &jmax);
        CHECK(std::abs(axis[size_t(imax)] - axis[size_t(jmax)]) > 2.0);  // off-diagonal lobes
    }
}

TEST_CASE("levels are stable against basis enlargement") {
    const ModeBasis b30 = make_mode_basis(kDeviceA, 30);
    const ModeBasis b40 = make_mode_basis(kDeviceA, 40);
    for (double phi : {0.0, 0.5, 1.2}) {
        const Spectrum s30 = spectrum_at(kDeviceA, phi, b30, 5);
        const Spectrum s40 = spectrum_at(kDeviceA, phi, b40, 5);
        for (int i = 0; i < 5; ++i)
            CHECK(std::abs(s30.levels[size_t(i)] - s40.levels[size_t(i)]) < 1e-4);
    }
}
