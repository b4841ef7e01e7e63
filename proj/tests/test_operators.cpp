#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "fluxmol/operators.hpp"
#include "fluxmol/spectrum.hpp"

using namespace fluxmol;
using std::complex;

namespace {

ModeBasis basis_with(int dim, double phi_zpf, int pad = 8) {
    ModeBasis b;
    b.dim = dim;
    b.phi_zpf = phi_zpf;
    b.n_zpf = 0.5 / phi_zpf;
    b.pad = pad;
    return b;
}

}  // namespace

TEST_CASE("ladder operators: matrix elements and number identity") {
    auto [low2, raise2] = ladder_ops(basis_with(2, 1.0));
    CHECK(low2(0, 1).real() == doctest::Approx(1.0));
    CHECK(low2(0, 0) == complex<double>(0.0));
    CHECK(low2(1, 0) == complex<double>(0.0));
    CHECK(low2(1, 1) == complex<double>(0.0));
    CHECK((raise2 - low2.adjoint()).cwiseAbs().maxCoeff() == 0.0);

    auto [low3, raise3] = ladder_ops(basis_with(3, 1.0));
    CHECK(low3(0, 1).real() == doctest::Approx(1.0));
    CHECK(low3(1, 2).real() == doctest::Approx(std::sqrt(2.0)));

    const int dim = 12;
    auto [low, high] = ladder_ops(basis_with(dim, 1.0));
    OperatorMatrix number = high * low;
    for (int k = 0; k < dim; ++k) CHECK(number(k, k).real() == doctest::Approx(double(k)));
    CHECK(number.cwiseAbs().sum() == doctest::Approx(number.diagonal().cwiseAbs().sum()));
}

TEST_CASE("ladder operators reject dim < 2") {
    CHECK_THROWS_AS(ladder_ops(basis_with(1, 1.0)), std::invalid_argument);
}

TEST_CASE("phase operator") {
    OperatorMatrix phi = phase_op(basis_with(2, 1.0));
    CHECK(phi(0, 1).real() == doctest::Approx(1.0));
    CHECK(phi(1, 0).real() == doctest::Approx(1.0));
    CHECK(phi(0, 0) == complex<double>(0.0));

    for (int dim : {2, 7, 23}) {
        OperatorMatrix p = phase_op(basis_with(dim, 1.37));
        CHECK(std::abs(p.trace()) < 1e-14);
        CHECK(hermiticity_defect(p) <= 1e-12);
    }
}

TEST_CASE("number operator: smallest basis and hermiticity") {
    OperatorMatrix n = number_op(basis_with(2, 1.0));  // n_zpf = 1/2
    CHECK(n(0, 1) == complex<double>(0.0, -0.5));
    CHECK(n(1, 0) == complex<double>(0.0, 0.5));
    CHECK(hermiticity_defect(n) <= 1e-12);
}

TEST_CASE("number operator eigenvalue spread grows like sqrt(dim)") {
    // Oracle: eigensolve of the exact tridiagonal truncation.
    auto spread = [](int dim) {
        OperatorMatrix n = number_op(basis_with(dim, 1.0));
        Eigen::VectorXd values = hermitian_eigenvalues(n);
        return values(dim - 1) - values(0);
    };
    const double ratio = spread(64) / spread(16);
    CHECK(ratio > 1.7);
    CHECK(ratio < 2.3);
}

TEST_CASE("commutator [phi, n] is i on the diagonal except the truncation corner") {
    const int dim = 14;
    ModeBasis basis = basis_with(dim, 0.8);
    OperatorMatrix comm = phase_op(basis) * number_op(basis) - number_op(basis) * phase_op(basis);
    for (int k = 0; k < dim - 1; ++k) {
        CHECK(std::abs(comm(k, k) - complex<double>(0.0, 1.0)) < 1e-10);
    }
    // corner picks up the truncated [a, a+] defect
    CHECK(std::abs(comm(dim - 1, dim - 1) - complex<double>(0.0, 1.0 - dim)) < 1e-9);
}

TEST_CASE("cosine operator: identity limit, ground-state moment, half-period flip") {
    // phi_zpf -> 0: cos(phi) -> identity within O(phi_zpf^2)
    {
        const double pz = 1e-4;
        OperatorMatrix c = cosine_phase_op(basis_with(10, pz), 0.0);
        CHECK((c - OperatorMatrix::Identity(10, 10)).cwiseAbs().maxCoeff() < 10 * pz * pz);
    }
    // <0|cos(phi)|0> = exp(-phi_zpf^2 / 2)  (Gaussian moment of the ground state)
    for (double pz : {0.3, 0.85, 1.31, 1.9}) {
        OperatorMatrix c = cosine_phase_op(basis_with(30, pz), 0.0);
        CHECK(c(0, 0).real() == doctest::Approx(std::exp(-pz * pz / 2.0)).epsilon(1e-9));
    }
    // cos(phi - pi) = -cos(phi)
    {
        ModeBasis basis = basis_with(16, 1.1);
        OperatorMatrix lhs = cosine_phase_op(basis, std::numbers::pi);
        OperatorMatrix rhs = -cosine_phase_op(basis, 0.0);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("cosine operator is Hermitian for arbitrary offsets") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> offset(-10.0, 10.0);
    std::uniform_real_distribution<double> width(0.2, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        ModeBasis basis = basis_with(12 + (trial % 9), width(rng));
        OperatorMatrix c = cosine_phase_op(basis, offset(rng));
        CHECK(hermiticity_defect(c) <= 1e-12);
    }
}

TEST_CASE("cosine operator padding convergence: pad 8 vs pad 16") {
    for (double pz : {0.5, 1.0, 2.0}) {
        for (int dim : {10, 25, 40}) {
            OperatorMatrix c8 = cosine_phase_op(basis_with(dim, pz, 8), 0.3);
            OperatorMatrix c16 = cosine_phase_op(basis_with(dim, pz, 16), 0.3);
            CHECK((c8 - c16).cwiseAbs().maxCoeff() < 1e-8);
        }
    }
}

TEST_CASE("tensor product: identities and spectra") {
    OperatorMatrix i2 = OperatorMatrix::Identity(2, 2);
    CHECK((tensor_product(i2, i2) - OperatorMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

    // mixed-product identity (A x I)(I x B) = A x B
    std::mt19937 rng(11);
    std::normal_distribution<double> gauss;
    auto random_matrix = [&](int n) {
        OperatorMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = complex<double>(gauss(rng), gauss(rng));
        return m;
    };
    OperatorMatrix a = random_matrix(3), b = random_matrix(4);
    OperatorMatrix lhs = tensor_product(a, OperatorMatrix::Identity(4, 4)) *
                         tensor_product(OperatorMatrix::Identity(3, 3), b);
    CHECK((lhs - tensor_product(a, b)).cwiseAbs().maxCoeff() < 1e-12);

    // eigenvalues of (A x I) are those of A, each with multiplicity dim(B)
    OperatorMatrix herm = a + a.adjoint();
    Eigen::VectorXd small = hermitian_eigenvalues(herm);
    Eigen::VectorXd big =
        hermitian_eigenvalues(tensor_product(herm, OperatorMatrix::Identity(4, 4)));
    for (int i = 0; i < 3; ++i)
        for (int copy = 0; copy < 4; ++copy)
            CHECK(big(4 * i + copy) == doctest::Approx(small(i)).epsilon(1e-12));
}

TEST_CASE("matrix exponential matches eigendecomposition route") {
    // Oracle: for Hermitian H, e^{iH} = V e^{i diag} V+.
    std::mt19937 rng(3);
    std::normal_distribution<double> gauss;
    for (int n : {5, 20, 38}) {
        OperatorMatrix h(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) h(i, j) = complex<double>(gauss(rng), gauss(rng));
        h = (h + h.adjoint()).eval();
        h *= 10.0 / h.norm() * (n == 38 ? 2.0 : 1.0);  // norms up to 20

        Eigen::SelfAdjointEigenSolver<OperatorMatrix> es(h);
        OperatorMatrix phases = es.eigenvalues()
                                    .unaryExpr([](double x) {
                                        return std::exp(complex<double>(0.0, x));
                                    })
                                    .asDiagonal();
        OperatorMatrix oracle = es.eigenvectors() * phases * es.eigenvectors().adjoint();
        OperatorMatrix direct = matrix_exponential(complex<double>(0.0, 1.0) * h);
        CHECK((direct - oracle).norm() / oracle.norm() < 1e-12);
    }
}

TEST_CASE("mode basis validation") {
    ModeBasis bad = basis_with(8, 1.0);
    bad.n_zpf = 0.3;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    ModeBasis negative_pad = basis_with(8, 1.0);
    negative_pad.pad = -1;
    CHECK_THROWS_AS(validate(negative_pad), std::invalid_argument);
}
