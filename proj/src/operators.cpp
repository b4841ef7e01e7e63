#include "fluxmol/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace fluxmol {

void validate(const ModeBasis& basis) {
    if (basis.dim < 2)
        throw std::invalid_argument("ModeBasis: dim must be >= 2");
    if (basis.pad < 0)
        throw std::invalid_argument("ModeBasis: pad must be >= 0");
    if (!(basis.phi_zpf > 0.0) || !(basis.n_zpf > 0.0))
        throw std::invalid_argument("ModeBasis: zero-point amplitudes must be positive");
    const double product = basis.phi_zpf * basis.n_zpf;
    if (std::abs(product - 0.5) > 1e-12 * 0.5)
        throw std::invalid_argument("ModeBasis: phi_zpf * n_zpf must equal 1/2");
}

namespace {

RealMatrix lowering_real(int dim) {
    RealMatrix a = RealMatrix::Zero(dim, dim);
    for (int k = 1; k < dim; ++k) a(k - 1, k) = std::sqrt(double(k));
    return a;
}

}  // namespace

namespace detail {

int converged_workspace(int floor_dim, double phi_zpf) {
    const double excursion = phi_zpf * std::sqrt(2.0 * floor_dim) + phi_zpf * phi_zpf;
    return floor_dim + int(std::ceil(excursion)) + 8;
}

}  // namespace detail

std::pair<OperatorMatrix, OperatorMatrix> ladder_ops(const ModeBasis& basis) {
    validate(basis);
    RealMatrix a = lowering_real(basis.dim);
    return {a.cast<std::complex<double>>(), a.transpose().cast<std::complex<double>>()};
}

OperatorMatrix phase_op(const ModeBasis& basis) {
    validate(basis);
    RealMatrix a = lowering_real(basis.dim);
    RealMatrix phi = basis.phi_zpf * (a + a.transpose());
    return phi.cast<std::complex<double>>();
}

OperatorMatrix number_op(const ModeBasis& basis) {
    validate(basis);
    RealMatrix a = lowering_real(basis.dim);
    RealMatrix ad_minus_a = a.transpose() - a;
    return std::complex<double>(0.0, basis.n_zpf) *
           ad_minus_a.cast<std::complex<double>>();
}

OperatorMatrix cosine_phase_op(const ModeBasis& basis, double offset) {
    validate(basis);
    const int big = detail::converged_workspace(basis.dim + basis.pad, basis.phi_zpf);
    RealMatrix a = lowering_real(big);
    RealMatrix phi = basis.phi_zpf * (a + a.transpose());
    OperatorMatrix e_iphi =
        matrix_exponential(std::complex<double>(0.0, 1.0) * phi.cast<std::complex<double>>());
    // cos(phi - offset) = cos(phi) cos(offset) + sin(phi) sin(offset);
    // both factors are real symmetric in this basis.
    RealMatrix cos_phi = 0.5 * (e_iphi + e_iphi.adjoint()).real();
    RealMatrix sin_phi =
        (0.5 * (e_iphi - e_iphi.adjoint()) * std::complex<double>(0.0, -1.0)).real();
    RealMatrix result = std::cos(offset) * cos_phi + std::sin(offset) * sin_phi;
    return result.topLeftCorner(basis.dim, basis.dim).cast<std::complex<double>>();
}

OperatorMatrix tensor_product(const OperatorMatrix& a, const OperatorMatrix& b) {
    OperatorMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

RealMatrix tensor_product(const RealMatrix& a, const RealMatrix& b) {
    RealMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

OperatorMatrix matrix_exponential(const OperatorMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("matrix_exponential: matrix must be square");
    const Eigen::Index n = m.rows();
    const double norm = m.norm();
    int squarings = 0;
    if (norm > 0.25)
        squarings = int(std::ceil(std::log2(norm / 0.25)));
    const OperatorMatrix scaled = m / std::pow(2.0, squarings);

    OperatorMatrix result = OperatorMatrix::Identity(n, n);
    OperatorMatrix term = OperatorMatrix::Identity(n, n);
    for (int k = 1; k <= 32; ++k) {
        term = (scaled * term) / double(k);
        result += term;
        if (term.norm() <= 1e-17 * result.norm()) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

double hermiticity_defect(const OperatorMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace fluxmol
