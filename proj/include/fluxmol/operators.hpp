#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

namespace fluxmol {

using OperatorMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

/// Truncated harmonic-oscillator basis for one circuit mode.
///
/// phi_zpf and n_zpf are the zero-point amplitudes of the phase and
/// Cooper-pair-number operators; the canonical commutator [phi, n] = i
/// requires phi_zpf * n_zpf = 1/2. `pad` is the oversize margin used when
/// nonlinear functions of phi are built (the operator is assembled in a
/// (dim+pad)-dimensional space and cropped back to dim x dim).
struct ModeBasis {
    int dim = 30;
    double phi_zpf = 0.0;
    double n_zpf = 0.0;
    int pad = 8;
};

/// Throws std::invalid_argument if the basis violates its invariants
/// (dim >= 2, pad >= 0, phi_zpf * n_zpf = 1/2).
void validate(const ModeBasis& basis);

/// Lowering and raising operators: lowering(k-1, k) = sqrt(k).
std::pair<OperatorMatrix, OperatorMatrix> ladder_ops(const ModeBasis& basis);

/// phi = phi_zpf (a + a†)
OperatorMatrix phase_op(const ModeBasis& basis);

/// n = i n_zpf (a† - a)
OperatorMatrix number_op(const ModeBasis& basis);

/// cos(phi - offset), assembled via exp(i phi) in the padded basis and
/// cropped to dim x dim.
OperatorMatrix cosine_phase_op(const ModeBasis& basis, double offset);

/// Kronecker product; the left factor is mode 1.
OperatorMatrix tensor_product(const OperatorMatrix& a, const OperatorMatrix& b);
RealMatrix tensor_product(const RealMatrix& a, const RealMatrix& b);

/// Dense matrix exponential by scaling-and-squaring with a Taylor kernel.
OperatorMatrix matrix_exponential(const OperatorMatrix& m);

/// Max entrywise |M - M†|.
double hermiticity_defect(const OperatorMatrix& m);

namespace detail {

/// Workspace size for nonlinear functions of phi. `floor_dim` (= dim + pad)
/// is a lower bound; the workspace is extended so that the cropped block is
/// converged to ~1e-10 entrywise, which needs roughly the classical level
/// excursion phi_zpf * sqrt(2 n) extra states.
int converged_workspace(int floor_dim, double phi_zpf);

}  // namespace detail

inline bool is_hermitian(const OperatorMatrix& m, double tol = 1e-12) {
    return hermiticity_defect(m) <= tol;
}

}  // namespace fluxmol
