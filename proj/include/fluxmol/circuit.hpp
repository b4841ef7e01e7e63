#pragma once

#include <vector>

#include "fluxmol/operators.hpp"

namespace fluxmol {

/// Circuit energies of the two-fluxonium molecule, in GHz (E/h), plus the
/// fractional flux asymmetry alpha between the two loops.
struct MoleculeParams {
    double e_j = 0.0;
    double e_c = 0.0;
    double e_l = 0.0;
    double alpha = 0.0;
};

void validate(const MoleculeParams& params);

/// Oscillator basis matched to the per-mode quadratic term of the molecule.
///
/// The width is narrowed by a fixed factor from the bare inductive value
/// (2E_C / ((2/3)E_L))^(1/4) toward the junction-stiffened well width; this
/// balances the truncation error of the two Hamiltonian gauges so that both
/// converge at dim = 30 (see the gauge cross-check tests).
ModeBasis make_mode_basis(const MoleculeParams& params, int dim = 30, int pad = 8);

/// Molecule Hamiltonian, flux in the junction terms:
///   H = 4 E_C (n1^2 + n2^2) + (1/3) E_L (phi1^2 + phi2^2 + phi1 phi2)
///       - E_J cos(phi1 - (1 + alpha/2) 2 pi phi_ext)
///       - E_J cos(phi2 - (1 - alpha/2) 2 pi phi_ext)
/// phi_ext is the applied external flux in units of Phi0.
OperatorMatrix build_hamiltonian(const MoleculeParams& params, double phi_ext,
                                 const ModeBasis& basis);

/// Gauge-transformed form, flux in the quadratic terms:
///   H = 4 E_C (n1^2 + n2^2)
///       + (1/4) E_L [(phi1 + phi2 + phi_com)^2 + (1/3)(phi1 - phi2 + phi_diff)^2]
///       - 2 E_J cos((phi1 + phi2)/2) cos((phi1 - phi2)/2)
/// with phi_com = 2 * 2 pi phi_ext and phi_diff = alpha * 2 pi phi_ext.
/// Unitarily equivalent to build_hamiltonian; used as a cross-check.
OperatorMatrix build_hamiltonian_gauge2(const MoleculeParams& params, double phi_ext,
                                        const ModeBasis& basis);

/// Classical potential U(phi1, phi2) in GHz (charging term omitted).
double potential_value(const MoleculeParams& params, double phi_ext, double phi1,
                       double phi2);

struct PotentialGrid {
    std::vector<double> phi1_axis;  // radians
    std::vector<double> phi2_axis;
    RealMatrix values;              // values(i, j) = U(phi1_axis[i], phi2_axis[j]), GHz
};

PotentialGrid potential_landscape(const MoleculeParams& params, double phi_ext,
                                  const std::vector<double>& phi1_axis,
                                  const std::vector<double>& phi2_axis);

struct PotentialMinimum {
    double phi1 = 0.0;
    double phi2 = 0.0;
    double energy = 0.0;  // GHz
};

struct SearchBox {
    double lo = -2.0 * 3.14159265358979323846;
    double hi = 2.0 * 3.14159265358979323846;
};

/// All local minima of the classical potential inside the box, sorted by
/// energy. Seeded on a 201x201 grid, refined by compass descent to 1e-10 GHz;
/// duplicates within 1e-6 rad are merged. The box must cover [-2pi, 2pi]^2.
std::vector<PotentialMinimum> classical_minima(const MoleculeParams& params,
                                               double phi_ext,
                                               const SearchBox& box = {});

/// Number of minima within `tol` (GHz) of the lowest one.
int degenerate_minimum_count(const std::vector<PotentialMinimum>& minima,
                             double tol = 1e-6);

namespace detail {

/// Single-mode operator blocks shared by both Hamiltonian builders. All
/// products of mode operators are formed in the padded basis and cropped
/// once, so each block is the exact projection of its operator onto the
/// dim-dimensional subspace.
struct ModeOperators {
    RealMatrix phi;           // phi
    RealMatrix phi_sq;        // phi^2
    RealMatrix n_sq;          // n^2
    RealMatrix cos_phi;       // cos(phi)
    RealMatrix sin_phi;       // sin(phi)
    RealMatrix cos_sq_half;   // cos^2(phi/2)
    RealMatrix sin_sq_half;   // sin^2(phi/2)
};

ModeOperators mode_operators(const ModeBasis& basis);

}  // namespace detail

}  // namespace fluxmol
