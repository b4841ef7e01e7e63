#pragma once

#include <string>
#include <vector>

#include "fluxmol/circuit.hpp"

namespace fluxmol {

enum class TransitionLabel { ge, gf, gh, gd, ef };

const char* to_string(TransitionLabel label);
TransitionLabel transition_label_from_string(const std::string& s);

/// Ground-referenced eigenvalues plus the named transitions. Labels are
/// assigned by energy ordering: ge = 1st excited, gf = 2nd, gh = 3rd,
/// gd = 4th, ef = gf - ge. Levels not covered by k are NaN.
struct Spectrum {
    std::vector<double> levels;  // GHz, levels[0] == 0
    double transition(TransitionLabel label) const;
};

/// Lowest k eigenvalues of a Hermitian matrix, ground-referenced.
/// Entrywise asymmetry above 1e-9 is a contract violation.
Spectrum diagonalize(const OperatorMatrix& h, int k = 8);

/// Raw ascending eigenvalues (not referenced).
Eigen::VectorXd hermitian_eigenvalues(const OperatorMatrix& h);

struct EigenSystem {
    Eigen::VectorXd values;   // ascending, raw
    OperatorMatrix vectors;   // columns match values
};

EigenSystem hermitian_eigensystem(const OperatorMatrix& h);

/// Convenience: build + diagonalize at one flux point.
Spectrum spectrum_at(const MoleculeParams& params, double phi_ext,
                     const ModeBasis& basis, int k = 8);

struct SweepResult {
    std::vector<double> flux;        // Phi0 units
    std::vector<Spectrum> spectra;   // empty levels when a point failed
    std::vector<char> converged;     // per-point success flag
};

/// One spectrum per flux point; points are independent and evaluated in
/// parallel (capped by FLUXMOL_THREADS), gathered in flux order. A failing
/// point is flagged rather than aborting the sweep.
SweepResult flux_sweep(const MoleculeParams& params, const std::vector<double>& flux_grid,
                       const ModeBasis& basis, int k = 8);

struct ConvergenceRow {
    int dim = 0;
    double f_ge = 0.0;
    bool converged = false;  // relative change from the previous row < 1e-4
};

std::vector<ConvergenceRow> convergence_check(const MoleculeParams& params, double phi_ext,
                                              const std::vector<int>& dims);

/// d f_label / d phi_ext by central difference, step 1e-4 Phi0. GHz per Phi0.
double flux_sensitivity(const MoleculeParams& params, double phi_ext,
                        const ModeBasis& basis, TransitionLabel label);

/// d f_label / d (alpha/2) by central difference, step 1e-5. GHz per unit.
double asymmetry_sensitivity(const MoleculeParams& params, double phi_ext,
                             const ModeBasis& basis, TransitionLabel label);

/// <v|P|v> for the mode-swap permutation P; +-1 when the Hamiltonian
/// commutes with the swap.
double swap_parity(const Eigen::VectorXcd& state, int dim);

struct WavefunctionGrid {
    std::vector<double> phi1_axis;       // radians
    std::vector<double> phi2_axis;
    std::vector<int> states;             // eigenstate indices
    std::vector<RealMatrix> amplitude;   // one real grid per state
};

/// Eigenvectors contracted against oscillator position wavefunctions.
/// The global phase is fixed by making the largest-magnitude grid value
/// positive real.
WavefunctionGrid wavefunction_grid(const MoleculeParams& params, double phi_ext,
                                   const ModeBasis& basis, const std::vector<int>& states,
                                   const std::vector<double>& phi1_axis,
                                   const std::vector<double>& phi2_axis);

}  // namespace fluxmol
