#pragma once

#include <array>
#include <vector>

#include "fluxmol/spectrum.hpp"

namespace fluxmol {

/// One measured spectroscopy point.
struct TransitionObservation {
    double phi_ext = 0.0;     // Phi0 units
    double frequency = 0.0;   // GHz
    TransitionLabel label = TransitionLabel::ge;
    double weight = 1.0;
};

struct ParamBounds {
    std::array<double, 2> alpha{0.0, 0.2};
    std::array<double, 2> ratio{0.5, 20.0};  // E_J / E_C
    std::array<double, 2> e_l{0.1, 10.0};    // GHz
};

struct FitConfig {
    double ejec_product = 0.0;            // fixed E_J * E_C, GHz^2
    std::array<double, 3> initial{};      // (alpha, ratio, e_l)
    ParamBounds bounds;
    int basis_dim = 20;                   // during simplex iterations
    int polish_dim = 30;                  // final pass
    int max_evals = 400;                  // per stage
};

struct FitResult {
    MoleculeParams params;
    double residual = 0.0;  // weighted RMS, GHz
    int evaluations = 0;
    bool converged = false;
};

/// Reconstructs E_J = sqrt(product * ratio), E_C = sqrt(product / ratio).
MoleculeParams params_from_candidate(const std::array<double, 3>& candidate,
                                     double ejec_product);

/// Weighted RMS residual between the model transitions and the data at the
/// given basis dimension. Diagonalization failures yield a 1e6 GHz sentinel.
double fit_objective(const std::array<double, 3>& candidate, const FitConfig& config,
                     const std::vector<TransitionObservation>& data);

/// Bounded Nelder-Mead (reflection 1, expansion 2, contraction 0.5,
/// shrink 0.5) at basis_dim, then a polish pass at polish_dim. Requires at
/// least 4 observations spanning at least 2 distinct flux points. alpha is
/// reported >= 0 (the spectrum is invariant under alpha -> -alpha).
FitResult fit(const FitConfig& config, const std::vector<TransitionObservation>& data);

}  // namespace fluxmol
