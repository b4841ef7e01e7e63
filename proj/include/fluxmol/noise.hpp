#pragma once

#include "fluxmol/circuit.hpp"

namespace fluxmol {

/// 1/f flux-noise amplitudes (units of Phi0) and the infrared cutoff (Hz)
/// set by the total averaging time.
struct FluxNoiseModel {
    double a_com = 0.0;
    double a_diff = 0.0;
    double f_ir = 1.0;
};

void validate(const FluxNoiseModel& model);

/// Coupling of the noise amplitude into the Ramsey rate:
///   paper_literal:  Gamma = 2 pi sqrt(A eta) |slope|
///   conventional:   Gamma = 2 pi A sqrt(eta) |slope|   (dimensionally homogeneous)
/// with eta = ln(Gamma / (2 pi f_ir)) solved self-consistently.
enum class RateMode { paper_literal, conventional };

const char* to_string(RateMode mode);
RateMode rate_mode_from_string(const std::string& s);

struct DephasingResult {
    double gamma = 0.0;  // 1/s
    double eta = 0.0;    // ln(gamma / (2 pi f_ir)) at the fixed point
    int iterations = 0;
    RateMode mode = RateMode::conventional;
};

/// S(omega) = A^2 / |omega|, in Phi0^2 / (rad/s).
double one_over_f_psd(double amplitude, double omega);

/// Ramsey dephasing rate from common-mode 1/f flux noise;
/// slope is d f_ge / d phi_ext in GHz per Phi0.
DephasingResult ramsey_rate_common(const FluxNoiseModel& model, double slope_ghz_per_phi0,
                                   RateMode mode = RateMode::conventional);

/// Ramsey dephasing rate from differential-mode 1/f flux noise;
/// alpha_slope is d f_ge / d (alpha/2) in GHz, and the effective flux slope
/// is |alpha_slope| / phi_ext. phi_ext = 0 is a singularity.
DephasingResult ramsey_rate_diff(const FluxNoiseModel& model, double phi_ext,
                                 double alpha_slope_ghz,
                                 RateMode mode = RateMode::conventional);

/// sqrt(ln(gamma_r / (2 pi f_ir)) / ln 2); requires gamma_r > 2 pi f_ir.
double echo_ramsey_ratio(double gamma_r, double f_ir);

enum class CriticalCurrentTarget { small_junction, junction_array };

/// Dephasing limit from fractional critical-current noise. The sensitivity
/// |d f_ge / d ln E| is taken by central difference (relative step 1e-4)
/// with E = E_J for the small junctions (both varied together) or E = E_L
/// for the array; the array amplitude is suppressed by sqrt(n_array).
DephasingResult critical_current_dephasing(const MoleculeParams& params, double phi_ext,
                                           const ModeBasis& basis,
                                           CriticalCurrentTarget target, double rel_amp,
                                           int n_array = 1,
                                           RateMode mode = RateMode::conventional);

/// Gamma = n_bar kappa chi^2 / (kappa^2 + chi^2); kappa, chi in rad/s.
double photon_noise_rate(double n_bar, double kappa, double chi);

struct PhaseSlipEstimate {
    double e_s = 0.0;        // single phase-slip energy, GHz
    double delta = 0.0;      // (2/3) pi^2 E_L, GHz
    double splitting = 0.0;  // e_s^2 / delta, GHz
};

PhaseSlipEstimate phase_slip_estimate(const MoleculeParams& params);

/// Two-level Boltzmann excited-state occupancy at temperature T (kelvin).
double thermal_population(double f_ge_ghz, double temperature_k);

}  // namespace fluxmol
