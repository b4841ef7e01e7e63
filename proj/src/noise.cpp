#include "fluxmol/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fluxmol/spectrum.hpp"

namespace fluxmol {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPlanckOverBoltzmann = 6.62607015e-34 / 1.380649e-23;  // K s

double coupling(double amplitude, double eta, RateMode mode) {
    return mode == RateMode::paper_literal ? std::sqrt(amplitude * eta)
                                           : amplitude * std::sqrt(eta);
}

/// Solves Gamma = 2 pi g(A, eta) S with eta = ln(Gamma / (2 pi f_ir)),
/// S in 1/s. Fixed-point iteration from eta0 = 10, with a bisection
/// fallback on eta in [1, 40]; the stable root is the larger one.
DephasingResult solve_rate(double amplitude, double slope_hz, double f_ir, RateMode mode) {
    if (!(f_ir > 0.0)) throw std::invalid_argument("dephasing: f_ir must be > 0");
    if (amplitude < 0.0) throw std::invalid_argument("dephasing: amplitude must be >= 0");
    DephasingResult result;
    result.mode = mode;
    const double slope = std::abs(slope_hz);
    if (amplitude == 0.0 || slope == 0.0) return result;  // gamma = 0, eta undefined

    auto gamma_of = [&](double eta) { return kTwoPi * coupling(amplitude, eta, mode) * slope; };
    auto eta_residual = [&](double eta) {
        return eta - std::log(gamma_of(eta) / (kTwoPi * f_ir));
    };

    double eta = 10.0;
    for (int it = 1; it <= 100; ++it) {
        const double gamma = gamma_of(eta);
        const double eta_next = std::log(gamma / (kTwoPi * f_ir));
        if (!(eta_next > 0.0)) break;  // rate below the infrared cutoff
        const double gamma_next = gamma_of(eta_next);
        result.iterations = it;
        if (std::abs(gamma_next - gamma) <= 1e-6 * gamma_next) {
            result.gamma = gamma_next;
            result.eta = eta_next;
            return result;
        }
        eta = eta_next;
    }

    // Bisection fallback on [1, 40].
    double lo = 1.0, hi = 40.0;
    double flo = eta_residual(lo), fhi = eta_residual(hi);
    if (flo * fhi > 0.0)
        throw std::runtime_error(
            "dephasing: fixed point did not converge (no self-consistent eta; "
            "rate below the 2*pi*f_ir infrared cutoff?)");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = eta_residual(mid);
        ++result.iterations;
        if (fmid == 0.0 || hi - lo < 1e-14) {
            lo = hi = mid;
            break;
        }
        (flo * fmid <= 0.0 ? hi : lo) = mid;
        (flo * fmid <= 0.0 ? fhi : flo) = fmid;
    }
    result.eta = 0.5 * (lo + hi);
    result.gamma = gamma_of(result.eta);
    return result;
}

}  // namespace

void validate(const FluxNoiseModel& model) {
    if (model.a_com < 0.0 || model.a_diff < 0.0)
        throw std::invalid_argument("FluxNoiseModel: amplitudes must be >= 0");
    if (!(model.f_ir > 0.0))
        throw std::invalid_argument("FluxNoiseModel: f_ir must be > 0");
}

const char* to_string(RateMode mode) {
    return mode == RateMode::paper_literal ? "paper-literal" : "conventional";
}

RateMode rate_mode_from_string(const std::string& s) {
    if (s == "paper-literal") return RateMode::paper_literal;
    if (s == "conventional") return RateMode::conventional;
    throw std::invalid_argument("unknown rate mode: " + s);
}

double one_over_f_psd(double amplitude, double omega) {
    if (omega == 0.0) throw std::invalid_argument("one_over_f_psd: omega = 0 is singular");
    return amplitude * amplitude / std::abs(omega);
}

DephasingResult ramsey_rate_common(const FluxNoiseModel& model, double slope_ghz_per_phi0,
                                   RateMode mode) {
    validate(model);
    if (!std::isfinite(slope_ghz_per_phi0))
        throw std::invalid_argument("ramsey_rate_common: slope must be finite");
    return solve_rate(model.a_com, slope_ghz_per_phi0 * 1e9, model.f_ir, mode);
}

DephasingResult ramsey_rate_diff(const FluxNoiseModel& model, double phi_ext,
                                 double alpha_slope_ghz, RateMode mode) {
    validate(model);
    if (phi_ext == 0.0)
        throw std::invalid_argument("ramsey_rate_diff: phi_ext = 0 is singular (1/phi_ext)");
    const double effective_slope = std::abs(alpha_slope_ghz / phi_ext);
    return solve_rate(model.a_diff, effective_slope * 1e9, model.f_ir, mode);
}

double echo_ramsey_ratio(double gamma_r, double f_ir) {
    if (!(f_ir > 0.0)) throw std::invalid_argument("echo_ramsey_ratio: f_ir must be > 0");
    if (!(gamma_r > kTwoPi * f_ir))
        throw std::domain_error("echo_ramsey_ratio: requires gamma_r > 2 pi f_ir");
    return std::sqrt(std::log(gamma_r / (kTwoPi * f_ir)) / std::numbers::ln2);
}

DephasingResult critical_current_dephasing(const MoleculeParams& params, double phi_ext,
                                           const ModeBasis& basis,
                                           CriticalCurrentTarget target, double rel_amp,
                                           int n_array, RateMode mode) {
    validate(params);
    if (!(rel_amp >= 0.0))
        throw std::invalid_argument("critical_current_dephasing: rel_amp must be >= 0");
    if (target == CriticalCurrentTarget::junction_array && n_array < 1)
        throw std::invalid_argument("critical_current_dephasing: n_array must be >= 1");

    constexpr double eps = 1e-4;  // relative step in E
    MoleculeParams up = params, dn = params;
    if (target == CriticalCurrentTarget::small_junction) {
        up.e_j *= 1.0 + eps;
        dn.e_j *= 1.0 - eps;
    } else {
        up.e_l *= 1.0 + eps;
        dn.e_l *= 1.0 - eps;
    }
    const double f_up = spectrum_at(up, phi_ext, basis).transition(TransitionLabel::ge);
    const double f_dn = spectrum_at(dn, phi_ext, basis).transition(TransitionLabel::ge);
    const double dfdlnE = (f_up - f_dn) / (2.0 * eps);  // GHz per unit ln E

    double amplitude = rel_amp;
    if (target == CriticalCurrentTarget::junction_array)
        amplitude /= std::sqrt(double(n_array));
    DephasingResult result = solve_rate(amplitude, std::abs(dfdlnE) * 1e9, 1.0, mode);
    return result;
}

double photon_noise_rate(double n_bar, double kappa, double chi) {
    if (!(kappa > 0.0)) throw std::invalid_argument("photon_noise_rate: kappa must be > 0");
    if (n_bar < 0.0) throw std::invalid_argument("photon_noise_rate: n_bar must be >= 0");
    return n_bar * kappa * chi * chi / (kappa * kappa + chi * chi);
}

PhaseSlipEstimate phase_slip_estimate(const MoleculeParams& params) {
    validate(params);
    PhaseSlipEstimate est;
    est.e_s = std::pow(params.e_j * params.e_j * params.e_j * params.e_c, 0.25) *
              std::exp(-std::sqrt(8.0 * params.e_j / params.e_c));
    est.delta = (2.0 / 3.0) * std::numbers::pi * std::numbers::pi * params.e_l;
    est.splitting = est.e_s * est.e_s / est.delta;
    return est;
}

double thermal_population(double f_ge_ghz, double temperature_k) {
    if (!(temperature_k > 0.0))
        throw std::invalid_argument("thermal_population: temperature must be > 0");
    const double x = kPlanckOverBoltzmann * f_ge_ghz * 1e9 / temperature_k;
    return 1.0 / (1.0 + std::exp(x));
}

}  // namespace fluxmol
