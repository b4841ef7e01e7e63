#include "fluxmol/fitter.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "fluxmol/parallel.hpp"

namespace fluxmol {

namespace {

constexpr double kSentinel = 1e6;  // GHz, returned when diagonalization fails

using Candidate = std::array<double, 3>;

std::array<std::array<double, 2>, 3> bounds_array(const ParamBounds& b) {
    return {b.alpha, b.ratio, b.e_l};
}

double clamp_with_distance(Candidate& x, const ParamBounds& bounds, double* distance) {
    const auto lims = bounds_array(bounds);
    double total = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double lo = lims[size_t(i)][0], hi = lims[size_t(i)][1];
        const double clamped = std::clamp(x[size_t(i)], lo, hi);
        total += std::abs(x[size_t(i)] - clamped) / (hi - lo);
        x[size_t(i)] = clamped;
    }
    if (distance) *distance = total;
    return total;
}

}  // namespace

MoleculeParams params_from_candidate(const Candidate& candidate, double ejec_product) {
    MoleculeParams p;
    p.alpha = candidate[0];
    p.e_j = std::sqrt(ejec_product * candidate[1]);
    p.e_c = std::sqrt(ejec_product / candidate[1]);
    p.e_l = candidate[2];
    return p;
}

double fit_objective(const Candidate& candidate, const FitConfig& config,
                     const std::vector<TransitionObservation>& data) {
    if (data.empty()) throw std::invalid_argument("fit_objective: no observations");
    if (!(config.ejec_product > 0.0))
        throw std::invalid_argument("fit_objective: ejec_product must be > 0");

    MoleculeParams params;
    ModeBasis basis;
    try {
        params = params_from_candidate(candidate, config.ejec_product);
        validate(params);
        basis = make_mode_basis(params, config.basis_dim);
    } catch (const std::exception&) {
        return kSentinel;
    }

    // One diagonalization per distinct flux point.
    std::map<double, std::vector<size_t>> by_flux;
    for (size_t i = 0; i < data.size(); ++i) by_flux[data[i].phi_ext].push_back(i);
    std::vector<double> flux;
    flux.reserve(by_flux.size());
    for (const auto& [phi, _] : by_flux) flux.push_back(phi);

    std::vector<Spectrum> spectra(flux.size());
    std::vector<char> ok(flux.size(), 0);
    parallel_for(int(flux.size()), [&](int i) {
        try {
            spectra[size_t(i)] = spectrum_at(params, flux[size_t(i)], basis);
            ok[size_t(i)] = 1;
        } catch (const std::exception&) {
        }
    });

    double weighted_sq = 0.0, weight_sum = 0.0;
    for (size_t fi = 0; fi < flux.size(); ++fi) {
        if (!ok[fi]) return kSentinel;
        for (size_t idx : by_flux[flux[fi]]) {
            const auto& obs = data[idx];
            const double model = spectra[fi].transition(obs.label);
            if (!std::isfinite(model)) return kSentinel;
            const double r = model - obs.frequency;
            weighted_sq += obs.weight * r * r;
            weight_sum += obs.weight;
        }
    }
    if (!(weight_sum > 0.0)) throw std::invalid_argument("fit_objective: weights sum to zero");
    return std::sqrt(weighted_sq / weight_sum);
}

namespace {

struct SimplexPoint {
    Candidate x;
    double value = 0.0;
};

struct NelderMeadOutcome {
    Candidate best;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

NelderMeadOutcome nelder_mead(const Candidate& start, const FitConfig& config,
                              const std::vector<TransitionObservation>& data,
                              double initial_step_fraction) {
    const auto lims = bounds_array(config.bounds);
    int evaluations = 0;
    auto evaluate = [&](Candidate x) {
        double dist = 0.0;
        clamp_with_distance(x, config.bounds, &dist);
        ++evaluations;
        return fit_objective(x, config, data) + 1e3 * dist;
    };

    std::array<SimplexPoint, 4> simplex;
    simplex[0] = {start, evaluate(start)};
    for (int i = 0; i < 3; ++i) {
        Candidate x = start;
        const double span = lims[size_t(i)][1] - lims[size_t(i)][0];
        x[size_t(i)] += initial_step_fraction * span;
        if (x[size_t(i)] > lims[size_t(i)][1])
            x[size_t(i)] = start[size_t(i)] - initial_step_fraction * span;
        simplex[size_t(i) + 1] = {x, evaluate(x)};
    }

    constexpr double reflect = 1.0, expand = 2.0, contract = 0.5, shrink = 0.5;
    bool converged = false;
    while (evaluations < config.max_evals) {
        std::sort(simplex.begin(), simplex.end(),
                  [](const SimplexPoint& a, const SimplexPoint& b) { return a.value < b.value; });
        if (simplex[3].value - simplex[0].value < 1e-6) {
            converged = true;
            break;
        }
        Candidate centroid{};
        for (int i = 0; i < 3; ++i)
            for (int d = 0; d < 3; ++d) centroid[size_t(d)] += simplex[size_t(i)].x[size_t(d)] / 3.0;

        auto along = [&](double t) {
            Candidate x;
            for (int d = 0; d < 3; ++d)
                x[size_t(d)] = centroid[size_t(d)] + t * (centroid[size_t(d)] - simplex[3].x[size_t(d)]);
            return x;
        };

        const Candidate xr = along(reflect);
        const double fr = evaluate(xr);
        if (fr < simplex[0].value) {
            const Candidate xe = along(expand);
            const double fe = evaluate(xe);
            simplex[3] = fe < fr ? SimplexPoint{xe, fe} : SimplexPoint{xr, fr};
            continue;
        }
        if (fr < simplex[2].value) {
            simplex[3] = {xr, fr};
            continue;
        }
        const Candidate xc = along(fr < simplex[3].value ? contract : -contract);
        const double fc = evaluate(xc);
        if (fc < std::min(fr, simplex[3].value)) {
            simplex[3] = {xc, fc};
            continue;
        }
        for (int i = 1; i < 4; ++i) {
            for (int d = 0; d < 3; ++d)
                simplex[size_t(i)].x[size_t(d)] =
                    simplex[0].x[size_t(d)] +
                    shrink * (simplex[size_t(i)].x[size_t(d)] - simplex[0].x[size_t(d)]);
            simplex[size_t(i)].value = evaluate(simplex[size_t(i)].x);
        }
    }
    std::sort(simplex.begin(), simplex.end(),
              [](const SimplexPoint& a, const SimplexPoint& b) { return a.value < b.value; });
    return {simplex[0].x, simplex[0].value, evaluations, converged};
}

}  // namespace

FitResult fit(const FitConfig& config, const std::vector<TransitionObservation>& data) {
    if (data.size() < 4)
        throw std::invalid_argument("fit: need at least 4 observations");
    {
        double first = data.front().phi_ext;
        bool two_fluxes = false;
        for (const auto& obs : data)
            if (obs.phi_ext != first) {
                two_fluxes = true;
                break;
            }
        if (!two_fluxes)
            throw std::invalid_argument("fit: observations must span at least 2 flux points");
    }
    const auto lims = bounds_array(config.bounds);
    Candidate start = config.initial;
    start[0] = std::abs(start[0]);  // alpha sign is not identifiable
    for (int i = 0; i < 3; ++i)
        if (start[size_t(i)] < lims[size_t(i)][0] || start[size_t(i)] > lims[size_t(i)][1])
            throw std::invalid_argument("fit: initial candidate outside bounds");

    NelderMeadOutcome coarse = nelder_mead(start, config, data, 0.05);

    FitConfig polish_config = config;
    polish_config.basis_dim = config.polish_dim;
    NelderMeadOutcome polish = nelder_mead(coarse.best, polish_config, data, 0.005);

    FitResult result;
    result.params = params_from_candidate(polish.best, config.ejec_product);
    result.params.alpha = std::abs(result.params.alpha);
    result.residual = fit_objective(polish.best, polish_config, data);
    result.evaluations = coarse.evaluations + polish.evaluations + 1;
    result.converged = coarse.converged && polish.converged;
    return result;
}

}  // namespace fluxmol
