// fluxmol: spectra, flux sweeps, parameter fits and dephasing budgets for the
// inductively coupled two-fluxonium molecule. Subcommands:
//   spectrum | sweep | fit | dephasing | potential
// Exit codes: 0 success, 2 input/validation error, 3 I/O error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fluxmol/config.hpp"
#include "fluxmol/csv.hpp"
#include "fluxmol/fitter.hpp"
#include "fluxmol/noise.hpp"
#include "fluxmol/parallel.hpp"
#include "fluxmol/spectrum.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open output file '" + path + "'");
    out << content;
    if (!out.good()) throw IoFailure("failed writing output file '" + path + "'");
}

std::vector<double> linspace(double from, double to, int points) {
    std::vector<double> grid(static_cast<size_t>(points));
    if (points == 1) {
        grid[0] = from;
        return grid;
    }
    for (int i = 0; i < points; ++i)
        grid[size_t(i)] = from + (to - from) * i / double(points - 1);
    return grid;
}

fluxmol::ModeBasis basis_for(const fluxmol::DeviceConfig& config, int dim_override) {
    const int dim = dim_override > 0 ? dim_override : config.basis_dim;
    return fluxmol::make_mode_basis(config.params, dim);
}

int cmd_spectrum(const fluxmol::DeviceConfig& config, double phi_ext, int dim_override,
                 const std::string& out_path) {
    const auto basis = basis_for(config, dim_override);
    const fluxmol::Spectrum spectrum = fluxmol::spectrum_at(config.params, phi_ext, basis);

    std::printf("# %s  phi_ext=%.6g  dim=%d\n", config.name.c_str(), phi_ext, basis.dim);
    std::printf("%-8s %s\n", "level", "energy_ghz");
    for (size_t i = 0; i < spectrum.levels.size(); ++i)
        std::printf("%-8zu %.6g\n", i, spectrum.levels[i]);
    std::printf("%-8s %s\n", "label", "frequency_ghz");
    using TL = fluxmol::TransitionLabel;
    for (TL label : {TL::ge, TL::gf, TL::gh, TL::gd, TL::ef})
        std::printf("%-8s %.6g\n", fluxmol::to_string(label), spectrum.transition(label));

    if (!out_path.empty()) {
        std::ostringstream csv;
        csv << "quantity,label,value_ghz\n";
        for (size_t i = 0; i < spectrum.levels.size(); ++i)
            csv << "level," << i << ',' << fluxmol::format_double(spectrum.levels[i]) << "\n";
        for (TL label : {TL::ge, TL::gf, TL::gh, TL::gd, TL::ef})
            csv << "transition," << fluxmol::to_string(label) << ','
                << fluxmol::format_double(spectrum.transition(label)) << "\n";
        write_file(out_path, csv.str());
    }
    return kExitOk;
}

int cmd_sweep(const fluxmol::DeviceConfig& config, double from, double to, int points,
              int dim_override, const std::string& out_path) {
    if (points < 2) throw std::invalid_argument("sweep: --points must be >= 2");
    if (out_path.empty()) throw std::invalid_argument("sweep: --out is required");
    const auto basis = basis_for(config, dim_override);
    const std::vector<double> grid = linspace(from, to, points);

    struct Row {
        fluxmol::Spectrum spectrum;
        double slope = std::numeric_limits<double>::quiet_NaN();
        bool ok = false;
    };
    std::vector<Row> rows(grid.size());
    fluxmol::parallel_for(int(grid.size()), [&](int i) {
        try {
            rows[size_t(i)].spectrum = fluxmol::spectrum_at(config.params, grid[size_t(i)], basis);
            rows[size_t(i)].slope = fluxmol::flux_sensitivity(config.params, grid[size_t(i)], basis,
                                                              fluxmol::TransitionLabel::ge);
            rows[size_t(i)].ok = true;
        } catch (const std::exception&) {
        }
    });

    std::ostringstream csv;
    csv << "phi_ext,f_ge,f_gf,f_gh,f_gd,dfge_dphi\n";
    using TL = fluxmol::TransitionLabel;
    for (size_t i = 0; i < grid.size(); ++i) {
        csv << fluxmol::format_double(grid[i]);
        if (rows[i].ok) {
            for (TL label : {TL::ge, TL::gf, TL::gh, TL::gd})
                csv << ',' << fluxmol::format_double(rows[i].spectrum.transition(label));
            csv << ',' << fluxmol::format_double(rows[i].slope);
        } else {
            csv << ",nan,nan,nan,nan,nan";
        }
        csv << "\n";
    }
    write_file(out_path, csv.str());
    return kExitOk;
}

int cmd_fit(const fluxmol::DeviceConfig& config, const std::string& data_path, int dim_override,
            const std::string& out_path) {
    std::vector<std::string> warnings;
    std::vector<fluxmol::TransitionObservation> data =
        fluxmol::load_spectroscopy_csv(data_path, &warnings);
    for (const auto& w : warnings) std::cerr << "fluxmol: warning: " << w << "\n";
    if (data.size() < 4)
        throw std::invalid_argument("fit: need at least 4 data rows, got " +
                                    std::to_string(data.size()));

    fluxmol::FitConfig fit_config;
    fit_config.ejec_product = config.params.e_j * config.params.e_c;
    fit_config.initial = {std::abs(config.params.alpha), config.params.e_j / config.params.e_c,
                          config.params.e_l};
    fit_config.polish_dim = dim_override > 0 ? dim_override : config.basis_dim;
    fit_config.basis_dim = std::min(20, fit_config.polish_dim);
    const fluxmol::FitResult result = fluxmol::fit(fit_config, data);

    std::ostringstream report;
    report << "# fluxmol fit: " << config.name << "\n";
    report << "data_rows = " << data.size() << "\n";
    report << "ejec_product_ghz2 = " << fluxmol::format_double(fit_config.ejec_product) << "\n";
    report << "alpha = " << fluxmol::format_double(result.params.alpha) << "\n";
    report << "ej_over_ec = "
           << fluxmol::format_double(result.params.e_j / result.params.e_c) << "\n";
    report << "e_j_ghz = " << fluxmol::format_double(result.params.e_j) << "\n";
    report << "e_c_ghz = " << fluxmol::format_double(result.params.e_c) << "\n";
    report << "e_l_ghz = " << fluxmol::format_double(result.params.e_l) << "\n";
    report << "residual_rms_ghz = " << fluxmol::format_double(result.residual) << "\n";
    report << "evaluations = " << result.evaluations << "\n";
    report << "converged = " << (result.converged ? "true" : "false") << "\n";
    std::fputs(report.str().c_str(), stdout);
    if (!out_path.empty()) write_file(out_path, report.str());
    return kExitOk;
}

int cmd_dephasing(const fluxmol::DeviceConfig& config, double from, double to, int points,
                  const std::string& mode_name, int dim_override, const std::string& out_path) {
    if (points < 2) throw std::invalid_argument("dephasing: --points must be >= 2");
    if (out_path.empty()) throw std::invalid_argument("dephasing: --out is required");
    const fluxmol::RateMode mode = fluxmol::rate_mode_from_string(mode_name);
    const std::vector<double> grid = linspace(from, to, points);
    for (double phi : grid)
        if (phi == 0.0)
            throw std::invalid_argument(
                "dephasing: flux range must exclude 0 (differential rate has a 1/phi_ext "
                "singularity)");
    if (from * to < 0.0)
        throw std::invalid_argument(
            "dephasing: flux range must not cross 0 (differential rate has a 1/phi_ext "
            "singularity)");

    const auto basis = basis_for(config, dim_override);
    struct Row {
        double common = 0.0, diff = 0.0;
        bool ok = false;
    };
    std::vector<Row> rows(grid.size());
    std::string first_error;
    fluxmol::parallel_for(int(grid.size()), [&](int i) {
        try {
            const double phi = grid[size_t(i)];
            const double slope = fluxmol::flux_sensitivity(config.params, phi, basis,
                                                           fluxmol::TransitionLabel::ge);
            const double alpha_slope = fluxmol::asymmetry_sensitivity(
                config.params, phi, basis, fluxmol::TransitionLabel::ge);
            rows[size_t(i)].common = fluxmol::ramsey_rate_common(config.noise, slope, mode).gamma;
            rows[size_t(i)].diff =
                fluxmol::ramsey_rate_diff(config.noise, phi, alpha_slope, mode).gamma;
            rows[size_t(i)].ok = true;
        } catch (const std::exception& e) {
            if (first_error.empty()) first_error = e.what();
        }
    });
    for (const Row& row : rows)
        if (!row.ok) throw std::invalid_argument("dephasing: " + first_error);

    std::ostringstream csv;
    csv << "# mode=" << fluxmol::to_string(mode) << "\n";
    csv << "phi_ext,gamma_common,gamma_diff,gamma_total\n";
    for (size_t i = 0; i < grid.size(); ++i) {
        csv << fluxmol::format_double(grid[i]) << ',' << fluxmol::format_double(rows[i].common)
            << ',' << fluxmol::format_double(rows[i].diff) << ','
            << fluxmol::format_double(rows[i].common + rows[i].diff) << "\n";
    }
    write_file(out_path, csv.str());
    return kExitOk;
}

int cmd_potential(const fluxmol::DeviceConfig& config, double phi_ext, int grid_points,
                  const std::string& out_path) {
    if (grid_points < 11)
        throw std::invalid_argument("potential: --grid must be >= 11");
    if (out_path.empty()) throw std::invalid_argument("potential: --out is required");
    const double half_width = 2.0 * std::numbers::pi;
    const std::vector<double> axis = linspace(-half_width, half_width, grid_points);
    const fluxmol::PotentialGrid grid =
        fluxmol::potential_landscape(config.params, phi_ext, axis, axis);
    const auto minima = fluxmol::classical_minima(config.params, phi_ext);

    std::ostringstream csv;
    csv << "phi1,phi2,u_ghz\n";
    for (size_t i = 0; i < grid.phi1_axis.size(); ++i)
        for (size_t j = 0; j < grid.phi2_axis.size(); ++j)
            csv << fluxmol::format_double(grid.phi1_axis[i]) << ','
                << fluxmol::format_double(grid.phi2_axis[j]) << ','
                << fluxmol::format_double(grid.values(Eigen::Index(i), Eigen::Index(j))) << "\n";
    csv << "# minima: phi1,phi2,u_ghz (ascending energy)\n";
    for (const auto& m : minima)
        csv << "# " << fluxmol::format_double(m.phi1) << ',' << fluxmol::format_double(m.phi2)
            << ',' << fluxmol::format_double(m.energy) << "\n";
    csv << "# degenerate_lowest_wells = " << fluxmol::degenerate_minimum_count(minima) << "\n";
    write_file(out_path, csv.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-fluxonium molecule spectra, fits and noise budgets"};
    app.require_subcommand(1);

    std::string config_path, out_path, data_path;
    std::string mode_name = "conventional";
    double phi_ext = 0.0, from = 0.0, to = 1.0;
    int points = 101, dim_override = 0, grid_points = 101;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "device config file")->required();
        cmd->add_option("--dim", dim_override, "basis dimension override");
    };

    CLI::App* spectrum = app.add_subcommand("spectrum", "levels and transitions at one flux");
    add_common(spectrum);
    spectrum->add_option("--phi", phi_ext, "external flux in Phi0 units")->required();
    spectrum->add_option("--out", out_path, "optional CSV output path");

    CLI::App* sweep = app.add_subcommand("sweep", "transition frequencies over a flux range");
    add_common(sweep);
    sweep->add_option("--from", from, "first flux point")->required();
    sweep->add_option("--to", to, "last flux point")->required();
    sweep->add_option("--points", points, "number of flux points")->required();
    sweep->add_option("--out", out_path, "CSV output path")->required();

    CLI::App* fit = app.add_subcommand("fit", "fit (alpha, E_J/E_C, E_L) to spectroscopy data");
    add_common(fit);
    fit->add_option("--data", data_path, "spectroscopy CSV")->required();
    fit->add_option("--out", out_path, "fit report output path");

    CLI::App* dephasing = app.add_subcommand("dephasing", "flux-noise Ramsey rates over flux");
    add_common(dephasing);
    dephasing->add_option("--from", from, "first flux point")->required();
    dephasing->add_option("--to", to, "last flux point")->required();
    dephasing->add_option("--points", points, "number of flux points")->required();
    dephasing->add_option("--mode", mode_name, "paper-literal or conventional");
    dephasing->add_option("--out", out_path, "CSV output path")->required();

    CLI::App* potential = app.add_subcommand("potential", "classical potential landscape");
    add_common(potential);
    potential->add_option("--phi", phi_ext, "external flux in Phi0 units")->required();
    potential->add_option("--grid", grid_points, "grid points per axis (>= 11)");
    potential->add_option("--out", out_path, "CSV output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "fluxmol: " << e.what() << "\n";
        return kExitValidation;
    }

    try {
        const fluxmol::DeviceConfig config = fluxmol::load_device_config(config_path);
        if (spectrum->parsed()) return cmd_spectrum(config, phi_ext, dim_override, out_path);
        if (sweep->parsed()) return cmd_sweep(config, from, to, points, dim_override, out_path);
        if (fit->parsed()) return cmd_fit(config, data_path, dim_override, out_path);
        if (dephasing->parsed())
            return cmd_dephasing(config, from, to, points, mode_name, dim_override, out_path);
        if (potential->parsed()) return cmd_potential(config, phi_ext, grid_points, out_path);
        std::cerr << "fluxmol: no subcommand\n";
        return kExitValidation;
    } catch (const IoFailure& e) {
        std::cerr << "fluxmol: " << e.what() << "\n";
        return kExitIo;
    } catch (const fluxmol::CsvError& e) {
        std::cerr << "fluxmol: " << e.what() << "\n";
        return kExitValidation;
    } catch (const fluxmol::ConfigError& e) {
        std::cerr << "fluxmol: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "fluxmol: " << e.what() << "\n";
        return kExitValidation;
    }
}
