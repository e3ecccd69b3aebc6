// SPDX-License-Identifier: Apache-2.0
//
// Experiment runner: figure presets and custom sweeps for the probability
// that treating interference as noise is optimal in a cell-free network.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cfmimo/experiment.hpp"
#include "cfmimo/numerics.hpp"

namespace cli = cfmimo::cli;

int main(int argc, char** argv) {
    CLI::App app{"TIN-condition probability experiments for cell-free massive MIMO"};

    std::string preset = "custom";
    std::string model = "ppp";
    std::string config_path;
    std::string out_dir = "out";
    std::string sigma2_text;
    std::string sweep_variable;
    std::vector<double> sweep_values;
    long trials = 20000;
    std::uint64_t seed = 1;
    int grid_points = 121;
    int workers = 0;
    double radius = 0, alpha = 0, rho = 0, kappa = 0, mu = 0, influence = 0;
    int num_aps = 0, num_ues = 0, tau_p = 0;

    app.add_option("--preset", preset, "fig3, fig4, fig5a, fig5b or custom");
    app.add_option("--config", config_path, "JSON experiment file (flags override it)");
    app.add_option("--trials", trials, "Monte Carlo trials per estimate");
    app.add_option("--seed", seed, "base seed for the deterministic trial streams");
    app.add_option("--model", model, "bpp, ppp or both (Monte Carlo columns)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--grid-points", grid_points, "abscissa resolution of curve tables");
    app.add_option("--workers", workers, "worker threads (0 = hardware)");
    app.add_option("--sweep", sweep_variable, "custom preset: field to sweep");
    app.add_option("--sweep-values", sweep_values, "custom preset: sweep values")
        ->delimiter(',');
    app.add_option("--R", radius, "coverage disk radius [m]");
    app.add_option("--L", num_aps, "number of APs");
    app.add_option("--K", num_ues, "number of UEs");
    app.add_option("--tau-p", tau_p, "orthogonal pilot sequences");
    app.add_option("--alpha", alpha, "pathloss exponent (> 1)");
    app.add_option("--rho", rho, "AP transmit power [W]");
    app.add_option("--sigma2", sigma2_text, "noise power, e.g. 3.98e-13, 3.98e-13W or -94dBm");
    app.add_option("--kappa", kappa, "TIN slack factor (>= 1)");
    app.add_option("--mu", mu, "TIN exponent in [1, 2]");
    app.add_option("--r", influence, "influence region radius [m]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& error) {
        app.exit(error);
        return 2;
    }

    try {
        cli::ExperimentSpec spec;
        if (!config_path.empty()) cli::load_spec_file(spec, config_path);
        if (app.count("--preset")) spec.preset = cli::preset_from_string(preset);
        if (app.count("--model")) spec.model = cli::model_from_string(model);
        if (app.count("--trials")) spec.n_trials = trials;
        if (app.count("--seed")) spec.seed = seed;
        if (app.count("--out")) spec.output_dir = out_dir;
        if (app.count("--grid-points")) spec.grid_points = grid_points;
        if (app.count("--workers")) spec.workers = workers;
        if (app.count("--sweep")) spec.sweep_variable = sweep_variable;
        if (app.count("--sweep-values")) spec.sweep_values = sweep_values;
        if (app.count("--R")) spec.base_config.radius = radius;
        if (app.count("--L")) spec.base_config.num_aps = num_aps;
        if (app.count("--K")) spec.base_config.num_ues = num_ues;
        if (app.count("--tau-p")) spec.base_config.num_pilots = tau_p;
        if (app.count("--alpha")) spec.base_config.pathloss_exponent = alpha;
        if (app.count("--rho")) spec.base_config.tx_power_w = rho;
        if (app.count("--sigma2")) spec.base_config.noise_power_w = cli::parse_sigma2(sigma2_text);
        if (app.count("--kappa")) spec.base_config.tin_kappa = kappa;
        if (app.count("--mu")) spec.base_config.tin_mu = mu;
        if (app.count("--r")) spec.base_config.influence_radius = influence;

        const std::vector<std::string> written = cli::run_experiment(spec);
        for (const std::string& path : written) std::cout << path << "\n";
        return 0;
    } catch (const cfmimo::ValidationError& error) {
        std::cerr << "validation error: " << error.what() << "\n";
        return 2;
    } catch (const cfmimo::numerics::QuadratureError& error) {
        std::cerr << "convergence failure: " << error.what()
                  << " (estimate " << error.last_estimate() << ", bound " << error.error_bound()
                  << ")\n";
        return 3;
    } catch (const std::ios_base::failure& error) {
        std::cerr << "I/O error: " << error.what() << "\n";
        return 4;
    } catch (const std::filesystem::filesystem_error& error) {
        std::cerr << "I/O error: " << error.what() << "\n";
        return 4;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
}
