// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cfmimo/distributions.hpp"

namespace cfmimo::cli {

enum class Preset { fig3, fig4, fig5a, fig5b, custom };
enum class ModelChoice { bpp, ppp, both };

Preset preset_from_string(const std::string& name);
std::string to_string(Preset preset);
ModelChoice model_from_string(const std::string& name);
std::string to_string(ModelChoice model);

/// A fully resolved experiment: base configuration, what to sweep, how many
/// trials, and where the files go.
struct ExperimentSpec {
    NetworkConfig base_config;
    Preset preset = Preset::custom;
    std::string sweep_variable = "none";
    std::vector<double> sweep_values;
    ModelChoice model = ModelChoice::ppp;
    long n_trials = 50000;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    int grid_points = 121;
    int workers = 0; // <= 0: hardware concurrency
};

void validate(const ExperimentSpec& spec);

/// Noise-power strings: plain numbers are watts; "W" and "dBm" suffixes are
/// accepted ("-94dBm" -> 3.98e-13).
double parse_sigma2(const std::string& text);

/// Assigns one of the sweepable fields (R, L, K, tau_p, alpha, rho, sigma2,
/// kappa, mu, r) on a configuration. Integer fields are rounded.
void apply_field_override(NetworkConfig& config, const std::string& field, double value);

/// Merges a JSON spec file (see README for the schema) into `spec`.
void load_spec_file(ExperimentSpec& spec, const std::string& path);

struct Column {
    std::string name;
    std::vector<double> values;
};

/// CSV with "#"-prefixed key=value metadata lines above the header row.
/// Values are written with 17 significant digits so tables round-trip
/// exactly; comma separator, LF line endings.
void write_csv(const std::string& path,
               const std::vector<std::pair<std::string, std::string>>& metadata,
               const std::vector<Column>& columns);

struct CsvFile {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<Column> columns;
};

CsvFile read_csv(const std::string& path);

std::string sha1_hex(std::string_view data);

/// SHA-1 of the git blob framing ("blob <size>\0<content>").
std::string git_blob_sha1(std::string_view content);

/// Runs the experiment, writing one CSV per (sub)figure plus manifest.json
/// into spec.output_dir. Returns the paths written. Rerunning with the same
/// spec and seed produces byte-identical files for any worker count.
std::vector<std::string> run_experiment(const ExperimentSpec& spec);

inline constexpr const char* kToolName = "tinprob";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace cfmimo::cli
