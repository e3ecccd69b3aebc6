// SPDX-License-Identifier: Apache-2.0
#include "cfmimo/experiment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "cfmimo/montecarlo.hpp"
#include "cfmimo/tin.hpp"

namespace cfmimo::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
namespace mc = cfmimo::montecarlo;

std::string fmt17(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

std::string fmt_label(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%g", value);
    return buffer;
}

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
    return grid;
}

std::string trimmed(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t");
    const auto end = text.find_last_not_of(" \t");
    if (begin == std::string::npos) return "";
    return text.substr(begin, end - begin + 1);
}

bool ends_with_ci(const std::string& text, const std::string& suffix) {
    if (text.size() < suffix.size()) return false;
    for (std::size_t i = 0; i < suffix.size(); ++i) {
        const char a = static_cast<char>(std::tolower(text[text.size() - suffix.size() + i]));
        const char b = static_cast<char>(std::tolower(suffix[i]));
        if (a != b) return false;
    }
    return true;
}

double parse_number(const std::string& text, const char* field) {
    const std::string t = trimmed(text);
    char* end = nullptr;
    const double value = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || end != t.c_str() + t.size())
        throw ValidationError(field, "not a number: '" + text + "'");
    return value;
}

json config_to_json(const NetworkConfig& c) {
    json j;
    j["R"] = c.radius;
    j["L"] = c.num_aps;
    j["K"] = c.num_ues;
    j["tau_p"] = c.num_pilots;
    j["alpha"] = c.pathloss_exponent;
    j["rho"] = c.tx_power_w;
    j["sigma2"] = c.noise_power_w;
    j["kappa"] = c.tin_kappa;
    j["mu"] = c.tin_mu;
    j["r"] = c.influence_radius;
    return j;
}

void append_config_metadata(std::vector<std::pair<std::string, std::string>>& meta,
                            const NetworkConfig& c) {
    meta.emplace_back("R", fmt17(c.radius));
    meta.emplace_back("L", std::to_string(c.num_aps));
    meta.emplace_back("K", std::to_string(c.num_ues));
    meta.emplace_back("tau_p", std::to_string(c.num_pilots));
    meta.emplace_back("alpha", fmt17(c.pathloss_exponent));
    meta.emplace_back("rho", fmt17(c.tx_power_w));
    meta.emplace_back("sigma2", fmt17(c.noise_power_w));
    meta.emplace_back("kappa", fmt17(c.tin_kappa));
    meta.emplace_back("mu", fmt17(c.tin_mu));
    meta.emplace_back("r", fmt17(c.influence_radius));
}

std::vector<std::pair<mc::PointModel, std::string>> selected_models(ModelChoice choice) {
    switch (choice) {
    case ModelChoice::bpp: return {{mc::PointModel::bpp, "bpp"}};
    case ModelChoice::ppp: return {{mc::PointModel::ppp, "ppp"}};
    case ModelChoice::both:
        return {{mc::PointModel::bpp, "bpp"}, {mc::PointModel::ppp, "ppp"}};
    }
    return {};
}

// ---------------------------------------------------------------------------
// SHA-1 (FIPS 180-1), used for the git-style content hash in manifests.
// ---------------------------------------------------------------------------

struct Sha1State {
    std::array<std::uint32_t, 5> h{0x67452301u, 0xEFCDAB89u, 0x98BADCFEu, 0x10325476u,
                                   0xC3D2E1F0u};

    static std::uint32_t rotl(std::uint32_t x, int k) { return (x << k) | (x >> (32 - k)); }

    void process_chunk(const unsigned char* chunk) {
        std::uint32_t w[80];
        for (int i = 0; i < 16; ++i)
            w[i] = (std::uint32_t(chunk[4 * i]) << 24) | (std::uint32_t(chunk[4 * i + 1]) << 16) |
                   (std::uint32_t(chunk[4 * i + 2]) << 8) | std::uint32_t(chunk[4 * i + 3]);
        for (int i = 16; i < 80; ++i) w[i] = rotl(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);
        std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4];
        for (int i = 0; i < 80; ++i) {
            std::uint32_t f, k;
            if (i < 20) {
                f = (b & c) | (~b & d);
                k = 0x5A827999u;
            } else if (i < 40) {
                f = b ^ c ^ d;
                k = 0x6ED9EBA1u;
            } else if (i < 60) {
                f = (b & c) | (b & d) | (c & d);
                k = 0x8F1BBCDCu;
            } else {
                f = b ^ c ^ d;
                k = 0xCA62C1D6u;
            }
            const std::uint32_t temp = rotl(a, 5) + f + e + k + w[i];
            e = d;
            d = c;
            c = rotl(b, 30);
            b = a;
            a = temp;
        }
        h[0] += a;
        h[1] += b;
        h[2] += c;
        h[3] += d;
        h[4] += e;
    }
};

} // namespace

std::string sha1_hex(std::string_view data) {
    Sha1State state;
    const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
    std::size_t offset = 0;
    while (data.size() - offset >= 64) {
        state.process_chunk(bytes + offset);
        offset += 64;
    }
    unsigned char tail[128] = {0};
    const std::size_t remaining = data.size() - offset;
    std::memcpy(tail, bytes + offset, remaining);
    tail[remaining] = 0x80;
    const std::size_t tail_len = remaining + 1 <= 56 ? 64 : 128;
    const std::uint64_t bit_length = std::uint64_t(data.size()) * 8;
    for (int i = 0; i < 8; ++i)
        tail[tail_len - 8 + i] = static_cast<unsigned char>(bit_length >> (56 - 8 * i));
    state.process_chunk(tail);
    if (tail_len == 128) state.process_chunk(tail + 64);

    char hex[41];
    for (int i = 0; i < 5; ++i) std::snprintf(hex + 8 * i, 9, "%08x", state.h[i]);
    return std::string(hex, 40);
}

std::string git_blob_sha1(std::string_view content) {
    std::string framed = "blob " + std::to_string(content.size());
    framed.push_back('\0');
    framed.append(content);
    return sha1_hex(framed);
}

// ---------------------------------------------------------------------------
// Spec parsing and validation
// ---------------------------------------------------------------------------

Preset preset_from_string(const std::string& name) {
    if (name == "fig3") return Preset::fig3;
    if (name == "fig4") return Preset::fig4;
    if (name == "fig5a") return Preset::fig5a;
    if (name == "fig5b") return Preset::fig5b;
    if (name == "custom") return Preset::custom;
    throw ValidationError("preset", "unknown preset '" + name + "'");
}

std::string to_string(Preset preset) {
    switch (preset) {
    case Preset::fig3: return "fig3";
    case Preset::fig4: return "fig4";
    case Preset::fig5a: return "fig5a";
    case Preset::fig5b: return "fig5b";
    case Preset::custom: return "custom";
    }
    return "custom";
}

ModelChoice model_from_string(const std::string& name) {
    if (name == "bpp") return ModelChoice::bpp;
    if (name == "ppp") return ModelChoice::ppp;
    if (name == "both") return ModelChoice::both;
    throw ValidationError("model", "must be one of bpp, ppp, both");
}

std::string to_string(ModelChoice model) {
    switch (model) {
    case ModelChoice::bpp: return "bpp";
    case ModelChoice::ppp: return "ppp";
    case ModelChoice::both: return "both";
    }
    return "ppp";
}

double parse_sigma2(const std::string& text) {
    std::string t = trimmed(text);
    if (ends_with_ci(t, "dbm")) {
        const double dbm = parse_number(t.substr(0, t.size() - 3), "sigma2");
        return dbm_to_watts(dbm);
    }
    if (ends_with_ci(t, "w")) t = t.substr(0, t.size() - 1);
    const double watts = parse_number(t, "sigma2");
    if (!(watts > 0.0)) throw ValidationError("sigma2", "must be > 0 W");
    return watts;
}

void apply_field_override(NetworkConfig& config, const std::string& field, double value) {
    if (field == "R") config.radius = value;
    else if (field == "L") config.num_aps = static_cast<int>(std::lround(value));
    else if (field == "K") config.num_ues = static_cast<int>(std::lround(value));
    else if (field == "tau_p") config.num_pilots = static_cast<int>(std::lround(value));
    else if (field == "alpha") config.pathloss_exponent = value;
    else if (field == "rho") config.tx_power_w = value;
    else if (field == "sigma2") config.noise_power_w = value;
    else if (field == "kappa") config.tin_kappa = value;
    else if (field == "mu") config.tin_mu = value;
    else if (field == "r") config.influence_radius = value;
    else throw ValidationError("sweep_variable", "unknown field '" + field + "'");
}

void validate(const ExperimentSpec& spec) {
    cfmimo::validate(spec.base_config);
    if (spec.n_trials < 1) throw ValidationError("trials", "must be >= 1");
    if (spec.grid_points < 2) throw ValidationError("grid_points", "must be >= 2");
    if (spec.sweep_variable != "none") {
        NetworkConfig probe = spec.base_config;
        apply_field_override(probe, spec.sweep_variable, 1.0); // name check only
    }
    if (spec.preset == Preset::custom && spec.sweep_variable != "none" &&
        spec.sweep_values.empty())
        throw ValidationError("sweep_values", "must be nonempty for a custom sweep");
}

void load_spec_file(ExperimentSpec& spec, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& error) {
        throw ValidationError("config", std::string("invalid JSON: ") + error.what());
    }
    if (j.contains("preset")) spec.preset = preset_from_string(j["preset"].get<std::string>());
    if (j.contains("model")) spec.model = model_from_string(j["model"].get<std::string>());
    if (j.contains("trials")) spec.n_trials = j["trials"].get<long>();
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out")) spec.output_dir = j["out"].get<std::string>();
    if (j.contains("grid_points")) spec.grid_points = j["grid_points"].get<int>();
    if (j.contains("workers")) spec.workers = j["workers"].get<int>();
    if (j.contains("sweep_variable")) spec.sweep_variable = j["sweep_variable"].get<std::string>();
    if (j.contains("sweep_values")) spec.sweep_values = j["sweep_values"].get<std::vector<double>>();
    if (j.contains("config")) {
        const json& c = j["config"];
        NetworkConfig& cfg = spec.base_config;
        if (c.contains("R")) cfg.radius = c["R"].get<double>();
        if (c.contains("L")) cfg.num_aps = c["L"].get<int>();
        if (c.contains("K")) cfg.num_ues = c["K"].get<int>();
        if (c.contains("tau_p")) cfg.num_pilots = c["tau_p"].get<int>();
        if (c.contains("alpha")) cfg.pathloss_exponent = c["alpha"].get<double>();
        if (c.contains("rho")) cfg.tx_power_w = c["rho"].get<double>();
        if (c.contains("sigma2")) {
            if (c["sigma2"].is_string())
                cfg.noise_power_w = parse_sigma2(c["sigma2"].get<std::string>());
            else
                cfg.noise_power_w = c["sigma2"].get<double>();
        }
        if (c.contains("kappa")) cfg.tin_kappa = c["kappa"].get<double>();
        if (c.contains("mu")) cfg.tin_mu = c["mu"].get<double>();
        if (c.contains("r")) cfg.influence_radius = c["r"].get<double>();
    }
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

void write_csv(const std::string& path,
               const std::vector<std::pair<std::string, std::string>>& metadata,
               const std::vector<Column>& columns) {
    if (columns.empty()) throw std::invalid_argument("write_csv: no columns");
    const std::size_t rows = columns.front().values.size();
    for (const Column& column : columns)
        if (column.values.size() != rows)
            throw std::invalid_argument("write_csv: ragged columns");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot write " + path);
    for (const auto& [key, value] : metadata) out << "# " << key << "=" << value << "\n";
    for (std::size_t c = 0; c < columns.size(); ++c)
        out << (c ? "," : "") << columns[c].name;
    out << "\n";
    for (std::size_t row = 0; row < rows; ++row) {
        for (std::size_t c = 0; c < columns.size(); ++c)
            out << (c ? "," : "") << fmt17(columns[c].values[row]);
        out << "\n";
    }
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

CsvFile read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot read " + path);
    CsvFile file;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            const auto eq = line.find('=');
            std::string key = trimmed(line.substr(1, eq == std::string::npos ? line.size() : eq - 1));
            std::string value = eq == std::string::npos ? "" : line.substr(eq + 1);
            file.metadata.emplace_back(std::move(key), std::move(value));
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream stream(line);
        std::string cell;
        while (std::getline(stream, cell, ',')) cells.push_back(cell);
        if (!header_seen) {
            for (std::string& name : cells) file.columns.push_back({std::move(name), {}});
            header_seen = true;
            continue;
        }
        if (cells.size() != file.columns.size())
            throw std::ios_base::failure("ragged CSV row in " + path);
        for (std::size_t c = 0; c < cells.size(); ++c)
            file.columns[c].values.push_back(parse_number(cells[c], "csv"));
    }
    return file;
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

namespace {

struct RunContext {
    const ExperimentSpec& spec;
    std::vector<std::pair<std::string, std::string>> metadata;
    json manifest;
    std::vector<std::string> written;

    void emit(const std::string& filename, const std::vector<Column>& columns) {
        const fs::path path = fs::path(spec.output_dir) / filename;
        write_csv(path.string(), metadata, columns);
        std::ifstream in(path, std::ios::binary);
        std::stringstream buffer;
        buffer << in.rdbuf();
        manifest["outputs"].push_back({{"file", filename}, {"sha1", sha1_hex(buffer.str())}});
        written.push_back(path.string());
    }

    void record_censoring(const std::string& label, const mc::TrialStats& stats) {
        manifest["censoring"][label] = {
            {"trials", stats.n_trials},
            {"x_absent_fraction", static_cast<double>(stats.x_absent) / stats.n_trials},
            {"y_absent_fraction", static_cast<double>(stats.y_absent) / stats.n_trials}};
    }
};

// Analytic p_X against a hit-or-miss area estimate sharing one point cloud
// per influence radius.
void run_preset_fig3(RunContext& ctx) {
    const ExperimentSpec& spec = ctx.spec;
    const NetworkConfig& base = spec.base_config;
    const std::array<double, 3> radii{20.0, 50.0, 100.0};
    const double R = base.radius;

    const double x_hi = R + *std::max_element(radii.begin(), radii.end());
    const std::vector<double> xs = linspace(0.0, x_hi, spec.grid_points);
    std::vector<Column> columns_a;
    columns_a.push_back({"x", xs});
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double r = radii[i];
        Column analytic{"px_analytic_r" + fmt_label(r), {}};
        for (double x : xs) analytic.values.push_back(geometry::p_x_ratio(x, r, R));

        RngStream rng(spec.seed, 1000 + i);
        const geometry::DiskWindow window{{0.0, 0.0}, R};
        std::vector<double> distances(static_cast<std::size_t>(spec.n_trials));
        const geometry::Point2D reference{r, 0.0};
        for (double& d : distances)
            d = geometry::distance(geometry::sample_point_in_disk(window, rng), reference);
        std::sort(distances.begin(), distances.end());
        Column simulated{"px_sim_r" + fmt_label(r), {}};
        for (double x : xs) {
            const auto count =
                std::upper_bound(distances.begin(), distances.end(), x) - distances.begin();
            simulated.values.push_back(static_cast<double>(count) / distances.size());
        }
        columns_a.push_back(std::move(analytic));
        columns_a.push_back(std::move(simulated));
    }
    ctx.emit("fig3a.csv", columns_a);

    // Density of the nearest co-pilot UE distance: binomial closed form,
    // Poisson approximation, and a histogram from full network trials.
    const DerivedQuantities derived = derive(base);
    const int copilot_count =
        std::max(1, static_cast<int>(std::lround(static_cast<double>(base.num_ues) /
                                                 base.num_pilots)));
    const double mode = 1.0 / std::sqrt(2.0 * std::numbers::pi * derived.lambda_copilot);
    const double x_max = std::min(R, 4.5 * mode);
    const std::vector<double> edges = linspace(0.0, x_max, spec.grid_points + 1);
    std::vector<double> centers(static_cast<std::size_t>(spec.grid_points));
    for (int i = 0; i < spec.grid_points; ++i)
        centers[static_cast<std::size_t>(i)] = 0.5 * (edges[i] + edges[i + 1]);

    std::vector<Column> columns_b;
    columns_b.push_back({"x", centers});
    Column ppp_density{"fx_ppp", {}};
    for (double x : centers) ppp_density.values.push_back(f_x_ppp(x, derived.lambda_copilot));
    columns_b.push_back(std::move(ppp_density));
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double r = radii[i];
        NetworkConfig config = base;
        config.influence_radius = r;
        Column bpp_density{"fx_bpp_r" + fmt_label(r), {}};
        for (double x : centers) bpp_density.values.push_back(f_x_bpp(x, copilot_count, config));
        columns_b.push_back(std::move(bpp_density));

        const mc::TrialStats stats = mc::run_trials(config, mc::PointModel::bpp, spec.n_trials,
                                                    spec.seed + 2000 + i, spec.workers, true);
        ctx.record_censoring("fig3b_r" + fmt_label(r), stats);
        const CurveTable hist = mc::empirical_curve(stats.x_samples, CurveKind::pdf, edges);
        columns_b.push_back({"fx_sim_r" + fmt_label(r), hist.values});
    }
    ctx.emit("fig3b.csv", columns_b);
}

// Empirical CDF of the nearest interfering AP distance under the binomial
// model against the thinned-Poisson closed form.
void run_preset_fig4(RunContext& ctx) {
    const ExperimentSpec& spec = ctx.spec;
    const std::array<int, 2> ue_counts{100, 400};
    const std::array<double, 3> radii{20.0, 50.0, 100.0};

    // Grid wide enough for the slowest-decaying pair, capped at the window.
    double y_hi = 0.0;
    for (int K : ue_counts)
        for (double r : radii) {
            NetworkConfig config = spec.base_config;
            config.num_ues = K;
            config.influence_radius = r;
            const DerivedQuantities d = derive(config);
            const double rate = std::numbers::pi * d.thinning_prob * d.lambda_ap;
            y_hi = std::max(y_hi, std::sqrt(r * r + std::log(100.0) / rate));
        }
    y_hi = std::min(y_hi, spec.base_config.radius);

    const std::vector<double> ys = linspace(0.0, y_hi, spec.grid_points);
    std::vector<Column> columns;
    columns.push_back({"y", ys});

    std::size_t pair_index = 0;
    for (int K : ue_counts) {
        for (double r : radii) {
            NetworkConfig config = spec.base_config;
            config.num_ues = K;
            config.influence_radius = r;
            const DerivedQuantities derived = derive(config);
            const std::string label = "K" + std::to_string(K) + "_r" + fmt_label(r);

            Column analytic{"Fy_ppp_" + label, {}};
            for (double y : ys) analytic.values.push_back(F_y_ppp(y, config, derived));
            columns.push_back(std::move(analytic));

            const mc::TrialStats stats =
                mc::run_trials(config, mc::PointModel::bpp, spec.n_trials,
                               spec.seed + 3000 + pair_index, spec.workers, true);
            ctx.record_censoring("fig4_" + label, stats);
            const CurveTable ecdf = mc::empirical_curve(stats.y_samples, CurveKind::cdf, ys);
            columns.push_back({"Fy_sim_" + label, ecdf.values});

            const double ks = mc::ks_distance(
                stats.y_samples, [&](double y) { return F_y_ppp(y, config, derived); });
            ctx.manifest["ks"][label] = ks;
            ++pair_index;
        }
    }
    ctx.emit("fig4.csv", columns);
}

// TIN probability sweeps: analytic closed form and quadrature plus Monte
// Carlo estimates with confidence half-widths.
void run_preset_fig5(RunContext& ctx, bool sweep_influence_radius) {
    const ExperimentSpec& spec = ctx.spec;

    std::vector<double> sweep = spec.sweep_values;
    if (sweep.empty()) {
        if (sweep_influence_radius)
            sweep = {10, 20, 35, 50, 75, 100, 150, 200, 300, 400, 500, 600, 700, 800, 900};
        else
            sweep = {100, 200, 400, 800, 1600};
    }

    struct CurveSetting {
        std::string label;
        NetworkConfig config;
    };
    std::vector<CurveSetting> curves;
    if (sweep_influence_radius) {
        for (const auto& [kappa, mu] : std::vector<std::pair<double, double>>{
                 {1.0, 1.0}, {10.0, 1.0}, {1.0, 2.0}}) {
            NetworkConfig config = spec.base_config;
            config.tin_kappa = kappa;
            config.tin_mu = mu;
            curves.push_back(
                {"kappa" + fmt_label(kappa) + "_mu" + fmt_label(mu), std::move(config)});
        }
    } else {
        for (const auto& [aps, alpha] : std::vector<std::pair<int, double>>{
                 {1000, 3.76}, {2000, 3.76}, {1000, 3.0}}) {
            NetworkConfig config = spec.base_config;
            config.num_aps = aps;
            config.pathloss_exponent = alpha;
            curves.push_back(
                {"L" + std::to_string(aps) + "_alpha" + fmt_label(alpha), std::move(config)});
        }
    }

    const auto models = selected_models(spec.model);
    std::vector<Column> columns;
    columns.push_back({sweep_influence_radius ? "r" : "K", sweep});
    for (const CurveSetting& curve : curves) {
        Column closed{"ptin_closed_" + curve.label, {}};
        Column quad{"ptin_quad_" + curve.label, {}};
        std::vector<Column> mc_columns;
        for (const auto& [model, model_name] : models) {
            mc_columns.push_back({"ptin_mc_" + model_name + "_" + curve.label, {}});
            mc_columns.push_back({"ptin_mc_hw_" + model_name + "_" + curve.label, {}});
        }
        for (double value : sweep) {
            NetworkConfig config = curve.config;
            apply_field_override(config, sweep_influence_radius ? "r" : "K", value);
            closed.values.push_back(tin::p_tin_analytic(config, tin::Method::closed_form).p_tin);
            quad.values.push_back(tin::p_tin_analytic(config, tin::Method::quadrature).p_tin);
            for (std::size_t m = 0; m < models.size(); ++m) {
                const mc::EstimateCI estimate = mc::estimate_p_tin(
                    config, models[m].first, spec.n_trials, spec.seed, spec.workers);
                mc_columns[2 * m].values.push_back(estimate.mean);
                mc_columns[2 * m + 1].values.push_back(estimate.half_width);
            }
        }
        columns.push_back(std::move(closed));
        columns.push_back(std::move(quad));
        for (Column& column : mc_columns) columns.push_back(std::move(column));
    }
    ctx.emit(sweep_influence_radius ? "fig5a.csv" : "fig5b.csv", columns);
}

void run_preset_custom(RunContext& ctx) {
    const ExperimentSpec& spec = ctx.spec;
    const bool has_sweep = spec.sweep_variable != "none";
    const std::vector<double> sweep = has_sweep ? spec.sweep_values : std::vector<double>{0.0};
    const auto models = selected_models(spec.model);

    std::vector<Column> columns;
    columns.push_back({has_sweep ? spec.sweep_variable : "point", sweep});
    Column p_xy_closed{"p_xy_closed", {}};
    Column p_xy_quad{"p_xy_quad", {}};
    Column p_serving{"p_serving", {}};
    Column closed{"ptin_closed", {}};
    Column quad{"ptin_quad", {}};
    std::vector<Column> mc_columns;
    for (const auto& [model, model_name] : models) {
        mc_columns.push_back({"ptin_mc_" + model_name, {}});
        mc_columns.push_back({"ptin_mc_hw_" + model_name, {}});
    }
    for (double value : sweep) {
        NetworkConfig config = spec.base_config;
        if (has_sweep) apply_field_override(config, spec.sweep_variable, value);
        const auto closed_result = tin::p_tin_analytic(config, tin::Method::closed_form);
        const auto quad_result = tin::p_tin_analytic(config, tin::Method::quadrature);
        p_xy_closed.values.push_back(closed_result.p_xy);
        p_xy_quad.values.push_back(quad_result.p_xy);
        p_serving.values.push_back(closed_result.p_serving);
        closed.values.push_back(closed_result.p_tin);
        quad.values.push_back(quad_result.p_tin);
        for (std::size_t m = 0; m < models.size(); ++m) {
            const mc::EstimateCI estimate = mc::estimate_p_tin(config, models[m].first,
                                                               spec.n_trials, spec.seed,
                                                               spec.workers);
            mc_columns[2 * m].values.push_back(estimate.mean);
            mc_columns[2 * m + 1].values.push_back(estimate.half_width);
        }
    }
    columns.push_back(std::move(p_xy_closed));
    columns.push_back(std::move(p_xy_quad));
    columns.push_back(std::move(p_serving));
    columns.push_back(std::move(closed));
    columns.push_back(std::move(quad));
    for (Column& column : mc_columns) columns.push_back(std::move(column));
    ctx.emit("custom.csv", columns);
}

} // namespace

std::vector<std::string> run_experiment(const ExperimentSpec& spec) {
    validate(spec);
    fs::create_directories(spec.output_dir);

    RunContext ctx{spec, {}, json::object(), {}};
    const std::string config_hash = git_blob_sha1(config_to_json(spec.base_config).dump());

    ctx.metadata.emplace_back("tool", kToolName);
    ctx.metadata.emplace_back("version", kToolVersion);
    ctx.metadata.emplace_back("preset", to_string(spec.preset));
    ctx.metadata.emplace_back("model", to_string(spec.model));
    ctx.metadata.emplace_back("seed", std::to_string(spec.seed));
    ctx.metadata.emplace_back("trials", std::to_string(spec.n_trials));
    ctx.metadata.emplace_back("grid_points", std::to_string(spec.grid_points));
    ctx.metadata.emplace_back("config_hash", config_hash);
    append_config_metadata(ctx.metadata, spec.base_config);

    ctx.manifest["tool"] = kToolName;
    ctx.manifest["version"] = kToolVersion;
    ctx.manifest["preset"] = to_string(spec.preset);
    ctx.manifest["model"] = to_string(spec.model);
    ctx.manifest["seed"] = spec.seed;
    ctx.manifest["trials"] = spec.n_trials;
    ctx.manifest["grid_points"] = spec.grid_points;
    ctx.manifest["config"] = config_to_json(spec.base_config);
    ctx.manifest["config_hash"] = config_hash;
    const DerivedQuantities derived = derive(spec.base_config);
    ctx.manifest["derived"] = {{"lambda_ap", derived.lambda_ap},
                               {"lambda_ue", derived.lambda_ue},
                               {"lambda_copilot", derived.lambda_copilot},
                               {"thinning_prob", derived.thinning_prob},
                               {"tin_threshold", derived.tin_threshold}};
    ctx.manifest["sweep"] = {{"variable", spec.sweep_variable}, {"values", spec.sweep_values}};
    ctx.manifest["outputs"] = json::array();

    switch (spec.preset) {
    case Preset::fig3: run_preset_fig3(ctx); break;
    case Preset::fig4: run_preset_fig4(ctx); break;
    case Preset::fig5a: run_preset_fig5(ctx, true); break;
    case Preset::fig5b: run_preset_fig5(ctx, false); break;
    case Preset::custom: run_preset_custom(ctx); break;
    }

    const fs::path manifest_path = fs::path(spec.output_dir) / "manifest.json";
    std::ofstream out(manifest_path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot write " + manifest_path.string());
    out << ctx.manifest.dump(2) << "\n";
    if (!out) throw std::ios_base::failure("write failed: " + manifest_path.string());
    ctx.written.push_back(manifest_path.string());
    return ctx.written;
}

} // namespace cfmimo::cli
