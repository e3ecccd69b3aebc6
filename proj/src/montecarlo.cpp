// SPDX-License-Identifier: Apache-2.0
#include "cfmimo/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "cfmimo/tin.hpp"

namespace cfmimo::montecarlo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int resolve_workers(int workers, long n_trials) {
    int resolved = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
    if (resolved < 1) resolved = 1;
    if (n_trials < resolved) resolved = static_cast<int>(std::max<long>(n_trials, 1));
    return resolved;
}

} // namespace

NetworkRealization sample_realization(const NetworkConfig& config, PointModel model,
                                      RngStream& rng) {
    const geometry::DiskWindow window{{0.0, 0.0}, config.radius};
    NetworkRealization realization;
    realization.reference_ap = {config.influence_radius, 0.0};

    std::size_t extra_ues;
    std::size_t ap_count;
    if (model == PointModel::bpp) {
        extra_ues = static_cast<std::size_t>(config.num_ues - 1);
        ap_count = static_cast<std::size_t>(config.num_aps);
    } else {
        // Poisson counts with the same means as the binomial setup
        // (lambda_ue * area = K, lambda_ap * area = L); the typical UE is
        // added on top of the draw.
        extra_ues = static_cast<std::size_t>(rng.next_poisson(static_cast<double>(config.num_ues)));
        ap_count = static_cast<std::size_t>(rng.next_poisson(static_cast<double>(config.num_aps)));
    }

    realization.ue_points.reserve(extra_ues + 1);
    realization.ue_points.push_back({0.0, 0.0});
    for (std::size_t i = 0; i < extra_ues; ++i)
        realization.ue_points.push_back(geometry::sample_point_in_disk(window, rng));

    realization.pilot_labels.reserve(extra_ues + 1);
    realization.pilot_labels.push_back(1);
    for (std::size_t i = 0; i < extra_ues; ++i) {
        const int pilot = 1 + static_cast<int>(rng.next_double() * config.num_pilots);
        realization.pilot_labels.push_back(std::min(pilot, config.num_pilots));
    }

    realization.ap_points = geometry::sample_uniform_disk(ap_count, window, rng);
    return realization;
}

TrialOutcome extract_outcome(const NetworkRealization& realization, const NetworkConfig& config,
                             const DerivedQuantities& derived) {
    const double r = config.influence_radius;
    const double r2 = r * r;
    const geometry::Point2D origin{0.0, 0.0};

    std::vector<geometry::Point2D> copilots;
    for (std::size_t i = 1; i < realization.ue_points.size(); ++i)
        if (realization.pilot_labels[i] == 1) copilots.push_back(realization.ue_points[i]);

    TrialOutcome outcome;
    outcome.x_min = geometry::min_distance(realization.reference_ap, copilots);

    // Nearest interfering AP: outside the typical UE's influence region but
    // inside some co-pilot UE's. Scanning with a running minimum keeps the
    // expensive union-membership test to the few record-breaking candidates.
    double best_y2 = std::numeric_limits<double>::infinity();
    for (const auto& ap : realization.ap_points) {
        const double d2 = geometry::squared_distance(ap, origin);
        if (d2 <= r2) {
            outcome.serving_exists = true;
            continue;
        }
        if (d2 >= best_y2 || copilots.empty()) continue;
        if (geometry::in_union_of_disks(ap, copilots, r)) best_y2 = d2;
    }
    if (std::isfinite(best_y2)) outcome.y_min = std::sqrt(best_y2);

    if (!outcome.x_min || !outcome.y_min) {
        // No interferer: the condition is vacuously satisfied.
        outcome.tin_holds = outcome.serving_exists;
    } else {
        outcome.tin_holds = outcome.serving_exists &&
                            tin::tin_condition_holds(*outcome.x_min, *outcome.y_min, config, derived);
    }
    return outcome;
}

TrialStats run_trials(const NetworkConfig& config, PointModel model, long n_trials,
                      std::uint64_t seed, int workers, bool collect_samples) {
    if (n_trials < 1) throw std::domain_error("run_trials: n_trials must be >= 1");
    const DerivedQuantities derived = derive(config);

    TrialStats stats;
    stats.n_trials = n_trials;
    std::vector<double> x_slots;
    std::vector<double> y_slots;
    if (collect_samples) {
        x_slots.assign(static_cast<std::size_t>(n_trials), kNaN);
        y_slots.assign(static_cast<std::size_t>(n_trials), kNaN);
    }

    struct Counters {
        long tin = 0, serving = 0, x_absent = 0, y_absent = 0;
    };

    const int worker_count = resolve_workers(workers, n_trials);
    std::vector<Counters> partials(static_cast<std::size_t>(worker_count));

    auto work = [&](int worker_index) {
        Counters& local = partials[static_cast<std::size_t>(worker_index)];
        for (long t = worker_index; t < n_trials; t += worker_count) {
            RngStream rng(seed, static_cast<std::uint64_t>(t));
            const NetworkRealization realization = sample_realization(config, model, rng);
            const TrialOutcome outcome = extract_outcome(realization, config, derived);
            local.tin += outcome.tin_holds ? 1 : 0;
            local.serving += outcome.serving_exists ? 1 : 0;
            local.x_absent += outcome.x_min ? 0 : 1;
            local.y_absent += outcome.y_min ? 0 : 1;
            if (collect_samples) {
                const auto slot = static_cast<std::size_t>(t);
                if (outcome.x_min) x_slots[slot] = *outcome.x_min;
                if (outcome.y_min) y_slots[slot] = *outcome.y_min;
            }
        }
    };

    if (worker_count == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(worker_count));
        for (int w = 0; w < worker_count; ++w) threads.emplace_back(work, w);
        for (auto& thread : threads) thread.join();
    }

    for (const Counters& c : partials) {
        stats.tin_count += c.tin;
        stats.serving_count += c.serving;
        stats.x_absent += c.x_absent;
        stats.y_absent += c.y_absent;
    }
    if (collect_samples) {
        stats.x_samples.reserve(x_slots.size());
        for (double v : x_slots)
            if (!std::isnan(v)) stats.x_samples.push_back(v);
        stats.y_samples.reserve(y_slots.size());
        for (double v : y_slots)
            if (!std::isnan(v)) stats.y_samples.push_back(v);
    }
    return stats;
}

EstimateCI estimate_p_tin(const NetworkConfig& config, PointModel model, long n_trials,
                          std::uint64_t seed, int workers) {
    const TrialStats stats = run_trials(config, model, n_trials, seed, workers, false);
    EstimateCI estimate;
    estimate.n_trials = n_trials;
    estimate.mean = static_cast<double>(stats.tin_count) / static_cast<double>(n_trials);
    estimate.half_width =
        1.96 * std::sqrt(estimate.mean * (1.0 - estimate.mean) / static_cast<double>(n_trials));
    return estimate;
}

CurveTable empirical_curve(std::vector<double> samples, CurveKind kind,
                           const std::vector<double>& grid) {
    if (grid.size() < 2 || !std::is_sorted(grid.begin(), grid.end()))
        throw std::domain_error("empirical_curve: grid must be sorted with >= 2 points");
    if (samples.empty()) throw std::domain_error("empirical_curve: no samples");
    std::sort(samples.begin(), samples.end());

    CurveTable table;
    table.kind = kind;
    if (kind == CurveKind::cdf) {
        table.abscissa = grid;
        table.values.reserve(grid.size());
        for (double g : grid) {
            const auto count = std::upper_bound(samples.begin(), samples.end(), g) - samples.begin();
            table.values.push_back(static_cast<double>(count) /
                                   static_cast<double>(samples.size()));
        }
        return table;
    }

    // Histogram density: grid entries are bin edges; samples outside the
    // grid are excluded and the in-range mass normalizes to one.
    const std::size_t bins = grid.size() - 1;
    std::vector<long> counts(bins, 0);
    long in_range = 0;
    for (double s : samples) {
        if (s < grid.front() || s > grid.back()) continue;
        auto edge = std::upper_bound(grid.begin(), grid.end(), s);
        std::size_t bin = static_cast<std::size_t>(edge - grid.begin());
        bin = bin == 0 ? 0 : bin - 1;
        if (bin >= bins) bin = bins - 1; // sample equal to the last edge
        ++counts[bin];
        ++in_range;
    }
    if (in_range == 0) throw std::domain_error("empirical_curve: no samples inside the grid");
    table.abscissa.reserve(bins);
    table.values.reserve(bins);
    for (std::size_t i = 0; i < bins; ++i) {
        const double width = grid[i + 1] - grid[i];
        table.abscissa.push_back(0.5 * (grid[i] + grid[i + 1]));
        table.values.push_back(width > 0.0
                                   ? static_cast<double>(counts[i]) / (in_range * width)
                                   : 0.0);
    }
    return table;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::domain_error("ks_distance: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double reference = cdf(samples[i]);
        worst = std::max(worst, std::fabs(reference - static_cast<double>(i) / n));
        worst = std::max(worst, std::fabs(static_cast<double>(i + 1) / n - reference));
    }
    return worst;
}

} // namespace cfmimo::montecarlo
