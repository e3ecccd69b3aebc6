// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cfmimo/distributions.hpp"
#include "cfmimo/geometry.hpp"
#include "cfmimo/rng.hpp"

namespace cfmimo::montecarlo {

enum class PointModel { bpp, ppp };

/// One sampled network. ue_points[0] is the typical UE at the origin with
/// pilot 1; the reference AP sits at (r, 0) and is not part of ap_points.
struct NetworkRealization {
    std::vector<geometry::Point2D> ap_points;
    std::vector<geometry::Point2D> ue_points;
    std::vector<int> pilot_labels; // aligned with ue_points, values in [1, tau_p]
    geometry::Point2D reference_ap;
};

/// Per-trial record. x_min / y_min are absent when the corresponding
/// interferer set is empty (censored trials); tin_holds then falls back to
/// serving_exists alone.
struct TrialOutcome {
    std::optional<double> x_min; // reference AP to nearest co-pilot UE
    std::optional<double> y_min; // typical UE to nearest interfering AP
    bool serving_exists = false;
    bool tin_holds = false;
};

struct EstimateCI {
    double mean = 0.0;
    double half_width = 0.0;
    long n_trials = 0;
    double confidence = 0.95;
};

/// Aggregated counts over a batch of trials, plus the collected distance
/// samples when requested (in trial order, censored trials skipped).
struct TrialStats {
    long n_trials = 0;
    long tin_count = 0;
    long serving_count = 0;
    long x_absent = 0;
    long y_absent = 0;
    std::vector<double> x_samples;
    std::vector<double> y_samples;

    double censoring_frequency() const {
        return n_trials == 0 ? 0.0 : static_cast<double>(y_absent) / n_trials;
    }
};

NetworkRealization sample_realization(const NetworkConfig& config, PointModel model,
                                      RngStream& rng);

TrialOutcome extract_outcome(const NetworkRealization& realization, const NetworkConfig& config,
                             const DerivedQuantities& derived);

/// Runs n_trials independent trials. Trial t draws from the substream
/// (seed, t), so the result is identical for every worker count; counters
/// are plain integer sums and sample slots are indexed by trial.
/// workers <= 0 picks the hardware concurrency.
TrialStats run_trials(const NetworkConfig& config, PointModel model, long n_trials,
                      std::uint64_t seed, int workers = 0, bool collect_samples = false);

/// Bernoulli estimate of the TIN probability with a normal-approximation
/// confidence half-width (95%, z = 1.96).
EstimateCI estimate_p_tin(const NetworkConfig& config, PointModel model, long n_trials,
                          std::uint64_t seed, int workers = 0);

/// cdf: right-continuous ECDF evaluated on the grid.
/// pdf: histogram density with the grid as bin edges, abscissa at bin
/// centers, normalized so the bin masses sum to one.
CurveTable empirical_curve(std::vector<double> samples, CurveKind kind,
                           const std::vector<double>& grid);

/// Kolmogorov-Smirnov distance between the sample set and a reference CDF.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

} // namespace cfmimo::montecarlo
