// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"

#include "cfmimo/montecarlo.hpp"
#include "cfmimo/tin.hpp"

using namespace cfmimo;
using namespace cfmimo::montecarlo;

namespace {
NetworkConfig default_config() { return NetworkConfig{}; }
} // namespace

TEST_CASE("bpp realizations have the exact configured point counts") {
    const NetworkConfig config = default_config();
    RngStream rng(40);
    for (int i = 0; i < 20; ++i) {
        const NetworkRealization realization = sample_realization(config, PointModel::bpp, rng);
        CHECK(realization.ue_points.size() == static_cast<std::size_t>(config.num_ues));
        CHECK(realization.ap_points.size() == static_cast<std::size_t>(config.num_aps));
        CHECK(realization.pilot_labels.size() == realization.ue_points.size());
        CHECK(realization.ue_points[0].x == 0.0);
        CHECK(realization.ue_points[0].y == 0.0);
        CHECK(realization.pilot_labels[0] == 1);
        CHECK(realization.reference_ap.x == config.influence_radius);
        CHECK(realization.reference_ap.y == 0.0);
        for (int label : realization.pilot_labels) {
            CHECK(label >= 1);
            CHECK(label <= config.num_pilots);
        }
        const double R2 = config.radius * config.radius;
        for (const auto& p : realization.ap_points) CHECK(p.x * p.x + p.y * p.y <= R2 + 1e-9);
    }
}

TEST_CASE("mean co-pilot count matches the binomial thinning of pilots") {
    const NetworkConfig config = default_config(); // K=400, tau_p=10
    RngStream rng(41);
    const int trials = 20000;
    long copilots = 0;
    for (int i = 0; i < trials; ++i) {
        const NetworkRealization realization = sample_realization(config, PointModel::bpp, rng);
        for (std::size_t u = 1; u < realization.ue_points.size(); ++u)
            if (realization.pilot_labels[u] == 1) ++copilots;
    }
    const double expected = (config.num_ues - 1) / static_cast<double>(config.num_pilots);
    const double variance = (config.num_ues - 1) * 0.1 * 0.9; // binomial
    const double sigma = std::sqrt(variance / trials);
    CHECK(std::fabs(copilots / static_cast<double>(trials) - expected) < 3.0 * sigma);
}

TEST_CASE("ppp realizations have Poisson AP counts with mean L") {
    const NetworkConfig config = default_config();
    RngStream rng(42);
    const int trials = 20000;
    double sum = 0.0;
    for (int i = 0; i < trials; ++i)
        sum += static_cast<double>(
            sample_realization(config, PointModel::ppp, rng).ap_points.size());
    const double mean = sum / trials;
    const double sigma = std::sqrt(static_cast<double>(config.num_aps) / trials);
    CHECK(std::fabs(mean - config.num_aps) < 3.0 * sigma);
}

TEST_CASE("extract_outcome on a hand-built realization") {
    NetworkConfig config = default_config();
    config.num_ues = 2;
    config.num_aps = 1;
    const DerivedQuantities derived = derive(config);

    NetworkRealization realization;
    realization.reference_ap = {100.0, 0.0};
    realization.ue_points = {{0.0, 0.0}, {300.0, 0.0}};
    realization.pilot_labels = {1, 1};
    realization.ap_points = {{350.0, 0.0}};

    const TrialOutcome outcome = extract_outcome(realization, config, derived);
    REQUIRE(outcome.x_min.has_value());
    REQUIRE(outcome.y_min.has_value());
    CHECK(*outcome.x_min == doctest::Approx(200.0));
    CHECK(*outcome.y_min == doctest::Approx(350.0));
    CHECK(!outcome.serving_exists); // the only AP is 350 m from the origin
    CHECK(!outcome.tin_holds);
}

TEST_CASE("censored outcomes fall back to the serving flag") {
    NetworkConfig config = default_config();
    config.num_ues = 2;
    config.num_aps = 1;
    const DerivedQuantities derived = derive(config);

    // no co-pilot UE at all
    NetworkRealization no_copilot;
    no_copilot.reference_ap = {100.0, 0.0};
    no_copilot.ue_points = {{0.0, 0.0}, {300.0, 0.0}};
    no_copilot.pilot_labels = {1, 2};
    no_copilot.ap_points = {{50.0, 0.0}};
    TrialOutcome outcome = extract_outcome(no_copilot, config, derived);
    CHECK(!outcome.x_min.has_value());
    CHECK(!outcome.y_min.has_value());
    CHECK(outcome.serving_exists);
    CHECK(outcome.tin_holds);

    // a co-pilot UE whose influence region holds no AP outside the typical
    // UE's own region
    NetworkRealization no_interferer;
    no_interferer.reference_ap = {100.0, 0.0};
    no_interferer.ue_points = {{0.0, 0.0}, {150.0, 0.0}};
    no_interferer.pilot_labels = {1, 1};
    no_interferer.ap_points = {{90.0, 0.0}}; // within r of both UEs -> in M0
    outcome = extract_outcome(no_interferer, config, derived);
    CHECK(outcome.x_min.has_value());
    CHECK(!outcome.y_min.has_value());
    CHECK(outcome.serving_exists);
    CHECK(outcome.tin_holds);

    // same geometry but the serving AP removed: vacuous TIN without service
    no_interferer.ap_points = {{500.0, 500.0}};
    outcome = extract_outcome(no_interferer, config, derived);
    CHECK(!outcome.serving_exists);
    CHECK(!outcome.tin_holds);
}

TEST_CASE("an AP inside the typical UE's region never interferes") {
    NetworkConfig config = default_config();
    config.num_ues = 2;
    config.num_aps = 2;
    const DerivedQuantities derived = derive(config);

    NetworkRealization realization;
    realization.reference_ap = {100.0, 0.0};
    realization.ue_points = {{0.0, 0.0}, {120.0, 0.0}};
    realization.pilot_labels = {1, 1};
    // first AP is inside both regions (excluded), second only in the co-pilot's
    realization.ap_points = {{60.0, 0.0}, {180.0, 0.0}};
    const TrialOutcome outcome = extract_outcome(realization, config, derived);
    CHECK(outcome.serving_exists);
    REQUIRE(outcome.y_min.has_value());
    CHECK(*outcome.y_min == doctest::Approx(180.0));
}

TEST_CASE("estimate_p_tin is deterministic and worker-invariant") {
    NetworkConfig config = default_config();
    config.num_ues = 100;
    config.num_aps = 200;
    config.influence_radius = 150.0;
    config.tin_mu = 2.0;

    const EstimateCI one = estimate_p_tin(config, PointModel::ppp, 4000, 99, 1);
    const EstimateCI again = estimate_p_tin(config, PointModel::ppp, 4000, 99, 1);
    const EstimateCI many = estimate_p_tin(config, PointModel::ppp, 4000, 99, 3);
    CHECK(one.mean == again.mean);
    CHECK(one.mean == many.mean);
    CHECK(one.half_width == many.half_width);
    CHECK(one.n_trials == 4000);
    CHECK(one.confidence == 0.95);

    const EstimateCI other_seed = estimate_p_tin(config, PointModel::ppp, 4000, 100, 1);
    CHECK(one.mean != other_seed.mean); // almost surely
}

TEST_CASE("Monte Carlo agrees with the analytic probability in the bulk regime") {
    // mu = 2 keeps the threshold at r^2, where the thinned-Poisson
    // approximation is accurate to about a percent
    NetworkConfig config = default_config();
    config.tin_mu = 2.0;
    const EstimateCI estimate = estimate_p_tin(config, PointModel::ppp, 20000, 2024, 0);
    const auto analytic = tin::p_tin_analytic(config, tin::Method::closed_form);
    CHECK(std::fabs(estimate.mean - analytic.p_tin) < 3.0 * estimate.half_width);
}

TEST_CASE("an influence region close to the window edge kills the condition") {
    // At r ~ R the annulus outside the typical UE's region is a sliver, so
    // many trials have no interfering AP at all; those are censored as
    // vacuous holds. The condition itself fails in essentially every
    // non-censored trial, and the whole estimate reduces to the censoring
    // frequency.
    NetworkConfig config = default_config();
    config.influence_radius = 999.0;
    const TrialStats stats = run_trials(config, PointModel::ppp, 4000, 57, 0, false);
    const long uncensored = stats.n_trials - stats.y_absent;
    const long holds_with_interferer = stats.tin_count - stats.y_absent;
    REQUIRE(uncensored > 0);
    CHECK(static_cast<double>(holds_with_interferer) / uncensored < 0.01);
    CHECK(stats.censoring_frequency() > 0.05); // the sliver effect is real
    CHECK(tin::p_tin_analytic(config, tin::Method::closed_form).p_tin < 1e-12);
}

TEST_CASE("serving frequency matches the binomial formula") {
    const NetworkConfig config = default_config();
    const TrialStats stats = run_trials(config, PointModel::bpp, 50000, 43, 0, false);
    const double expected = tin::prob_serving_ap_exists(config);
    const double frequency = static_cast<double>(stats.serving_count) / stats.n_trials;
    const double sigma = std::sqrt(expected * (1.0 - expected) / stats.n_trials);
    CHECK(std::fabs(frequency - expected) < 3.0 * sigma);
}

TEST_CASE("empirical_curve cdf basics") {
    const CurveTable single = empirical_curve({5.0}, CurveKind::cdf, {4.0, 5.0, 6.0});
    CHECK(single.values[0] == 0.0);
    CHECK(single.values[1] == 1.0); // right-continuous at the sample
    CHECK(single.values[2] == 1.0);
    CHECK_NOTHROW(validate(single));
    CHECK_THROWS_AS(empirical_curve({}, CurveKind::cdf, {0.0, 1.0}), std::domain_error);
}

TEST_CASE("empirical_curve pdf normalizes to unit mass") {
    RngStream rng(44);
    std::vector<double> samples(20000);
    for (double& s : samples) s = rng.next_double() * 3.0;
    std::vector<double> edges;
    for (int i = 0; i <= 30; ++i) edges.push_back(3.0 * i / 30.0);
    const CurveTable pdf = empirical_curve(samples, CurveKind::pdf, edges);
    CHECK_NOTHROW(validate(pdf));
    double mass = 0.0;
    for (std::size_t i = 0; i < pdf.values.size(); ++i) mass += pdf.values[i] * (edges[i + 1] - edges[i]);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("stratified x_min samples match the density for the realized co-pilot count") {
    // full binomial trials with random pilots, stratified on the modal
    // co-pilot count; the stratum must follow f_x_bpp for that exact count
    const NetworkConfig config = default_config();
    const DerivedQuantities derived = derive(config);
    RngStream rng(46);
    std::vector<double> stratum;
    for (int t = 0; t < 40000; ++t) {
        const NetworkRealization realization = sample_realization(config, PointModel::bpp, rng);
        int copilots = 0;
        for (std::size_t u = 1; u < realization.ue_points.size(); ++u)
            if (realization.pilot_labels[u] == 1) ++copilots;
        if (copilots != 40) continue;
        const TrialOutcome outcome = extract_outcome(realization, config, derived);
        if (outcome.x_min) stratum.push_back(*outcome.x_min);
    }
    REQUIRE(stratum.size() > 1500);
    // minimum-distance law: F(x) = 1 - (1 - p_x)^40
    const double ks = ks_distance(stratum, [&](double x) {
        return 1.0 - std::pow(1.0 - geometry::p_x_ratio(x, config.influence_radius,
                                                        config.radius),
                              40);
    });
    CHECK(ks < 1.63 / std::sqrt(static_cast<double>(stratum.size()))); // DKW at 1%
}

TEST_CASE("ECDF of Rayleigh draws stays within the DKW band of the closed form") {
    const double lambda = 1.2732e-5;
    RngStream rng(45);
    std::vector<double> samples(100000);
    for (double& s : samples) {
        // inverse-transform sample of the contact-distance law
        const double u = rng.next_double();
        s = std::sqrt(-std::log(1.0 - u) / (std::numbers::pi * lambda));
    }
    const double ks = ks_distance(samples, [&](double x) { return F_x_ppp(x, lambda); });
    CHECK(ks < 2.0 * 1.36 / std::sqrt(100000.0));
}

TEST_CASE("run_trials rejects a nonpositive trial count") {
    CHECK_THROWS_AS(run_trials(default_config(), PointModel::ppp, 0, 1), std::domain_error);
}
