// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>

#include "doctest.h"

#include "cfmimo/numerics.hpp"
#include "cfmimo/rng.hpp"
#include "cfmimo/tin.hpp"

using namespace cfmimo;

namespace {
constexpr double kPi = std::numbers::pi;

NetworkConfig default_config() { return NetworkConfig{}; }
} // namespace

TEST_CASE("tin_condition_holds evaluates the distance form") {
    NetworkConfig config = default_config();
    DerivedQuantities d = derive(config);

    // boundary is inclusive
    const double x = 123.4;
    CHECK(tin::tin_condition_holds(x, d.tin_threshold / x, config, d));
    CHECK(!tin::tin_condition_holds(x, d.tin_threshold / x * 0.999, config, d));

    // kappa = 1, mu = 2: the threshold is exactly r^2, so X = Y = r passes
    config.tin_mu = 2.0;
    d = derive(config);
    const double r = config.influence_radius;
    CHECK(tin::tin_condition_holds(r, r, config, d));

    CHECK_THROWS_AS(tin::tin_condition_holds(0.0, 1.0, config, d), std::domain_error);
    CHECK_THROWS_AS(tin::tin_condition_holds(1.0, -1.0, config, d), std::domain_error);
}

TEST_CASE("tin_condition_holds agrees with the SNR/INR form") {
    const NetworkConfig config = default_config(); // alpha=3.76, rho=1, sigma2=-94dBm
    const DerivedQuantities d = derive(config);
    const double snr_gain = config.tx_power_w / config.noise_power_w;
    const double alpha = config.pathloss_exponent;
    const double r = config.influence_radius;

    RngStream rng(20);
    for (int i = 0; i < 1000; ++i) {
        const double x = 1.0 + 1500.0 * rng.next_double();
        const double y = 1.0 + 1500.0 * rng.next_double();
        const double lhs = config.tin_kappa *
                           std::pow(snr_gain * std::pow(r, -alpha), config.tin_mu);
        const double rhs = snr_gain * snr_gain * std::pow(x * y, -alpha);
        CHECK(tin::tin_condition_holds(x, y, config, d) == (lhs >= rhs));
    }
}

TEST_CASE("prob_serving_ap_exists formula") {
    CHECK(tin::prob_serving_ap_exists(1000.0, 1000.0, 5) == doctest::Approx(1.0));
    CHECK(tin::prob_serving_ap_exists(100.0, 1000.0, 1000) ==
          doctest::Approx(1.0 - std::pow(0.99, 1000)).epsilon(1e-12));
    CHECK(tin::prob_serving_ap_exists(100.0, 1000.0, 1000) ==
          doctest::Approx(0.999957).epsilon(1e-5));
    CHECK(tin::prob_serving_ap_exists(default_config()) ==
          doctest::Approx(1.0 - std::pow(0.99, 1000)).epsilon(1e-12));
}

TEST_CASE("prob_xy approaches one as the threshold vanishes") {
    NetworkConfig config = default_config();
    config.tin_kappa = 1e16; // kappa^(-1/alpha) crushes g_r
    const DerivedQuantities d = derive(config);
    CHECK(d.tin_threshold < 20.0);
    CHECK(tin::prob_xy_quadrature(config, d) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(tin::prob_xy_closed_form(config, d) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("prob_xy is nonincreasing in the threshold") {
    // raising kappa lowers g_r, so walk kappa downward to raise g_r
    NetworkConfig config = default_config();
    config.tin_mu = 1.5;
    double previous_quad = 2.0;
    double previous_closed = 2.0;
    double previous_threshold = 0.0;
    for (double kappa : {1000.0, 100.0, 10.0, 3.0, 1.0}) {
        config.tin_kappa = kappa;
        const DerivedQuantities d = derive(config);
        CHECK(d.tin_threshold > previous_threshold);
        previous_threshold = d.tin_threshold;
        const double quad = tin::prob_xy_quadrature(config, d);
        const double closed = tin::prob_xy_closed_form(config, d);
        CHECK(quad <= previous_quad + 1e-12);
        CHECK(closed <= previous_closed + 1e-12);
        previous_quad = quad;
        previous_closed = closed;
    }
}

TEST_CASE("closed form with zero thinning collapses to the first exponential") {
    // p_th = 0 only arises as a limit, so build the derived bundle by hand
    NetworkConfig config = default_config();
    DerivedQuantities d = derive(config);
    d.thinning_prob = 0.0;
    CHECK(tin::prob_xy_closed_form(config, d) == doctest::Approx(1.0));

    // the two pieces behind that limit: I2 equals I1, and 1 - 2 pi l0 I1
    // equals the first term of the closed form
    const double ratio = d.tin_threshold / config.influence_radius;
    const double upper_t = ratio * ratio;
    const double rate_x = kPi * d.lambda_copilot;
    const double i1 = (1.0 - std::exp(-rate_x * upper_t)) / (2.0 * rate_x);
    const double i2 = 0.5 * numerics::adaptive_quad(
                                [&](double t) { return std::exp(-rate_x * t); }, 0.0, upper_t);
    CHECK(i2 == doctest::Approx(i1).epsilon(1e-10));
    CHECK(1.0 - 2.0 * rate_x * i1 == doctest::Approx(std::exp(-rate_x * upper_t)).epsilon(1e-12));
}

TEST_CASE("the scaled integral term is bounded by the full-range Bessel identity") {
    NetworkConfig config = default_config();
    config.tin_mu = 1.5;
    const DerivedQuantities d = derive(config);
    const double rate_x = kPi * d.lambda_copilot;
    const double rate_y = kPi * d.thinning_prob * d.lambda_ap;
    const double g_r = d.tin_threshold;
    const double q = rate_y * g_r * g_r;
    const double ratio = g_r / config.influence_radius;

    numerics::QuadratureSpec spec;
    const double full_range = 2.0 * std::sqrt(d.thinning_prob * d.lambda_ap / d.lambda_copilot) *
                              g_r *
                              numerics::bessel_k1(2.0 * kPi * g_r *
                                                  std::sqrt(d.lambda_copilot * d.thinning_prob *
                                                            d.lambda_ap));
    spec.absolute_tolerance = std::max(1e-280, 1e-12 * full_range);
    const double truncated = numerics::adaptive_quad(
        [&](double t) { return t <= 0.0 ? 0.0 : std::exp(-rate_x * t - q / t); }, 0.0,
        ratio * ratio, spec);
    const double full_quad = numerics::adaptive_quad(
        [&](double t) { return t <= 0.0 ? 0.0 : std::exp(-rate_x * t - q / t); }, 0.0,
        std::numeric_limits<double>::infinity(), spec);
    CHECK(full_quad == doctest::Approx(full_range).epsilon(1e-8));
    CHECK(truncated <= full_range * (1.0 + 1e-9));
}

TEST_CASE("quadrature and closed form agree on a (r, K) grid") {
    for (double r : {50.0, 100.0, 200.0, 400.0, 800.0}) {
        for (int K : {100, 200, 400, 800, 1600}) {
            NetworkConfig config = default_config();
            config.influence_radius = r;
            config.num_ues = K;
            config.tin_mu = 1.5;
            const DerivedQuantities d = derive(config);
            const double quad = tin::prob_xy_quadrature(config, d);
            const double closed = tin::prob_xy_closed_form(config, d);
            CHECK(std::fabs(quad - closed) < 1e-6);
        }
    }
}

TEST_CASE("p_tin_analytic combines the factors and reacts to the parameters") {
    NetworkConfig config = default_config();
    const auto closed = tin::p_tin_analytic(config, tin::Method::closed_form);
    CHECK(closed.p_tin == doctest::Approx(closed.p_xy * closed.p_serving));
    CHECK(closed.p_tin >= 0.0);
    CHECK(closed.p_tin <= 1.0);
    CHECK(closed.method == tin::Method::closed_form);

    const auto quad = tin::p_tin_analytic(config, tin::Method::quadrature);
    CHECK(quad.method == tin::Method::quadrature);
    CHECK(std::fabs(quad.p_tin - closed.p_tin) < 1e-6);

    // a tiny influence region kills the serving factor
    NetworkConfig tiny = config;
    tiny.influence_radius = 1.0;
    CHECK(tin::p_tin_analytic(tiny, tin::Method::closed_form).p_tin < 1e-3);

    // slack factor promotes the probability
    NetworkConfig slack = config;
    slack.tin_kappa = 10.0;
    CHECK(tin::p_tin_analytic(slack, tin::Method::closed_form).p_tin >= closed.p_tin);
}

TEST_CASE("growing the AP count lowers p_xy but raises the serving factor") {
    NetworkConfig config = default_config();
    config.tin_mu = 1.5;
    double previous_pxy = 2.0;
    double previous_serving = 0.0;
    for (int aps : {250, 500, 1000, 2000, 4000}) {
        config.num_aps = aps;
        const DerivedQuantities d = derive(config);
        const double pxy = tin::prob_xy_closed_form(config, d);
        const double serving = tin::prob_serving_ap_exists(config);
        CHECK(pxy <= previous_pxy + 1e-12);
        CHECK(serving >= previous_serving);
        previous_pxy = pxy;
        previous_serving = serving;
    }
}

TEST_CASE("p_tin sweep over the influence radius has one interior maximum") {
    const NetworkConfig config = default_config();
    std::vector<double> values;
    for (double r = 10.0; r <= 900.0; r += 10.0) {
        NetworkConfig c = config;
        c.influence_radius = r;
        values.push_back(tin::p_tin_analytic(c, tin::Method::closed_form).p_tin);
    }
    const auto peak = std::max_element(values.begin(), values.end());
    const std::size_t peak_index = static_cast<std::size_t>(peak - values.begin());
    CHECK(peak_index > 0);
    CHECK(peak_index < values.size() - 1);
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        const double tolerance = 1e-9 * std::max(values[i], values[i + 1]);
        if (i < peak_index)
            CHECK(values[i] <= values[i + 1] + tolerance);
        else
            CHECK(values[i] >= values[i + 1] - tolerance);
    }
}
