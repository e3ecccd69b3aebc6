// SPDX-License-Identifier: Apache-2.0
#include "cfmimo/tin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace cfmimo::tin {

namespace {

constexpr double kPi = std::numbers::pi;

double clamp_probability(double p, const char* context) {
    if (p < -1e-9 || p > 1.0 + 1e-9)
        std::fprintf(stderr, "warning: %s produced %.17g before clamping to [0,1]\n", context, p);
    return std::clamp(p, 0.0, 1.0);
}

} // namespace

bool tin_condition_holds(double x, double y, const NetworkConfig& /*config*/,
                         const DerivedQuantities& derived) {
    if (!(x > 0.0) || !(y > 0.0))
        throw std::domain_error("tin_condition_holds: distances must be positive");
    return x * y >= derived.tin_threshold;
}

double prob_serving_ap_exists(double influence_radius, double window_radius, int num_aps) {
    const double ratio = influence_radius / window_radius;
    return -std::expm1(static_cast<double>(num_aps) * std::log1p(-ratio * ratio));
}

double prob_serving_ap_exists(const NetworkConfig& config) {
    return prob_serving_ap_exists(config.influence_radius, config.radius, config.num_aps);
}

double prob_xy_quadrature(const NetworkConfig& config, const DerivedQuantities& derived,
                          const numerics::QuadratureSpec& spec) {
    const double g_r = derived.tin_threshold;
    const double upper = g_r / config.influence_radius;
    const auto integrand = [&](double x) {
        if (x <= 0.0) return 0.0;
        return f_x_ppp(x, derived.lambda_copilot) * F_y_ppp(g_r / x, config, derived);
    };
    const double integral = numerics::adaptive_quad(integrand, 0.0, upper, spec);
    return clamp_probability(1.0 - integral, "prob_xy_quadrature");
}

double prob_xy_closed_form(const NetworkConfig& config, const DerivedQuantities& derived,
                           const numerics::QuadratureSpec& spec) {
    const double r = config.influence_radius;
    const double g_r = derived.tin_threshold;
    const double ratio = g_r / r;
    const double upper_t = ratio * ratio;
    const double rate_x = kPi * derived.lambda_copilot;
    const double rate_y = kPi * derived.thinning_prob * derived.lambda_ap;
    const double first_term = std::exp(-rate_x * upper_t);
    if (rate_y == 0.0) return 1.0; // no interfering APs; the condition holds a.s.

    // Remaining term: 2 pi lambda_0 exp(rate_y r^2) * I2 with
    // I2 = 1/2 * integral_0^T exp(-rate_x t - rate_y g_r^2 / t) dt.
    // The exponent is shifted by its minimum so the integrand peaks at 1 and
    // the result keeps relative accuracy even when the term is ~1e-60.
    const double q = rate_y * g_r * g_r;
    const double t_peak = std::min(std::sqrt(q / rate_x), upper_t);
    const double shift = rate_x * t_peak + q / t_peak;
    const auto integrand = [&](double t) {
        if (t <= 0.0) return 0.0;
        return std::exp(shift - rate_x * t - q / t);
    };
    const double scaled_integral = numerics::adaptive_quad(integrand, 0.0, upper_t, spec);
    const double second_term =
        scaled_integral > 0.0
            ? rate_x * std::exp(rate_y * r * r - shift + std::log(scaled_integral))
            : 0.0;
    return clamp_probability(first_term + second_term, "prob_xy_closed_form");
}

TinProbabilityResult p_tin_analytic(const NetworkConfig& config, Method method) {
    const DerivedQuantities derived = derive(config);
    TinProbabilityResult result;
    result.method = method;
    result.p_xy = method == Method::closed_form ? prob_xy_closed_form(config, derived)
                                                : prob_xy_quadrature(config, derived);
    result.p_serving = prob_serving_ap_exists(config);
    result.p_tin = result.p_xy * result.p_serving;
    return result;
}

} // namespace cfmimo::tin
