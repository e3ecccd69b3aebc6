// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "cfmimo/distributions.hpp"
#include "cfmimo/numerics.hpp"

namespace cfmimo::tin {

enum class Method { quadrature, closed_form };

struct TinProbabilityResult {
    double p_xy = 0.0;      // P{XY >= g_r}
    double p_serving = 0.0; // P{at least one AP in the influence region}
    double p_tin = 0.0;     // product of the two factors
    Method method = Method::closed_form;
};

/// Whether treating interference as noise is optimal for the given nearest
/// co-pilot UE distance X and nearest interfering AP distance Y. Evaluates
/// the distance form X*Y >= g_r, boundary inclusive.
bool tin_condition_holds(double x, double y, const NetworkConfig& config,
                         const DerivedQuantities& derived);

/// 1 - (1 - r^2/R^2)^L, the chance that at least one of `num_aps` uniform
/// points lands within the influence radius of the window center.
double prob_serving_ap_exists(double influence_radius, double window_radius, int num_aps);
double prob_serving_ap_exists(const NetworkConfig& config);

/// P{XY >= g_r} as 1 - integral of f_x_ppp(x) * F_y_ppp(g_r/x) over
/// (0, g_r/r]; beyond that limit the CDF factor vanishes.
double prob_xy_quadrature(const NetworkConfig& config, const DerivedQuantities& derived,
                          const numerics::QuadratureSpec& spec = {});

/// Same probability through the closed-form route: the first term is
/// exp(-pi lambda_0 (g_r/r)^2) and the remaining bivariate-exponential
/// integral is evaluated by exponent-shifted adaptive quadrature so that
/// very small probabilities keep relative accuracy.
double prob_xy_closed_form(const NetworkConfig& config, const DerivedQuantities& derived,
                           const numerics::QuadratureSpec& spec = {});

/// Probability that the TIN conditions hold: p_xy(method) * p_serving.
TinProbabilityResult p_tin_analytic(const NetworkConfig& config, Method method);

} // namespace cfmimo::tin
