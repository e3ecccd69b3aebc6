// SPDX-License-Identifier: Apache-2.0
#include "cfmimo/distributions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cfmimo/geometry.hpp"
#include "cfmimo/numerics.hpp"

namespace cfmimo {

namespace {
constexpr double kPi = std::numbers::pi;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

void validate(const NetworkConfig& c) {
    if (!(c.radius > 0.0)) throw ValidationError("radius", "must be > 0");
    if (c.num_aps < 1) throw ValidationError("num_aps", "must be >= 1");
    if (c.num_ues < 1) throw ValidationError("num_ues", "must be >= 1");
    if (c.num_pilots < 1) throw ValidationError("num_pilots", "must be >= 1");
    if (!(c.pathloss_exponent > 1.0)) throw ValidationError("pathloss_exponent", "must be > 1");
    if (!(c.tx_power_w > 0.0)) throw ValidationError("tx_power_w", "must be > 0");
    if (!(c.noise_power_w > 0.0)) throw ValidationError("noise_power_w", "must be > 0");
    if (!(c.tin_kappa >= 1.0)) throw ValidationError("tin_kappa", "must be >= 1");
    if (!(c.tin_mu >= 1.0 && c.tin_mu <= 2.0)) throw ValidationError("tin_mu", "must lie in [1, 2]");
    if (!(c.influence_radius > 0.0 && c.influence_radius < c.radius))
        throw ValidationError("influence_radius", "must lie in (0, radius)");
}

DerivedQuantities derive(const NetworkConfig& c) {
    validate(c);
    DerivedQuantities d;
    const double area = kPi * c.radius * c.radius;
    d.lambda_ap = c.num_aps / area;
    d.lambda_ue = c.num_ues / area;
    d.lambda_copilot = d.lambda_ue / c.num_pilots;
    const double r = c.influence_radius;
    d.thinning_prob = -std::expm1(-d.lambda_copilot * kPi * r * r);
    const double snr_gain = c.tx_power_w / c.noise_power_w;
    const double alpha = c.pathloss_exponent;
    d.tin_threshold = std::pow(c.tin_kappa, -1.0 / alpha) *
                      std::pow(snr_gain, (2.0 - c.tin_mu) / alpha) * std::pow(r, c.tin_mu);
    return d;
}

void validate(const CurveTable& t) {
    if (t.abscissa.size() != t.values.size())
        throw ValidationError("CurveTable", "abscissa and values must have equal length");
    for (std::size_t i = 1; i < t.abscissa.size(); ++i)
        if (!(t.abscissa[i] >= t.abscissa[i - 1]))
            throw ValidationError("CurveTable.abscissa", "must be sorted");
    if (t.kind == CurveKind::cdf) {
        double prev = 0.0;
        for (double v : t.values) {
            if (!(v >= prev - 1e-12) || !(v >= 0.0) || !(v <= 1.0))
                throw ValidationError("CurveTable.values", "cdf must be nondecreasing in [0,1]");
            prev = v;
        }
    } else {
        for (double v : t.values)
            if (!(v >= 0.0)) throw ValidationError("CurveTable.values", "pdf must be nonnegative");
    }
}

double bpp_nth_nearest_cdf(int n, int total_points, double p_of_dist) {
    if (n < 1 || total_points < 1 || n > total_points)
        throw std::domain_error("bpp_nth_nearest_cdf: requires 1 <= n <= N");
    if (!(p_of_dist >= 0.0 && p_of_dist <= 1.0))
        throw std::domain_error("bpp_nth_nearest_cdf: p must lie in [0,1]");
    return 1.0 - numerics::reg_inc_beta(1.0 - p_of_dist, total_points - n + 1, n);
}

double f_x_bpp(double x, int copilot_count, const NetworkConfig& config) {
    if (copilot_count < 1) throw std::domain_error("f_x_bpp: copilot_count must be >= 1");
    const double r = config.influence_radius;
    const double R = config.radius;
    if (x <= 0.0 || x > R + r) return 0.0;
    const double density = geometry::dpx_dx(x, r, R);
    const double p = geometry::p_x_ratio(x, r, R);
    return density * copilot_count * std::pow(1.0 - p, copilot_count - 1);
}

double f_x_ppp(double x, double lambda_copilot) {
    if (!(lambda_copilot > 0.0)) throw std::domain_error("f_x_ppp: lambda must be positive");
    if (x < 0.0) return 0.0;
    return 2.0 * kPi * lambda_copilot * x * std::exp(-kPi * lambda_copilot * x * x);
}

double F_x_ppp(double x, double lambda_copilot) {
    if (!(lambda_copilot > 0.0)) throw std::domain_error("F_x_ppp: lambda must be positive");
    if (x <= 0.0) return 0.0;
    return -std::expm1(-kPi * lambda_copilot * x * x);
}

double f_y_ppp(double y, const NetworkConfig& config, const DerivedQuantities& derived) {
    const double r = config.influence_radius;
    if (y < r) return 0.0;
    const double rate = kPi * derived.thinning_prob * derived.lambda_ap;
    // normalization constant exp(rate r^2) folded into the exponent so large
    // influence regions cannot overflow
    return 2.0 * rate * y * std::exp(rate * (r * r - y * y));
}

double F_y_ppp(double y, const NetworkConfig& config, const DerivedQuantities& derived) {
    const double r = config.influence_radius;
    if (y < r) return 0.0;
    const double rate = kPi * derived.thinning_prob * derived.lambda_ap;
    return -std::expm1(rate * (r * r - y * y));
}

} // namespace cfmimo
