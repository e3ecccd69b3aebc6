// SPDX-License-Identifier: Apache-2.0
#include "cfmimo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cfmimo::geometry {

namespace {

constexpr double kPi = std::numbers::pi;

void check_lens_domain(double x, double r, double R) {
    if (!(r > 0.0) || !(r < R)) throw std::domain_error("lens_area: requires 0 < r < R");
    if (!(x >= 0.0)) throw std::domain_error("lens_area: requires x >= 0");
}

double clamped_acos(double v) { return std::acos(std::clamp(v, -1.0, 1.0)); }

// Quarter of the Heron radicand sqrt; floored at zero against roundoff at the
// breakpoints where one factor crosses zero.
double heron_triangle_area(double x, double r, double R) {
    const double radicand = (R + r + x) * (R - r + x) * (R + r - x) * (r + x - R);
    return 0.25 * std::sqrt(std::max(radicand, 0.0));
}

} // namespace

double squared_distance(const Point2D& a, const Point2D& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

double distance(const Point2D& a, const Point2D& b) { return std::sqrt(squared_distance(a, b)); }

Point2D sample_point_in_disk(const DiskWindow& window, RngStream& rng) {
    const double radius = window.radius * std::sqrt(rng.next_double());
    const double angle = 2.0 * kPi * rng.next_double();
    return {window.center.x + radius * std::cos(angle), window.center.y + radius * std::sin(angle)};
}

std::vector<Point2D> sample_uniform_disk(std::size_t n, const DiskWindow& window, RngStream& rng) {
    std::vector<Point2D> points;
    points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) points.push_back(sample_point_in_disk(window, rng));
    return points;
}

std::vector<Point2D> sample_ppp_disk(double intensity, const DiskWindow& window, RngStream& rng) {
    if (!(intensity >= 0.0)) throw std::domain_error("sample_ppp_disk: intensity must be >= 0");
    const double mean = intensity * kPi * window.radius * window.radius;
    const long count = rng.next_poisson(mean);
    return sample_uniform_disk(static_cast<std::size_t>(count), window, rng);
}

double lens_area(double x, double r, double R) {
    check_lens_domain(x, r, R);
    if (x <= R - r) return kPi * x * x;
    if (x >= R + r) return kPi * R * R;
    const double alpha_ue = clamped_acos((r * r + R * R - x * x) / (2.0 * r * R));
    const double alpha_ap = clamped_acos((r * r + x * x - R * R) / (2.0 * r * x));
    return R * R * alpha_ue + x * x * alpha_ap - 2.0 * heron_triangle_area(x, r, R);
}

double p_x_ratio(double x, double r, double R) {
    return std::clamp(lens_area(x, r, R) / (kPi * R * R), 0.0, 1.0);
}

double dpx_dx(double x, double r, double R) {
    check_lens_domain(x, r, R);
    if (!(x > 0.0)) throw std::domain_error("dpx_dx: requires x > 0");
    if (x > R + r) throw std::domain_error("dpx_dx: requires x <= R + r");
    const double R2 = R * R;
    if (x <= R - r) return 2.0 * x / R2;
    // Tangency limit: the density vanishes like sqrt(R+r-x); inside a narrow
    // collar the four-term expression is pure cancellation noise.
    if (R + r - x <= 1e-10 * (R + r)) return 0.0;
    const double sin_ue = std::sin(clamped_acos((r * r + R2 - x * x) / (2.0 * r * R)));
    const double alpha_ap = clamped_acos((r * r + x * x - R2) / (2.0 * r * x));
    const double sin_ap = std::sin(alpha_ap);
    const double s_delta = heron_triangle_area(x, r, R);
    const double value = x / (kPi * R * r * sin_ue) + 2.0 * x * alpha_ap / (kPi * R2) -
                         (x * x - r * r + R2) / (2.0 * kPi * R2 * r * sin_ap) -
                         s_delta / (kPi * R2) *
                             (1.0 / (R + r + x) + 1.0 / (R - r + x) + 1.0 / (r + x - R) -
                              1.0 / (R + r - x));
    return std::max(value, 0.0);
}

std::optional<double> min_distance(const Point2D& origin, std::span<const Point2D> targets) {
    if (targets.empty()) return std::nullopt;
    double best = squared_distance(origin, targets[0]);
    for (std::size_t i = 1; i < targets.size(); ++i)
        best = std::min(best, squared_distance(origin, targets[i]));
    return std::sqrt(best);
}

bool in_union_of_disks(const Point2D& query, std::span<const Point2D> centers, double radius) {
    if (!(radius >= 0.0)) throw std::domain_error("in_union_of_disks: radius must be >= 0");
    const double r2 = radius * radius;
    return std::any_of(centers.begin(), centers.end(),
                       [&](const Point2D& c) { return squared_distance(query, c) <= r2; });
}

} // namespace cfmimo::geometry
