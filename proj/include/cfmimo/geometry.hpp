// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cfmimo/rng.hpp"

namespace cfmimo::geometry {

struct Point2D {
    double x = 0.0;
    double y = 0.0;
};

struct DiskWindow {
    Point2D center;
    double radius = 0.0;
};

double distance(const Point2D& a, const Point2D& b);
double squared_distance(const Point2D& a, const Point2D& b);

/// One point uniform on the disk, via radius = R*sqrt(u) and a uniform angle.
Point2D sample_point_in_disk(const DiskWindow& window, RngStream& rng);

/// n i.i.d. uniform points on the disk (a binomial point process).
std::vector<Point2D> sample_uniform_disk(std::size_t n, const DiskWindow& window, RngStream& rng);

/// Homogeneous Poisson point process on the disk: Poisson count with mean
/// intensity * area, points uniform given the count.
std::vector<Point2D> sample_ppp_disk(double intensity, const DiskWindow& window, RngStream& rng);

/// Area of b(P, x) ∩ disk(O, R) where P sits at distance r from the window
/// center O, 0 < r < R. Piecewise: pi x^2 while the ball is inscribed,
/// circle-circle lens between the breakpoints, pi R^2 once the window is
/// covered (x > R+r tolerated so quadrature may probe past the support).
double lens_area(double x, double r, double R);

/// lens_area normalized by the window area; runs 0 -> 1 over [0, R+r].
double p_x_ratio(double x, double r, double R);

/// Derivative of p_x_ratio in x. Inner branch 2x/R^2; outer branch the
/// four-term lens expression. One-sided at the x = R-r breakpoint.
double dpx_dx(double x, double r, double R);

/// Euclidean minimum distance from origin to any target; empty -> nullopt.
std::optional<double> min_distance(const Point2D& origin, std::span<const Point2D> targets);

/// True iff the query lies within `radius` (closed ball) of some center.
bool in_union_of_disks(const Point2D& query, std::span<const Point2D> centers, double radius);

} // namespace cfmimo::geometry
