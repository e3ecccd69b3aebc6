// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace cfmimo::numerics {

/// Tolerances and subdivision budget for adaptive_quad. An estimate is
/// accepted once the error bound drops below
/// max(absolute_tolerance, relative_tolerance * |estimate|).
struct QuadratureSpec {
    double absolute_tolerance = 1e-12;
    double relative_tolerance = 1e-10;
    int max_subdivisions = 200;
};

/// Raised when the subdivision budget is exhausted before the requested
/// tolerance is met. Carries the last estimate and the achieved bound so
/// callers can decide whether the partial result is usable.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double last_estimate, double error_bound)
        : std::runtime_error(what), last_estimate_(last_estimate), error_bound_(error_bound) {}

    double last_estimate() const noexcept { return last_estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double last_estimate_;
    double error_bound_;
};

/// Regularized incomplete beta function I_x(a,b), x in [0,1], a,b > 0.
/// Continued-fraction evaluation with the symmetry switch at
/// x = (a+1)/(a+b+2), accurate to ~1e-14 across the domain.
double reg_inc_beta(double x, double a, double b);

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [lower, upper].
/// upper == +infinity integrates over [lower, inf) via the substitution
/// t = lower + u/(1-u). Deterministic for fixed inputs. Throws
/// QuadratureError when max_subdivisions is exhausted.
double adaptive_quad(const std::function<double(double)>& f, double lower, double upper,
                     const QuadratureSpec& spec = {});

/// Modified Bessel function of the second kind, order 1. Ascending series
/// in extended precision for z <= 11, asymptotic expansion beyond; relative
/// accuracy ~3e-10 or better everywhere. Throws std::domain_error for z <= 0.
double bessel_k1(double z);

} // namespace cfmimo::numerics
