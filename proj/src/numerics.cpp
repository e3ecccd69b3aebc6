// SPDX-License-Identifier: Apache-2.0
#include "cfmimo/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace cfmimo::numerics {

namespace {

// ---------------------------------------------------------------------------
// Regularized incomplete beta via modified Lentz continued fraction.
// ---------------------------------------------------------------------------

double beta_cont_frac(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-15;
    constexpr double kFpMin = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

// ---------------------------------------------------------------------------
// Gauss-Kronrod 7/15 pair. Nodes and weights are the standard QUADPACK
// values; the Gauss rule reuses the odd Kronrod nodes.
// ---------------------------------------------------------------------------

constexpr double kKronrodNodes[8] = {
    0.0,
    0.2077849550078985,
    0.4058451513773972,
    0.5860872354676911,
    0.7415311855993944,
    0.8648644233597691,
    0.9491079123427585,
    0.9914553711208126,
};
constexpr double kKronrodWeights[8] = {
    0.20948214108472782801299917489171,
    0.20443294007529889241416199923465,
    0.19035057806478540991325640242101,
    0.16900472663926790282658342659855,
    0.14065325971552591874518959051024,
    0.10479001032225018383987632254152,
    0.06309209262997855329070066318920,
    0.02293532201052922496373200805897,
};
// Indexed like the Kronrod table; zero at the Kronrod-only nodes.
constexpr double kGaussWeights[8] = {
    0.41795918367346938775510204081633,
    0.0,
    0.38183005050511894495036977548898,
    0.0,
    0.27970539148927666790146777142378,
    0.0,
    0.12948496616886969327061143267908,
    0.0,
};

struct Segment {
    double a, b;
    double estimate;
    double error;
};

struct SegmentWorse {
    bool operator()(const Segment& lhs, const Segment& rhs) const {
        if (lhs.error != rhs.error) return lhs.error < rhs.error;
        return lhs.a > rhs.a; // deterministic tie-break
    }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double kronrod = kKronrodWeights[0] * f0;
    double gauss = kGaussWeights[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        kronrod += kKronrodWeights[i] * fsum;
        gauss += kGaussWeights[i] * fsum;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::fabs(kronrod - gauss)};
}

double adaptive_quad_partitioned(const std::function<double(double)>& f,
                                 const std::vector<double>& breakpoints,
                                 const QuadratureSpec& spec) {
    std::priority_queue<Segment, std::vector<Segment>, SegmentWorse> queue;
    double total_estimate = 0.0;
    double total_error = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const Segment segment = gk15(f, breakpoints[i], breakpoints[i + 1]);
        total_estimate += segment.estimate;
        total_error += segment.error;
        queue.push(segment);
    }

    int subdivisions = static_cast<int>(breakpoints.size()) - 1;
    auto tolerance = [&] {
        return std::max(spec.absolute_tolerance,
                        spec.relative_tolerance * std::fabs(total_estimate));
    };
    while (total_error > tolerance()) {
        if (queue.empty()) break; // every interval is at floating-point resolution
        if (subdivisions >= spec.max_subdivisions) {
            throw QuadratureError("adaptive_quad: subdivision budget exhausted", total_estimate,
                                  total_error);
        }
        const Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval narrower than representable; keep its estimate as-is
            total_error -= worst.error;
            continue;
        }
        const Segment left = gk15(f, worst.a, mid);
        const Segment right = gk15(f, mid, worst.b);
        total_estimate += left.estimate + right.estimate - worst.estimate;
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++subdivisions;
    }
    return total_estimate;
}

// ---------------------------------------------------------------------------
// K1: ascending series (extended precision) and asymptotic expansion.
// ---------------------------------------------------------------------------

constexpr long double kEulerGamma = 0.57721566490153286060651209008240243L;

double k1_series(double z) {
    const long double x = z;
    const long double half = x / 2.0L;
    const long double q = half * half;

    // I1(x) = sum_k (x/2)^{2k+1} / (k! (k+1)!)
    long double i1_term = half;
    long double i1 = i1_term;
    // S = sum_k [psi(k+1)+psi(k+2)] q^k / (k! (k+1)!)
    long double coeff = 1.0L;
    long double harmonic = 1.0L - 2.0L * kEulerGamma; // psi(1)+psi(2)
    long double s = harmonic;
    for (int k = 1; k < 200; ++k) {
        i1_term *= q / (static_cast<long double>(k) * (k + 1));
        i1 += i1_term;
        coeff *= q / (static_cast<long double>(k) * (k + 1));
        harmonic += 1.0L / k + 1.0L / (k + 1);
        const long double s_term = harmonic * coeff;
        s += s_term;
        if (s_term < 1e-24L * s && i1_term < 1e-24L * i1) break;
    }
    const long double result = std::log(half) * i1 + 1.0L / x - (x / 4.0L) * s;
    return static_cast<double>(result);
}

double k1_asymptotic(double z) {
    // K1(z) ~ sqrt(pi/(2z)) e^{-z} [1 + 3/(8z) - 15/(128 z^2) + ...],
    // truncated at the smallest term.
    const long double x = z;
    long double term = 1.0L;
    long double sum = term;
    for (int k = 1; k < 1000; ++k) {
        const long double next =
            term * (4.0L - (2.0L * k - 1.0L) * (2.0L * k - 1.0L)) / (8.0L * x * k);
        if (std::fabs(next) >= std::fabs(term)) break; // series started diverging
        term = next;
        sum += term;
        if (std::fabs(term) < 1e-20L * std::fabs(sum)) break;
    }
    const long double pref =
        std::sqrt(3.14159265358979323846264338327950288L / (2.0L * x)) * std::exp(-x);
    return static_cast<double>(pref * sum);
}

} // namespace

double reg_inc_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("reg_inc_beta: a and b must be positive");
    if (!(x >= 0.0) || !(x <= 1.0))
        throw std::domain_error("reg_inc_beta: x must lie in [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_cont_frac(a, b, x) / a;
    return 1.0 - front * beta_cont_frac(b, a, 1.0 - x) / b;
}

double adaptive_quad(const std::function<double(double)>& f, double lower, double upper,
                     const QuadratureSpec& spec) {
    if (spec.absolute_tolerance <= 0.0 || spec.relative_tolerance <= 0.0)
        throw std::domain_error("adaptive_quad: tolerances must be positive");
    if (spec.max_subdivisions < 1)
        throw std::domain_error("adaptive_quad: max_subdivisions must be >= 1");
    if (!std::isfinite(lower))
        throw std::domain_error("adaptive_quad: lower bound must be finite");
    if (upper == std::numeric_limits<double>::infinity()) {
        // t = lower + u/(1-u) maps [0,1) onto [lower, inf). The initial
        // partition is dyadic toward u = 1 so integrands whose mass sits at
        // very large t (tiny slivers of u) are seen before the error
        // estimate can vanish.
        auto transformed = [&f, lower](double u) {
            const double one_minus = 1.0 - u;
            const double t = lower + u / one_minus;
            const double jacobian = 1.0 / (one_minus * one_minus);
            const double value = f(t);
            return value == 0.0 ? 0.0 : value * jacobian;
        };
        std::vector<double> breakpoints{0.0};
        double gap = 0.5;
        for (int k = 0; k < 44; ++k, gap *= 0.5) breakpoints.push_back(1.0 - gap);
        breakpoints.push_back(1.0);
        if (spec.max_subdivisions <= static_cast<int>(breakpoints.size())) {
            // tiny budgets fall back to a single transformed interval
            breakpoints = {0.0, 1.0};
        }
        return adaptive_quad_partitioned(transformed, breakpoints, spec);
    }
    if (!(lower < upper)) throw std::domain_error("adaptive_quad: requires lower < upper");
    return adaptive_quad_partitioned(f, {lower, upper}, spec);
}

double bessel_k1(double z) {
    if (!(z > 0.0)) throw std::domain_error("bessel_k1: z must be positive");
    return z <= 11.0 ? k1_series(z) : k1_asymptotic(z);
}

} // namespace cfmimo::numerics
