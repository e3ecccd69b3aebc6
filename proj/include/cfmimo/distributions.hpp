// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "cfmimo/errors.hpp"

namespace cfmimo {

/// Converts a dBm level to watts.
double dbm_to_watts(double dbm);

/// All scalar system parameters. Distances in meters, powers in watts.
struct NetworkConfig {
    double radius = 1000.0;           // coverage disk radius R
    int num_aps = 1000;               // L
    int num_ues = 400;                // K
    int num_pilots = 10;              // tau_p, orthogonal pilot sequences
    double pathloss_exponent = 3.76;  // alpha, must exceed 1
    double tx_power_w = 1.0;          // rho, AP transmit power
    double noise_power_w = dbm_to_watts(-94.0); // sigma^2 at the UE
    double tin_kappa = 1.0;           // TIN slack factor, >= 1
    double tin_mu = 1.0;              // TIN exponent, in [1, 2]
    double influence_radius = 100.0;  // r, radius of a UE's influence region
};

/// Throws ValidationError naming the offending field if any invariant fails.
void validate(const NetworkConfig& config);

/// Quantities computed once per configuration.
struct DerivedQuantities {
    double lambda_ap = 0.0;      // AP intensity L/(pi R^2)
    double lambda_ue = 0.0;      // UE intensity K/(pi R^2)
    double lambda_copilot = 0.0; // co-pilot UE intensity lambda_ue/tau_p
    double thinning_prob = 0.0;  // 1 - exp(-lambda_copilot * pi r^2)
    double tin_threshold = 0.0;  // g_r = kappa^(-1/alpha) (rho/sigma^2)^((2-mu)/alpha) r^mu
};

DerivedQuantities derive(const NetworkConfig& config);

enum class CurveKind { pdf, cdf };

/// Tabulated curve on a sorted abscissa grid; the figure-data carrier.
struct CurveTable {
    std::vector<double> abscissa;
    std::vector<double> values;
    CurveKind kind = CurveKind::cdf;
};

/// Throws ValidationError if the table violates its kind's invariants
/// (cdf: values nondecreasing within [0,1]; pdf: values nonnegative).
void validate(const CurveTable& table);

/// CDF of the distance to the n-th nearest of N binomial points,
/// F = 1 - I_{1-p}(N-n+1, n), where p is the window-area fraction covered by
/// the ball of the queried radius (supplied by the caller from the geometry
/// module).
double bpp_nth_nearest_cdf(int n, int total_points, double p_of_dist);

/// Density of the distance from the reference AP to the nearest of
/// `copilot_count` co-pilot UEs placed binomially in the window. Zero
/// outside (0, R+r].
double f_x_bpp(double x, int copilot_count, const NetworkConfig& config);

/// Poisson-approximation density of the same distance: Rayleigh contact
/// distance 2 pi lambda x exp(-pi lambda x^2).
double f_x_ppp(double x, double lambda_copilot);

/// Closed-form CDF matching f_x_ppp.
double F_x_ppp(double x, double lambda_copilot);

/// Thinned-Poisson density of the distance from the typical UE to the
/// nearest interfering AP; support starts at the influence radius.
double f_y_ppp(double y, const NetworkConfig& config, const DerivedQuantities& derived);

/// CDF matching f_y_ppp: 0 below r, 1 - exp(pi p_th lambda_ap (r^2 - y^2)) above.
double F_y_ppp(double y, const NetworkConfig& config, const DerivedQuantities& derived);

} // namespace cfmimo
