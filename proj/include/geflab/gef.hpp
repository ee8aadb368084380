#pragma once

#include <complex>
#include <vector>

#include "geflab/rng.hpp"

namespace geflab {

struct TruncationPolicy {
  double alpha = 8.0;  // degree per unit of r^2
  int min_degree = 24;
};

struct GridPolicy {
  int min_points = 256;
  double per_zero = 64.0;  // circle points per unit of rho^2 (~ per expected zero)
};

/// Finite truncation of the random series sum_k zeta_k z^k / sqrt(k!).
///
/// tail_bound is a sup bound for the dropped tail on the whole certified
/// disc, valid on the envelope event |zeta_k| <= k for k > degree;
/// tail_failure_log_prob is the log-probability that the envelope fails.
/// Together they let zero counts of the truncation transfer to the
/// untruncated function by Rouche's theorem.
struct TruncatedGef {
  std::vector<std::complex<double>> coefficients;  // zeta_0 .. zeta_degree
  int degree = 0;
  double certified_radius = 0.0;
  double tail_bound = 0.0;
  double tail_failure_log_prob = 0.0;
};

struct TailBound {
  double tau = 0.0;
  double failure_log_prob = 0.0;
};

/// N = max(ceil(alpha * r^2), min_degree).
int truncation_degree(double r, const TruncationPolicy& policy = {});

/// tau = sum_{k>degree} k r^k / sqrt(k!) (summed to 1e-30 relative);
/// failure_log_prob = log sum_{k>degree} exp(-k^2), the exact bound on the
/// probability that some |zeta_k| > k beyond the truncation.
/// Requires degree >= ceil(8 r^2) so the summand ratio stays below 1/sqrt(2).
TailBound tail_bound(int degree, double r);

/// Draws degree+1 i.i.d. standard complex Gaussian coefficients and attaches
/// the tail certificate for radius r.
TruncatedGef sample_gef(double r, RngState state, const TruncationPolicy& policy = {});

/// Evaluates the truncation by the scaled-power recurrence
/// t_0 = 1, t_{k+1} = t_k z / sqrt(k+1) — no explicit factorials.
std::complex<double> evaluate(const TruncatedGef& gef, std::complex<double> z);

/// Max of |evaluate| over max(grid.min_points, ceil(grid.per_zero rho^2))
/// equispaced points of the circle |z| = rho.
double max_modulus_on_circle(const TruncatedGef& gef, double rho,
                             const GridPolicy& grid = {});

/// 1/sqrt(k) with a shared lookup table on the hot path.
double inv_sqrt_index(int k);

}  // namespace geflab
