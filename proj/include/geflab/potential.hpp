#pragma once

#include <complex>
#include <vector>

#include "geflab/gef.hpp"
#include "geflab/rng.hpp"

namespace geflab {

/// Equispaced trapezoid rule on a circle; realizes the normalized angular
/// measure (weights sum to 1).
struct CircleGrid {
  double radius = 0.0;
  int n_points = 0;

  /// Default density: max(256, ceil(64 radius^2)) points.
  static CircleGrid for_radius(double radius);
  static CircleGrid with_points(double radius, int n_points);
};

enum class LogMode { Signed, Absolute, PositivePart };

/// Trapezoid average over the grid of log|psi|, |log|psi|| or log+|psi|.
double circle_mean_log_modulus(const TruncatedGef& gef, const CircleGrid& grid,
                               LogMode mode);

/// Poisson kernel (r^2 - |zeta|^2)/|z - zeta|^2 for the disc of radius r;
/// z on the circle (within 1e-12 relative), |zeta| < r.
double poisson_kernel(std::complex<double> z, std::complex<double> zeta, double r);

enum class ProbePlacement { Centers, UniformRandom, CornerAdversarial };

/// The near-circle probe geometry: n_discs = floor(2 pi / delta) discs of
/// radius delta*r centered on the circle of radius kappa*r, kappa = 1 - delta^(1/4),
/// one probe point per disc.
struct PoissonProbe {
  double delta = 0.0;
  double r = 0.0;
  double kappa = 0.0;
  int n_discs = 0;
  std::vector<std::complex<double>> probe_centers;
  std::vector<std::complex<double>> probe_points;
};

PoissonProbe make_poisson_probe(double delta, double r,
                                ProbePlacement placement = ProbePlacement::UniformRandom,
                                RngState state = {});

/// max over a dense circle grid (>= 4096 points) of |(1/N) sum_j P(z, zeta_j) - 1|.
double probe_deviation(const PoissonProbe& probe, int min_grid_points = 4096);

/// |circle mean of log|psi| - log|zeta_0| - sum_j log(r/|z_j|)| over the
/// zeros in the disc. The quadrature grid is densified adaptively when a
/// polynomial root sits near the circle, so the identity is testable to
/// machine precision on every certified sample.
double jensen_residual(const TruncatedGef& gef, double r);

/// Max of log|evaluate| over a polar grid of the disc z0 + rho*D
/// (>= 32 radii x 64 angles, scaled up with rho*(|z0|+rho)).
double local_sup_log_modulus(const TruncatedGef& gef, std::complex<double> z0,
                             double rho);

}  // namespace geflab
