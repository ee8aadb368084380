#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "geflab/gef.hpp"

namespace geflab {

/// Argument-principle count over a circle, with the Rouche guard that makes
/// it transferable to the untruncated function.
struct CountResult {
  int count = 0;
  double min_circle_modulus = 0.0;
  double guard_margin = 0.0;  // min_circle_modulus - tail_bound
  int refinement_depth = 0;   // deepest bisection level used
  int unresolved_arcs = 0;    // arcs still >= pi/2 when max_depth was hit
};

/// Zeros with multiplicity inside a disc (multiplicity = repeated entries).
struct DiscZeroSet {
  std::vector<std::complex<double>> zeros;
  double radius = 0.0;
  std::complex<double> center{0.0, 0.0};
  double max_poly_residual = 0.0;
};

enum class HoleTag { Hole, NotHole, Uncertain };

/// Certified three-valued decision for "no zeros in the closed disc".
struct HoleVerdict {
  HoleTag tag = HoleTag::Uncertain;
  int count = 0;       // meaningful iff NotHole
  std::string reason;  // nonempty iff Uncertain
};

struct WindingPolicy {
  int min_initial_arcs = 32;
  double initial_arcs_per_zero = 16.0;  // arcs per unit of (radius^2 + radius |center|)
  int max_depth = 16;
};

/// Ehrlich-Aberth failed to settle within the sweep budget; carries whatever
/// roots were inside the requested disc at abort time.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& message, DiscZeroSet partial)
      : std::runtime_error(message), partial_(std::move(partial)) {}
  const DiscZeroSet& partial() const { return partial_; }

 private:
  DiscZeroSet partial_;
};

/// Winding number of evaluate(gef, .) around the circle |z - center| = radius,
/// by principal-branch argument increments over an adaptive angular partition
/// (arcs bisected while their increment magnitude is >= pi/2, up to max_depth).
CountResult winding_count(const TruncatedGef& gef, std::complex<double> center,
                          double radius, const WindingPolicy& policy = {});

/// All roots of the truncated polynomial sum_k (zeta_k/sqrt(k!)) z^k by
/// Ehrlich-Aberth simultaneous iteration.
std::vector<std::complex<double>> polynomial_roots(const TruncatedGef& gef,
                                                   int max_sweeps = 200,
                                                   double tol_scale = 1e-12);

/// Roots with |z| < radius, cluster-merged at 1e-8 * radius.
DiscZeroSet find_zeros(const TruncatedGef& gef, double radius);

/// Hole iff certified count 0 in the closed disc; NotHole(count) iff
/// certified count >= 1; Uncertain when the guard margin is not positive or
/// the refinement budget ran out.
HoleVerdict classify_hole(const TruncatedGef& gef, double r);

}  // namespace geflab
