#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geflab/gef.hpp"
#include "geflab/rng.hpp"

namespace geflab {

/// Events measurable by estimate_event_probability. The first five are the
/// deviation/hole events; abs_mean_high and jensen_residual back the
/// circlemean and jensen CLI commands through the same machinery.
enum class EventSpec {
  Hole,            // no zeros in the closed disc of radius r
  CountDeviation,  // |n(r)/r^2 - 1| >= delta
  LogMDeviation,   // |log M(r)/r^2 - 1/2| >= delta
  CircleMeanLow,   // circle mean of log|psi| <= (1/2 - delta) r^2
  Claim32Failure,  // sup of log|psi| over z0 + delta*r*D is <= (1/2 - 3 delta)|z0|^2
  AbsMeanHigh,     // circle mean of |log|psi|| > 10 r^2
  JensenResidual,  // jensen_residual >= 1e-6 is a failure; success = identity holds
};

std::string event_name(EventSpec event);
std::uint32_t event_stream(EventSpec event);

/// Monte Carlo event-probability estimate. Uncertain trials are reported,
/// never dropped: p_low_bound counts them as failures, p_high_bound as
/// successes, and p_hat splits them evenly. ci_low/ci_high are the Wilson
/// 95% interval around p_hat.
struct McEstimate {
  std::string event_name;
  double r = 0.0;
  std::optional<double> delta;
  long long trials = 0;
  long long successes = 0;
  long long uncertain = 0;
  double p_hat = 0.0;
  double p_low_bound = 0.0;
  double p_high_bound = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t master_seed = 0;
};

/// The hole-forcing inequality chain evaluated on one sample:
/// |psi(z)| >= |zeta_0| - Sigma' - Sigma'' with Sigma'' bounded by 1/2.
struct OmegaChainReport {
  double r = 0.0;
  double zeta0_abs = 0.0;
  double sum_prime = 0.0;
  double sum_double_prime_bound = 0.5;
  double lower_bound_on_min_psi = 0.0;
  bool chain_holds = false;
};

struct FitResult {
  double amplitude = 0.0;
  double exponent = 0.0;
  std::vector<std::pair<double, double>> window;  // (r, neg_log_p)
  double residual_rms = 0.0;
};

/// Exact log P(Omega_r): -4 from |zeta_0| >= 2, floor(48 r^2) factors of
/// log(1 - exp(-exp(-4 r^2))) from the middle block, and the
/// double-exponentially convergent tail product. Requires r >= 1.
double log_prob_omega(double r);

/// Degree that materializes every constrained index: max(truncation_degree,
/// floor(48 r^2) + 1).
int conditional_omega_degree(double r, const TruncationPolicy& policy = {});

/// Samples the coefficient event directly: |zeta_0|^2 = 4 + Exp(1),
/// middle moduli from the exponential law conditioned below exp(-4 r^2),
/// tail rejection-sampled under |zeta_k| <= 2^k.
TruncatedGef sample_conditional_omega(double r, RngState state, int degree);

/// Checks the event constraints (tolerance 1e-12 relative) and evaluates the
/// chain on the sample. Throws NotInOmegaError on constraint violation.
OmegaChainReport verify_omega_chain(const TruncatedGef& gef, double r);

/// Runs `trials` independent simulations, trial i seeded by
/// derive_trial_rng(master_seed, event_stream(event), i); the reduction is a
/// commutative integer fold, so results are identical for any worker count.
McEstimate estimate_event_probability(EventSpec event, double r,
                                      std::optional<double> delta, long long trials,
                                      std::uint64_t master_seed, int workers = 0);

/// Least squares of log(neg_log_p) against log(r): slope = exponent,
/// exp(intercept) = amplitude.
FitResult fit_decay_exponent(const std::vector<std::pair<double, double>>& points);

/// Wilson 95% two-sided interval for a binomial proportion.
std::pair<double, double> wilson_interval(double p_hat, long long trials);

/// 0 -> hardware concurrency (at least 1).
int resolve_workers(int requested);

/// Deterministic parallel fold of map(0..n-1) with an exact (integer-like)
/// accumulator: contiguous chunks per worker, partials combined in worker
/// order. Exceptions from map are rethrown after join.
template <typename R, typename Map, typename Combine>
R parallel_map_reduce(long long n, int workers, R identity, Map&& map, Combine&& combine);

}  // namespace geflab

#include "geflab/experiments_impl.hpp"
