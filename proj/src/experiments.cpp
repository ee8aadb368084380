#include "geflab/experiments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "geflab/errors.hpp"
#include "geflab/potential.hpp"
#include "geflab/zeros.hpp"

namespace geflab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZ95 = 1.959963984540054;
constexpr double kJensenPassThreshold = 1e-6;

struct Counts {
  long long successes = 0;
  long long uncertain = 0;
};

Counts operator+(Counts a, Counts b) {
  return {a.successes + b.successes, a.uncertain + b.uncertain};
}

enum class Outcome { Success, Failure, Uncertain };

bool needs_delta(EventSpec event) {
  switch (event) {
    case EventSpec::CountDeviation:
    case EventSpec::LogMDeviation:
    case EventSpec::CircleMeanLow:
    case EventSpec::Claim32Failure:
      return true;
    default:
      return false;
  }
}

Outcome run_trial(EventSpec event, double r, double delta, RngState rng) {
  switch (event) {
    case EventSpec::Hole: {
      if (r == 0.0) {
        // closed disc {0}: hole iff psi(0) = zeta_0 != 0, an almost-sure event
        const auto zeta0 = standard_complex_gaussian(rng);
        return zeta0 != std::complex<double>(0.0, 0.0) ? Outcome::Success
                                                       : Outcome::Failure;
      }
      const TruncatedGef gef = sample_gef(r, rng);
      const HoleVerdict v = classify_hole(gef, r);
      switch (v.tag) {
        case HoleTag::Hole: return Outcome::Success;
        case HoleTag::NotHole: return Outcome::Failure;
        case HoleTag::Uncertain: return Outcome::Uncertain;
      }
      return Outcome::Uncertain;
    }
    case EventSpec::CountDeviation: {
      const TruncatedGef gef = sample_gef(r, rng);
      const CountResult cr = winding_count(gef, {0.0, 0.0}, r);
      if (cr.guard_margin <= 0.0 || cr.unresolved_arcs > 0) return Outcome::Uncertain;
      const double dev = std::abs(double(cr.count) / (r * r) - 1.0);
      return dev >= delta ? Outcome::Success : Outcome::Failure;
    }
    case EventSpec::LogMDeviation: {
      const TruncatedGef gef = sample_gef(r, rng);
      const double m = max_modulus_on_circle(gef, r);
      const double dev = std::abs(std::log(m) / (r * r) - 0.5);
      return dev >= delta ? Outcome::Success : Outcome::Failure;
    }
    case EventSpec::CircleMeanLow: {
      const TruncatedGef gef = sample_gef(r, rng);
      double mean;
      try {
        mean = circle_mean_log_modulus(gef, CircleGrid::for_radius(r), LogMode::Signed);
      } catch (const SingularGridError&) {
        return Outcome::Success;  // mean is -infinity
      }
      return mean / (r * r) <= 0.5 - delta ? Outcome::Success : Outcome::Failure;
    }
    case EventSpec::Claim32Failure: {
      const TruncatedGef gef = sample_gef(r, rng);
      // probe center pinned at 0.7 r on the positive real axis, radius delta*r
      const std::complex<double> z0{0.7 * r, 0.0};
      const double sup = local_sup_log_modulus(gef, z0, delta * r);
      return sup <= (0.5 - 3.0 * delta) * std::norm(z0) ? Outcome::Success
                                                        : Outcome::Failure;
    }
    case EventSpec::AbsMeanHigh: {
      const TruncatedGef gef = sample_gef(r, rng);
      double mean;
      try {
        mean = circle_mean_log_modulus(gef, CircleGrid::for_radius(r), LogMode::Absolute);
      } catch (const SingularGridError&) {
        return Outcome::Success;  // |log| blows up
      }
      return mean > 10.0 * r * r ? Outcome::Success : Outcome::Failure;
    }
    case EventSpec::JensenResidual: {
      const TruncatedGef gef = sample_gef(r, rng);
      try {
        return jensen_residual(gef, r) < kJensenPassThreshold ? Outcome::Success
                                                              : Outcome::Failure;
      } catch (const ConvergenceError&) {
        return Outcome::Uncertain;
      }
    }
  }
  return Outcome::Uncertain;
}

}  // namespace

std::string event_name(EventSpec event) {
  switch (event) {
    case EventSpec::Hole: return "hole";
    case EventSpec::CountDeviation: return "count_deviation";
    case EventSpec::LogMDeviation: return "logm_deviation";
    case EventSpec::CircleMeanLow: return "circle_mean_low";
    case EventSpec::Claim32Failure: return "claim32_failure";
    case EventSpec::AbsMeanHigh: return "abs_mean_high";
    case EventSpec::JensenResidual: return "jensen_residual";
  }
  return "unknown";
}

std::uint32_t event_stream(EventSpec event) {
  return 1u + std::uint32_t(event);
}

double log_prob_omega(double r) {
  if (!(r >= 1.0)) throw std::domain_error("log_prob_omega: requires r >= 1");
  const long long k_mid = (long long)std::floor(48.0 * r * r);

  // (ii): floor(48 r^2) factors of P(|zeta| <= exp(-2 r^2)) = 1 - exp(-exp(-4 r^2))
  const double t = -4.0 * r * r;  // log lambda^2
  const double per_factor = (t > -700.0) ? log1mexp(std::exp(t)) : t;

  // (iii): sum_{k > k_mid} log(1 - exp(-4^k)); underflows immediately at r >= 1
  double tail = 0.0;
  for (long long k = k_mid + 1;; ++k) {
    const double y = std::pow(4.0, double(k));
    if (y > 745.0) break;  // |log(1 - e^-y)| ~ e^-y below double underflow
    const double term = log1mexp(y);
    tail += term;
    if (std::fabs(term) < 1e-300) break;
  }

  return -4.0 + double(k_mid) * per_factor + tail;
}

int conditional_omega_degree(double r, const TruncationPolicy& policy) {
  if (!(r >= 1.0)) throw std::domain_error("conditional_omega_degree: requires r >= 1");
  return std::max(truncation_degree(r, policy),
                  int(std::floor(48.0 * r * r)) + 1);
}

TruncatedGef sample_conditional_omega(double r, RngState state, int degree) {
  if (!(r >= 1.0)) throw std::domain_error("sample_conditional_omega: requires r >= 1");
  const long long k_mid = (long long)std::floor(48.0 * r * r);
  if (degree < k_mid)
    throw std::domain_error("sample_conditional_omega: degree below 48 r^2");

  TruncatedGef gef;
  gef.coefficients.resize(std::size_t(degree) + 1);

  // (i) |zeta_0|^2 = 4 + Exp(1): exact conditional law given |zeta_0| >= 2
  {
    const double m2 = 4.0 - std::log1p(-uniform01(state));
    const double phase = 2.0 * kPi * uniform01(state);
    gef.coefficients[0] = std::polar(std::sqrt(m2), phase);
  }

  // (ii) modulus^2 ~ Exp(1) conditioned <= lambda^2, lambda = exp(-2 r^2)
  const double lambda = std::exp(-2.0 * r * r);
  const double ball = gaussian_small_ball(lambda);
  for (long long k = 1; k <= k_mid; ++k) {
    const double u = uniform01(state);
    double m2 = -std::log1p(-u * ball);
    m2 = std::min(m2, lambda * lambda);
    const double m = std::min(std::sqrt(m2), lambda);
    const double phase = 2.0 * kPi * uniform01(state);
    gef.coefficients[std::size_t(k)] = std::polar(m, phase);
  }

  // (iii) standard complex Gaussian rejected above 2^k (acceptance ~ 1)
  for (long long k = k_mid + 1; k <= degree; ++k) {
    const double bound = std::pow(2.0, double(k));
    std::complex<double> w;
    do {
      w = standard_complex_gaussian(state);
    } while (std::abs(w) > bound);
    gef.coefficients[std::size_t(k)] = w;
  }

  gef.degree = degree;
  gef.certified_radius = r;
  const TailBound tb = tail_bound(degree, r);
  gef.tail_bound = tb.tau;
  gef.tail_failure_log_prob = tb.failure_log_prob;
  return gef;
}

OmegaChainReport verify_omega_chain(const TruncatedGef& gef, double r) {
  if (!(r >= 1.0)) throw std::domain_error("verify_omega_chain: requires r >= 1");
  const long long k_mid = (long long)std::floor(48.0 * r * r);
  if (gef.degree < k_mid)
    throw std::domain_error("verify_omega_chain: degree below 48 r^2");

  // constraint checks with 1e-12 relative slack for polar->rect rounding
  constexpr double kSlack = 1e-12;
  const double zeta0_abs = std::abs(gef.coefficients[0]);
  if (zeta0_abs < 2.0 * (1.0 - kSlack))
    throw NotInOmegaError("verify_omega_chain: |zeta_0| < 2");
  const double lambda = std::exp(-2.0 * r * r);
  for (long long k = 1; k <= k_mid; ++k) {
    if (std::abs(gef.coefficients[std::size_t(k)]) > lambda * (1.0 + kSlack))
      throw NotInOmegaError("verify_omega_chain: middle coefficient above exp(-2 r^2)");
  }
  for (long long k = k_mid + 1; k <= gef.degree; ++k) {
    const double bound = std::pow(2.0, double(k));
    if (std::abs(gef.coefficients[std::size_t(k)]) > bound * (1.0 + kSlack))
      throw NotInOmegaError("verify_omega_chain: tail coefficient above 2^k");
  }

  // Sigma' = sum_{1 <= k <= 48 r^2} |zeta_k| r^k / sqrt(k!), exact from the sample
  double sum_prime = 0.0;
  double t = 1.0;  // r^k / sqrt(k!)
  for (long long k = 1; k <= k_mid; ++k) {
    t *= r * inv_sqrt_index(int(k));
    sum_prime += std::abs(gef.coefficients[std::size_t(k)]) * t;
  }

  OmegaChainReport report;
  report.r = r;
  report.zeta0_abs = zeta0_abs;
  report.sum_prime = sum_prime;
  report.sum_double_prime_bound = 0.5;
  report.lower_bound_on_min_psi = zeta0_abs - sum_prime - 0.5;
  report.chain_holds = report.lower_bound_on_min_psi >= 1.0;
  return report;
}

std::pair<double, double> wilson_interval(double p_hat, long long trials) {
  const double n = double(trials);
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (p_hat + z2 / (2.0 * n)) / denom;
  const double half =
      kZ95 * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

McEstimate estimate_event_probability(EventSpec event, double r,
                                      std::optional<double> delta, long long trials,
                                      std::uint64_t master_seed, int workers) {
  if (trials < 1) throw std::domain_error("estimate_event_probability: trials must be >= 1");
  if (needs_delta(event)) {
    if (!delta) throw std::domain_error("estimate_event_probability: event requires delta");
    if (!(*delta > 0.0) || *delta > 0.25)
      throw std::domain_error("estimate_event_probability: delta must lie in (0, 1/4]");
  }
  if (event == EventSpec::Hole) {
    if (r < 0.0) throw std::domain_error("estimate_event_probability: r must be >= 0");
  } else if (!(r > 0.0)) {
    throw std::domain_error("estimate_event_probability: r must be positive");
  }

  const double d = delta.value_or(0.0);
  const std::uint32_t stream = event_stream(event);
  const Counts counts = parallel_map_reduce<Counts>(
      trials, workers, Counts{},
      [&](long long i) -> Counts {
        const RngState rng = derive_trial_rng(master_seed, stream, std::uint64_t(i));
        switch (run_trial(event, r, d, rng)) {
          case Outcome::Success: return {1, 0};
          case Outcome::Uncertain: return {0, 1};
          case Outcome::Failure: return {0, 0};
        }
        return {0, 0};
      },
      [](Counts a, Counts b) { return a + b; });

  McEstimate est;
  est.event_name = event_name(event);
  est.r = r;
  est.delta = delta;
  est.trials = trials;
  est.successes = counts.successes;
  est.uncertain = counts.uncertain;
  est.p_hat = (double(counts.successes) + 0.5 * double(counts.uncertain)) / double(trials);
  est.p_low_bound = double(counts.successes) / double(trials);
  est.p_high_bound = double(counts.successes + counts.uncertain) / double(trials);
  const auto ci = wilson_interval(est.p_hat, trials);
  est.ci_low = ci.first;
  est.ci_high = ci.second;
  est.master_seed = master_seed;
  return est;
}

FitResult fit_decay_exponent(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3)
    throw std::domain_error("fit_decay_exponent: need at least 3 points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].first > 0.0))
      throw std::domain_error("fit_decay_exponent: r values must be positive");
    if (!(points[i].second > 0.0))
      throw std::domain_error("fit_decay_exponent: neg_log_p values must be positive");
    if (i > 0 && !(points[i].first > points[i - 1].first))
      throw std::domain_error("fit_decay_exponent: r values must be strictly increasing");
  }

  const std::size_t n = points.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [r, y] : points) {
    const double lx = std::log(r);
    const double ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double mean_x = sx / double(n);
  const double mean_y = sy / double(n);
  const double ss_xx = sxx - double(n) * mean_x * mean_x;
  const double ss_xy = sxy - double(n) * mean_x * mean_y;
  const double slope = ss_xy / ss_xx;
  const double intercept = mean_y - slope * mean_x;

  double ss_res = 0.0;
  for (const auto& [r, y] : points) {
    const double resid = std::log(y) - (intercept + slope * std::log(r));
    ss_res += resid * resid;
  }

  FitResult fit;
  fit.amplitude = std::exp(intercept);
  fit.exponent = slope;
  fit.window = points;
  fit.residual_rms = std::sqrt(ss_res / double(n));
  return fit;
}

}  // namespace geflab
