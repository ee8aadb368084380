#include "geflab/gef.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "geflab/errors.hpp"

namespace geflab {

namespace {

constexpr int kInvSqrtTableSize = 4096;

const std::array<double, kInvSqrtTableSize + 1>& inv_sqrt_table() {
  static const auto table = [] {
    std::array<double, kInvSqrtTableSize + 1> t{};
    t[0] = 0.0;
    for (int k = 1; k <= kInvSqrtTableSize; ++k) t[k] = 1.0 / std::sqrt(double(k));
    return t;
  }();
  return table;
}

}  // namespace

double inv_sqrt_index(int k) {
  if (k >= 1 && k <= kInvSqrtTableSize) return inv_sqrt_table()[k];
  return 1.0 / std::sqrt(double(k));
}

int truncation_degree(double r, const TruncationPolicy& policy) {
  if (!(r > 0.0)) throw std::domain_error("truncation_degree: r must be positive");
  const double scaled = std::ceil(policy.alpha * r * r);
  const int n = scaled > double(1 << 30) ? (1 << 30) : int(scaled);
  return std::max(n, policy.min_degree);
}

TailBound tail_bound(int degree, double r) {
  if (!(r > 0.0)) throw std::domain_error("tail_bound: r must be positive");
  if (degree < int(std::ceil(8.0 * r * r)))
    throw DegreeTooSmallError("tail_bound: degree below ceil(8 r^2)");

  // First term k = degree+1 in log scale, then the term ratio
  // (k+1)/k * r/sqrt(k+1) < 1/sqrt(2) keeps the sum geometric. Degrees far
  // above 8 r^2 push the whole tail below double underflow; tau = 0 then.
  int k = degree + 1;
  double term = std::exp(std::log(double(k)) + double(k) * std::log(r) -
                         0.5 * std::lgamma(double(k) + 1.0));
  double tau = 0.0;
  while (term > 0.0) {
    tau += term;
    ++k;
    term *= (double(k) / double(k - 1)) * r * inv_sqrt_index(k);
    if (term < 1e-30 * tau) break;
  }

  // log sum_{k>degree} e^{-k^2} = -(degree+1)^2 + log1p(corrections)
  const double m = double(degree) + 1.0;
  double extra = 0.0;
  for (int j = 1; j < 8; ++j) extra += std::exp(-(2.0 * m + double(j)) * double(j));
  return {tau, -m * m + std::log1p(extra)};
}

TruncatedGef sample_gef(double r, RngState state, const TruncationPolicy& policy) {
  const int degree = truncation_degree(r, policy);
  TruncatedGef gef;
  gef.coefficients.resize(std::size_t(degree) + 1);
  for (auto& c : gef.coefficients) c = standard_complex_gaussian(state);
  gef.degree = degree;
  gef.certified_radius = r;
  const TailBound tb = tail_bound(degree, r);
  gef.tail_bound = tb.tau;
  gef.tail_failure_log_prob = tb.failure_log_prob;
  return gef;
}

std::complex<double> evaluate(const TruncatedGef& gef, std::complex<double> z) {
  std::complex<double> acc = gef.coefficients[0];
  std::complex<double> t{1.0, 0.0};
  for (int k = 1; k <= gef.degree; ++k) {
    t *= z * inv_sqrt_index(k);
    acc += gef.coefficients[std::size_t(k)] * t;
  }
  return acc;
}

double max_modulus_on_circle(const TruncatedGef& gef, double rho, const GridPolicy& grid) {
  if (!(rho > 0.0)) throw std::domain_error("max_modulus_on_circle: rho must be positive");
  if (rho > gef.certified_radius * (1.0 + 1e-12))
    throw CertificationError("max_modulus_on_circle: rho exceeds certified radius");
  const int n = std::max(grid.min_points, int(std::ceil(grid.per_zero * rho * rho)));
  double best = 0.0;
  for (int j = 0; j < n; ++j) {
    const double theta = 2.0 * std::numbers::pi * double(j) / double(n);
    const std::complex<double> z = std::polar(rho, theta);
    best = std::max(best, std::abs(evaluate(gef, z)));
  }
  return best;
}

}  // namespace geflab
