#include "geflab/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "geflab/errors.hpp"

namespace geflab {

namespace {

constexpr double kPi = std::numbers::pi;

bool all_coefficients_zero(const TruncatedGef& gef) {
  for (const auto& c : gef.coefficients)
    if (c != std::complex<double>(0.0, 0.0)) return false;
  return true;
}

struct Arc {
  double a, b;
  std::complex<double> fa, fb;
  int depth;
};

}  // namespace

CountResult winding_count(const TruncatedGef& gef, std::complex<double> center,
                          double radius, const WindingPolicy& policy) {
  if (!(radius > 0.0)) throw std::domain_error("winding_count: radius must be positive");
  if (std::abs(center) + radius > gef.certified_radius * (1.0 + 1e-12))
    throw CertificationError("winding_count: disc not inside certified region");
  if (all_coefficients_zero(gef))
    throw DegenerateInputError("winding_count: all coefficients are zero");

  const int n0 = std::max(
      policy.min_initial_arcs,
      int(std::ceil(policy.initial_arcs_per_zero *
                    (radius * radius + radius * std::abs(center)))));

  const auto point = [&](double theta) { return center + std::polar(radius, theta); };

  std::vector<std::complex<double>> ring(static_cast<std::size_t>(n0));
  double min_mod = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n0; ++j) {
    ring[std::size_t(j)] = evaluate(gef, point(2.0 * kPi * double(j) / double(n0)));
    min_mod = std::min(min_mod, std::abs(ring[std::size_t(j)]));
  }

  std::vector<Arc> stack;
  stack.reserve(std::size_t(n0) + 64);
  for (int j = 0; j < n0; ++j) {
    const double a = 2.0 * kPi * double(j) / double(n0);
    const double b = 2.0 * kPi * double(j + 1) / double(n0);
    stack.push_back({a, b, ring[std::size_t(j)], ring[std::size_t((j + 1) % n0)], 0});
  }

  double total = 0.0;
  int depth_seen = 0;
  int unresolved = 0;
  while (!stack.empty()) {
    const Arc arc = stack.back();
    stack.pop_back();
    const double inc = std::arg(arc.fb * std::conj(arc.fa));
    if (std::abs(inc) < kPi / 2.0) {
      total += inc;
      continue;
    }
    if (arc.depth >= policy.max_depth) {
      total += inc;
      ++unresolved;
      continue;
    }
    const double m = 0.5 * (arc.a + arc.b);
    const std::complex<double> fm = evaluate(gef, point(m));
    min_mod = std::min(min_mod, std::abs(fm));
    depth_seen = std::max(depth_seen, arc.depth + 1);
    stack.push_back({arc.a, m, arc.fa, fm, arc.depth + 1});
    stack.push_back({m, arc.b, fm, arc.fb, arc.depth + 1});
  }

  const long count = std::lround(total / (2.0 * kPi));
  // A winding sum far from an integer multiple of 2pi means some arc aliased.
  if (std::abs(total - 2.0 * kPi * double(count)) > kPi / 2.0) ++unresolved;

  CountResult result;
  result.count = int(count);
  result.min_circle_modulus = min_mod;
  result.guard_margin = min_mod - gef.tail_bound;
  result.refinement_depth = depth_seen;
  result.unresolved_arcs = unresolved;
  return result;
}

std::vector<std::complex<double>> polynomial_roots(const TruncatedGef& gef,
                                                   int max_sweeps, double tol_scale) {
  if (all_coefficients_zero(gef))
    throw DegenerateInputError("polynomial_roots: all coefficients are zero");

  // Monomial coefficients c_k = zeta_k / sqrt(k!).
  std::vector<std::complex<double>> c(gef.coefficients.size());
  double scale = 1.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k > 0) scale *= inv_sqrt_index(int(k));
    c[k] = gef.coefficients[k] * scale;
  }
  int deg = int(c.size()) - 1;
  while (deg > 0 && c[std::size_t(deg)] == std::complex<double>(0.0, 0.0)) --deg;
  if (deg == 0) return {};

  // Initial guesses spiral over the region that carries the roots: the
  // truncated series behaves like the entire function out to ~sqrt(deg),
  // so its zero cloud ends near that radius.
  const double outer = 1.2 * std::max(gef.certified_radius, std::sqrt(double(deg)));
  std::vector<std::complex<double>> x(static_cast<std::size_t>(deg));
  constexpr double kGoldenAngle = 2.0 * kPi * 0.6180339887498949;
  for (int j = 0; j < deg; ++j) {
    const double rj = (double(j) + 0.5) / double(deg + 1) * outer;
    x[std::size_t(j)] = std::polar(rj, kGoldenAngle * double(j) + 0.4);
  }

  const auto horner = [&](std::complex<double> z, std::complex<double>& p,
                          std::complex<double>& dp) {
    p = c[std::size_t(deg)];
    dp = {0.0, 0.0};
    for (int k = deg - 1; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + c[std::size_t(k)];
    }
  };

  const double tol = tol_scale * std::max(gef.certified_radius, 1.0);
  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    double max_step = 0.0;
    for (int j = 0; j < deg; ++j) {
      std::complex<double> p, dp;
      horner(x[std::size_t(j)], p, dp);
      if (p == std::complex<double>(0.0, 0.0)) continue;
      std::complex<double> w;
      if (dp != std::complex<double>(0.0, 0.0)) {
        w = p / dp;
      } else {
        w = std::complex<double>(tol, tol);
      }
      std::complex<double> sum_inv{0.0, 0.0};
      for (int i = 0; i < deg; ++i) {
        if (i == j) continue;
        std::complex<double> diff = x[std::size_t(j)] - x[std::size_t(i)];
        if (std::abs(diff) < 1e-300) diff = std::complex<double>(1e-300, 0.0);
        sum_inv += 1.0 / diff;
      }
      const std::complex<double> denom = 1.0 - w * sum_inv;
      const std::complex<double> step = (std::abs(denom) > 1e-300) ? w / denom : w;
      x[std::size_t(j)] -= step;
      max_step = std::max(max_step, std::abs(step));
    }
    converged = max_step < tol;
  }

  if (!converged) {
    DiscZeroSet partial;
    partial.radius = gef.certified_radius;
    for (const auto& root : x)
      if (std::abs(root) < gef.certified_radius) partial.zeros.push_back(root);
    throw ConvergenceError("polynomial_roots: Ehrlich-Aberth did not settle", partial);
  }
  return x;
}

DiscZeroSet find_zeros(const TruncatedGef& gef, double radius) {
  if (!(radius > 0.0)) throw std::domain_error("find_zeros: radius must be positive");
  if (radius > gef.certified_radius * (1.0 + 1e-12))
    throw CertificationError("find_zeros: radius exceeds certified radius");

  const auto roots = polynomial_roots(gef);
  std::vector<std::complex<double>> inside;
  for (const auto& z : roots)
    if (std::abs(z) < radius) inside.push_back(z);
  std::sort(inside.begin(), inside.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });

  // Merge near-coincident roots to their centroid; multiplicity = repeats.
  const double merge_tol = 1e-8 * radius;
  DiscZeroSet set;
  set.radius = radius;
  std::size_t i = 0;
  while (i < inside.size()) {
    std::size_t j = i + 1;
    std::complex<double> sum = inside[i];
    while (j < inside.size() && std::abs(inside[j] - inside[j - 1]) < merge_tol) {
      sum += inside[j];
      ++j;
    }
    const std::complex<double> centroid = sum / double(j - i);
    for (std::size_t k = i; k < j; ++k) set.zeros.push_back(centroid);
    i = j;
  }

  double residual = 0.0;
  for (const auto& z : set.zeros) residual = std::max(residual, std::abs(evaluate(gef, z)));
  set.max_poly_residual = residual;
  return set;
}

HoleVerdict classify_hole(const TruncatedGef& gef, double r) {
  const CountResult cr = winding_count(gef, {0.0, 0.0}, r);
  HoleVerdict verdict;
  if (cr.guard_margin > 0.0 && cr.unresolved_arcs == 0) {
    if (cr.count == 0) {
      verdict.tag = HoleTag::Hole;
    } else {
      verdict.tag = HoleTag::NotHole;
      verdict.count = cr.count;
    }
    return verdict;
  }
  verdict.tag = HoleTag::Uncertain;
  verdict.reason = cr.guard_margin <= 0.0
                       ? "guard margin not positive (boundary-grazing zero)"
                       : "refinement budget exhausted";
  return verdict;
}

}  // namespace geflab
