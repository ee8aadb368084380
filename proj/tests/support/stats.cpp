#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace geflab::teststats {

namespace {

// Lower regularized gamma by series (x < a+1).
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized gamma by Lentz continued fraction (x >= a+1).
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -double(i) * (double(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::domain_error("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * double(j) * double(j) * lambda * lambda);
    sum += sign * term;
    if (term < 1e-18) break;
    sign = -sign;
  }
  return std::min(1.0, std::max(0.0, 2.0 * sum));
}

double chi2_gof_pvalue(const std::vector<long long>& observed,
                       const std::vector<double>& expected) {
  if (observed.size() != expected.size() || observed.size() < 2)
    throw std::domain_error("chi2_gof_pvalue: shape mismatch");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double diff = double(observed[i]) - expected[i];
    stat += diff * diff / expected[i];
  }
  const double df = double(observed.size()) - 1.0;
  return gamma_q(df / 2.0, stat / 2.0);
}

double chi2_two_sample_pvalue(const std::vector<long long>& counts_a,
                              const std::vector<long long>& counts_b,
                              long long min_bin_total) {
  if (counts_a.size() != counts_b.size())
    throw std::domain_error("chi2_two_sample_pvalue: shape mismatch");

  // pool sparse bins left to right
  std::vector<std::pair<long long, long long>> bins;
  long long acc_a = 0, acc_b = 0;
  for (std::size_t i = 0; i < counts_a.size(); ++i) {
    acc_a += counts_a[i];
    acc_b += counts_b[i];
    if (acc_a + acc_b >= min_bin_total) {
      bins.emplace_back(acc_a, acc_b);
      acc_a = acc_b = 0;
    }
  }
  if (acc_a + acc_b > 0) {
    if (bins.empty()) {
      bins.emplace_back(acc_a, acc_b);
    } else {
      bins.back().first += acc_a;
      bins.back().second += acc_b;
    }
  }
  if (bins.size() < 2) throw std::domain_error("chi2_two_sample_pvalue: too few bins");

  long long total_a = 0, total_b = 0;
  for (const auto& [a, b] : bins) {
    total_a += a;
    total_b += b;
  }
  const double k1 = std::sqrt(double(total_b) / double(total_a));
  const double k2 = std::sqrt(double(total_a) / double(total_b));
  double stat = 0.0;
  for (const auto& [a, b] : bins) {
    const double diff = k1 * double(a) - k2 * double(b);
    stat += diff * diff / double(a + b);
  }
  const double df = double(bins.size()) - 1.0;
  return gamma_q(df / 2.0, stat / 2.0);
}

double ks_uniform_pvalue(std::vector<double> sorted_u) {
  const std::size_t n = sorted_u.size();
  if (n == 0) throw std::domain_error("ks_uniform_pvalue: empty sample");
  std::sort(sorted_u.begin(), sorted_u.end());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = double(i) / double(n);
    const double hi = double(i + 1) / double(n);
    d = std::max(d, std::max(sorted_u[i] - lo, hi - sorted_u[i]));
  }
  const double sn = std::sqrt(double(n));
  return kolmogorov_q((sn + 0.12 + 0.11 / sn) * d);
}

double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::domain_error("ks_two_sample_pvalue: empty");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(double(i) / double(a.size()) -
                              double(j) / double(b.size())));
  }
  const double ne = double(a.size()) * double(b.size()) /
                    double(a.size() + b.size());
  const double sn = std::sqrt(ne);
  return kolmogorov_q((sn + 0.12 + 0.11 / sn) * d);
}

double correlation(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::domain_error("correlation: shape mismatch");
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  const double cov = sxy - sx * sy / n;
  const double vx = sxx - sx * sx / n;
  const double vy = syy - sy * sy / n;
  return cov / std::sqrt(vx * vy);
}

}  // namespace geflab::teststats
