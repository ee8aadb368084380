#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "geflab/errors.hpp"
#include "geflab/gef.hpp"
#include "geflab/serialize.hpp"
#include "support/fixtures.hpp"
#include "support/stats.hpp"

using namespace geflab;
using cplx = std::complex<double>;

namespace {

TruncatedGef gef_from_coeffs(std::vector<cplx> coeffs, double r) {
  TruncatedGef gef;
  gef.degree = int(coeffs.size()) - 1;
  gef.coefficients = std::move(coeffs);
  gef.certified_radius = r;
  if (gef.degree >= int(std::ceil(8.0 * r * r))) {
    const TailBound tb = tail_bound(gef.degree, r);
    gef.tail_bound = tb.tau;
    gef.tail_failure_log_prob = tb.failure_log_prob;
  }
  return gef;
}

}  // namespace

TEST_CASE("truncation degree policy") {
  CHECK(truncation_degree(2.0) == 32);
  CHECK(truncation_degree(1.0) == 24);
  CHECK(truncation_degree(3.0) == 72);
  CHECK(truncation_degree(0.1) == 24);  // floor at min_degree
  CHECK_THROWS_AS(truncation_degree(0.0), std::domain_error);
  CHECK_THROWS_AS(truncation_degree(-1.0), std::domain_error);
}

TEST_CASE("tail bound against the high-precision oracle") {
  const TailBound t32 = tail_bound(32, 2.0);
  CHECK(t32.tau == doctest::Approx(fixtures::kTauN32R2).epsilon(1e-12));
  CHECK(t32.failure_log_prob == doctest::Approx(fixtures::kFailureLogN32).epsilon(1e-14));

  const TailBound t24 = tail_bound(24, 1.0);
  CHECK(t24.tau == doctest::Approx(fixtures::kTauN24R1).epsilon(1e-12));
  CHECK(t24.tau < t32.tau);
  CHECK(t24.failure_log_prob <= -625.0);

  CHECK_THROWS_AS(tail_bound(24, 2.0), DegreeTooSmallError);  // needs ceil(8*4)=32
  CHECK_THROWS_AS(tail_bound(10, 0.0), std::domain_error);

  // first-term domination: failure_log_prob < log 2 - (N+1)^2
  for (int n : {24, 32, 50, 80, 120}) {
    const double m = double(n) + 1.0;
    CHECK(tail_bound(n, 0.999 * std::sqrt(n / 8.0)).failure_log_prob <
          std::log(2.0) - m * m);
  }

  // degrees far above 8 r^2 drive the whole tail below double underflow;
  // the sum must terminate and report a certifiable zero
  const TailBound deep = tail_bound(769, 4.0);
  CHECK(deep.tau == 0.0);
  CHECK(deep.failure_log_prob < -500000.0);
  const TailBound deeper = tail_bound(3073, 8.0);
  CHECK(deeper.tau == 0.0);
}

TEST_CASE("sample_gef determinism and composition") {
  const RngState s = derive_trial_rng(11, 0, 5);
  const TruncatedGef a = sample_gef(2.0, s);
  const TruncatedGef b = sample_gef(2.0, s);
  CHECK(a.degree == 32);
  CHECK(a.coefficients == b.coefficients);
  CHECK(a.certified_radius == 2.0);
  const TailBound tb = tail_bound(32, 2.0);
  CHECK(a.tail_bound == tb.tau);
  CHECK(a.tail_failure_log_prob == tb.failure_log_prob);
}

TEST_CASE("zeta_0 law over 1e5 samples") {
  const int n = 100'000;
  const int bins = 20;
  std::vector<long long> mod_counts(bins, 0);
  std::vector<double> edges(bins + 1);
  for (int j = 0; j <= bins; ++j)
    edges[std::size_t(j)] = (j == bins) ? std::numeric_limits<double>::infinity()
                                        : -std::log1p(-double(j) / bins);
  for (int i = 0; i < n; ++i) {
    const TruncatedGef gef = sample_gef(1.0, derive_trial_rng(303, 0, std::uint64_t(i)));
    const double m2 = std::norm(gef.coefficients[0]);
    const int mb =
        int(std::upper_bound(edges.begin(), edges.end(), m2) - edges.begin()) - 1;
    ++mod_counts[std::size_t(std::clamp(mb, 0, bins - 1))];
  }
  const std::vector<double> expected(bins, double(n) / bins);
  CHECK(teststats::chi2_gof_pvalue(mod_counts, expected) > 1e-3);
}

TEST_CASE("evaluate: fixed coefficient examples") {
  const auto constant = gef_from_coeffs({cplx{1.0, 0.0}, {}, {}}, 1.0);
  CHECK(evaluate(constant, {0.3, 0.7}) == cplx{1.0, 0.0});

  const auto linear = gef_from_coeffs({{}, cplx{1.0, 0.0}, {}}, 1.0);
  const cplx z{0.25, -0.5};
  CHECK(evaluate(linear, z) == z);  // t_1 = z / sqrt(1)

  std::vector<cplx> ones(21, cplx{1.0, 0.0});
  const auto all_ones = gef_from_coeffs(std::move(ones), 1.0);
  CHECK(std::abs(evaluate(all_ones, {1.0, 0.0})) ==
        doctest::Approx(fixtures::kSumInvSqrtFact20).epsilon(1e-14));
}

TEST_CASE("evaluate linearity to relative 1e-12") {
  for (int trial = 0; trial < 50; ++trial) {
    const TruncatedGef a = sample_gef(2.0, derive_trial_rng(7, 1, std::uint64_t(trial)));
    const TruncatedGef b = sample_gef(2.0, derive_trial_rng(7, 2, std::uint64_t(trial)));
    TruncatedGef sum = a;
    for (std::size_t k = 0; k < sum.coefficients.size(); ++k)
      sum.coefficients[k] += b.coefficients[k];
    RngState zs = derive_trial_rng(7, 3, std::uint64_t(trial));
    const cplx z = std::polar(2.0 * std::sqrt(uniform01(zs)),
                              2.0 * std::numbers::pi * uniform01(zs));
    const cplx lhs = evaluate(sum, z);
    const cplx rhs = evaluate(a, z) + evaluate(b, z);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("rotation covariance of the evaluated law (two-sample KS)") {
  const int n = 10'000;
  const cplx a = std::polar(1.0, 0.7);
  std::vector<double> at_one, at_rotated;
  at_one.reserve(n);
  at_rotated.reserve(n);
  for (int i = 0; i < n; ++i) {
    const TruncatedGef g1 = sample_gef(1.0, derive_trial_rng(404, 0, std::uint64_t(i)));
    const TruncatedGef g2 = sample_gef(1.0, derive_trial_rng(404, 1, std::uint64_t(i)));
    at_one.push_back(std::abs(evaluate(g1, {1.0, 0.0})));
    at_rotated.push_back(std::abs(evaluate(g2, a)));
  }
  CHECK(teststats::ks_two_sample_pvalue(at_one, at_rotated) > 1e-3);
}

TEST_CASE("tail certificate: degree-32 vs degree-64 evaluations at r = 2") {
  const TailBound t32 = tail_bound(32, 2.0);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const TruncatedGef wide =
        sample_gef(2.0, derive_trial_rng(505, 0, std::uint64_t(i)),
                   TruncationPolicy{8.0, 64});
    REQUIRE(wide.degree == 64);
    TruncatedGef narrow = wide;
    narrow.coefficients.resize(33);
    narrow.degree = 32;
    narrow.tail_bound = t32.tau;

    RngState zs = derive_trial_rng(505, 1, std::uint64_t(i));
    for (int p = 0; p < 100; ++p) {
      const cplx z = std::polar(2.0 * std::sqrt(uniform01(zs)),
                                2.0 * std::numbers::pi * uniform01(zs));
      const double diff = std::abs(evaluate(wide, z) - evaluate(narrow, z));
      CHECK(diff <= t32.tau);
      ++checked;
    }
  }
  CHECK(checked == 100'000);
}

TEST_CASE("max modulus on circle") {
  const auto constant = gef_from_coeffs({cplx{-3.0, 4.0}}, 2.0);
  CHECK(max_modulus_on_circle(constant, 2.0) == doctest::Approx(5.0));

  const auto linear = gef_from_coeffs({{}, cplx{1.0, 0.0}}, 2.0);
  CHECK(max_modulus_on_circle(linear, 2.0) == doctest::Approx(2.0).epsilon(1e-12));

  const TruncatedGef gef = sample_gef(3.0, derive_trial_rng(606, 0, 0));
  const double coarse = max_modulus_on_circle(gef, 3.0);
  const double dense = max_modulus_on_circle(gef, 3.0, GridPolicy{256 * 16, 64.0 * 16});
  CHECK(std::abs(coarse - dense) / dense < 1e-3);

  CHECK_THROWS_AS(max_modulus_on_circle(gef, 3.5), CertificationError);
}

TEST_CASE("log max-modulus concentrates at r = 3") {
  const int n = 10'000;
  std::vector<double> scaled;
  scaled.reserve(n);
  for (int i = 0; i < n; ++i) {
    const TruncatedGef gef = sample_gef(3.0, derive_trial_rng(707, 0, std::uint64_t(i)));
    scaled.push_back(std::log(max_modulus_on_circle(gef, 3.0)) / 9.0);
  }
  std::nth_element(scaled.begin(), scaled.begin() + n / 2, scaled.end());
  const double median = scaled[n / 2];
  CHECK(median > 0.25);
  CHECK(median < 0.75);
}

TEST_CASE("JSON round trip") {
  const TruncatedGef gef = sample_gef(2.0, derive_trial_rng(808, 0, 0));
  const auto j = gef_to_json(gef);
  CHECK(j.at("degree") == 32);
  CHECK(j.at("coefficients").size() == 33);
  const TruncatedGef back = gef_from_json(j);
  CHECK(back.coefficients == gef.coefficients);
  CHECK(back.certified_radius == gef.certified_radius);
  CHECK(back.tail_bound == gef.tail_bound);
  CHECK(back.tail_failure_log_prob == gef.tail_failure_log_prob);
}
