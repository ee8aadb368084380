#include "geflab/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace geflab {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

}  // namespace

std::uint64_t rng_word(const RngState& state) {
  // Key derivation over (seed, stream), then a splitmix64 step indexed by
  // the counter.
  std::uint64_t key = mix64(state.master_seed + kGolden);
  key = mix64(key ^ (kGolden * (std::uint64_t{state.stream_id} + 1)));
  return mix64(key + kGolden * state.counter);
}

double uniform01(RngState& state) {
  const std::uint64_t w = rng_word(state);
  ++state.counter;
  return static_cast<double>(w >> 11) * 0x1.0p-53;
}

std::complex<double> standard_complex_gaussian(RngState& state) {
  const double u1 = uniform01(state);
  const double u2 = uniform01(state);
  const double modulus_sq = -std::log1p(-u1);  // Exp(1)
  const double modulus = std::sqrt(modulus_sq);
  const double phase = 2.0 * std::numbers::pi * u2;
  return {modulus * std::cos(phase), modulus * std::sin(phase)};
}

std::pair<std::complex<double>, RngState> sample_standard_complex(RngState state) {
  const std::complex<double> w = standard_complex_gaussian(state);
  return {w, state};
}

double gaussian_tail(double lambda) {
  if (lambda < 0.0 || std::isnan(lambda))
    throw std::domain_error("gaussian_tail: lambda must be nonnegative");
  return std::exp(-lambda * lambda);
}

double gaussian_small_ball(double lambda) {
  return 1.0 - gaussian_tail(lambda);
}

double log_gaussian_tail(double lambda) {
  if (lambda < 0.0 || std::isnan(lambda))
    throw std::domain_error("log_gaussian_tail: lambda must be nonnegative");
  return -lambda * lambda;
}

double log1mexp(double x) {
  if (!(x > 0.0)) throw std::domain_error("log1mexp: x must be positive");
  // Split at ln 2 for accuracy on both ends (Maechler's rule).
  if (x <= 0.6931471805599453) return std::log(-std::expm1(-x));
  return std::log1p(-std::exp(-x));
}

double log_gaussian_small_ball(double lambda) {
  if (lambda < 0.0 || std::isnan(lambda))
    throw std::domain_error("log_gaussian_small_ball: lambda must be nonnegative");
  if (lambda == 0.0) return -std::numeric_limits<double>::infinity();
  const double x = lambda * lambda;
  // below double underflow 1 - e^-x == x to full precision
  if (x == 0.0) return 2.0 * std::log(lambda);
  return log1mexp(x);
}

RngState derive_trial_rng(std::uint64_t master_seed, std::uint32_t stream_id,
                          std::uint64_t trial_index) {
  // Fold the trial index into the key so each trial owns an independent
  // stream with a full counter space.
  const std::uint64_t trial_key =
      mix64(mix64(master_seed ^ 0x6A09E667F3BCC909ull) + kGolden * trial_index);
  return RngState{trial_key, stream_id, 0};
}

}  // namespace geflab
