#pragma once

#include <complex>
#include <cstdint>
#include <utility>

namespace geflab {

/// Counter-based RNG state. Every output word is a pure function of
/// (master_seed, stream_id, counter), so replaying a state replays the
/// sequence bit-for-bit regardless of worker count or scheduling.
struct RngState {
  std::uint64_t master_seed = 0;
  std::uint32_t stream_id = 0;
  std::uint64_t counter = 0;

  friend bool operator==(const RngState&, const RngState&) = default;
};

/// Raw 64-bit output at the state's current counter (does not advance).
std::uint64_t rng_word(const RngState& state);

/// Uniform double in [0, 1); advances the counter by one.
double uniform01(RngState& state);

/// Standard complex Gaussian N_C(0,1), density pi^-1 exp(-|w|^2).
/// Drawn as (modulus, phase): modulus^2 is unit-exponential via inverse CDF,
/// phase uniform, so conditioning on modulus events is exact. Advances the
/// counter by two.
std::complex<double> standard_complex_gaussian(RngState& state);

/// Pure-function form: returns the sample and the advanced state.
std::pair<std::complex<double>, RngState> sample_standard_complex(RngState state);

/// P(|zeta| >= lambda) = exp(-lambda^2).
double gaussian_tail(double lambda);

/// P(|zeta| <= lambda) = 1 - exp(-lambda^2). Computed as the exact
/// complement of gaussian_tail so the pair always sums to 1.
double gaussian_small_ball(double lambda);

/// Log-scale twins for regimes where the natural scale under/overflows.
double log_gaussian_tail(double lambda);        // = -lambda^2
double log_gaussian_small_ball(double lambda);  // log(1 - exp(-lambda^2))

/// log(1 - exp(-x)) for x > 0, accurate over the full double range.
double log1mexp(double x);

/// Derives an independent per-trial state. Distinct (stream_id, trial_index)
/// pairs give decorrelated streams, each with its own full counter space.
RngState derive_trial_rng(std::uint64_t master_seed, std::uint32_t stream_id,
                          std::uint64_t trial_index);

}  // namespace geflab
