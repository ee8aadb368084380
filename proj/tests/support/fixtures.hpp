#pragma once

// Frozen oracle values. Every constant here was computed by
// tests/oracles/compute_fixtures.py (mpmath at 60 significant digits, plus
// scipy for the statistics cross-checks) before the implementation existed.

namespace geflab::fixtures {

// sum_{k>32} k 2^k / sqrt(k!)
inline constexpr double kTauN32R2 = 1.481275830201530114730588e-7;
// sum_{k>24} k / sqrt(k!)
inline constexpr double kTauN24R1 = 7.963862669812587393326418e-12;
// log sum_{k>32} exp(-k^2)
inline constexpr double kFailureLogN32 = -1089.0;
// log sum_{k>24} exp(-k^2); true value is -625 + ~6e-23, rounds to -625.0
inline constexpr double kFailureLogN24 = -625.0;

// sum_{k=0}^{20} 1 / sqrt(k!)
inline constexpr double kSumInvSqrtFact20 = 3.469506314343512232166374;

// exact log P(Omega_r)
inline constexpr double kLogProbOmegaR1 = -196.438904409949391561627;
inline constexpr double kLogProbOmegaR2 = -3076.000010803376671735551;
inline constexpr double kLogProbOmegaR4 = -49156.0;
inline constexpr double kLogProbOmegaR8 = -786436.0;

// 7 r exp(-2 r^2 + 0.5 r^2) at r = 2
inline constexpr double kSigmaPrimeBoundR2 = 0.034702530473329017923;

// scipy cross-checks for the test-side statistics helpers
inline constexpr double kGammaQ_9p5_10 = 0.394578182086001;
inline constexpr double kGammaQ_0p5_2 = 0.04550026389635857;
inline constexpr double kGammaQ_5_5 = 0.44049328506521257;
inline constexpr double kKolmogorovQ_0p5 = 0.9639452436648751;
inline constexpr double kKolmogorovQ_1 = 0.26999967167735456;
inline constexpr double kKolmogorovQ_2 = 0.0006709252557796953;
inline constexpr double kChi2Crit19_1em3 = 43.82019596451753;

// Wilson 95% interval at n = 1000, k = 10
inline constexpr double kWilsonLow_1000_10 = 0.005440754445529249;
inline constexpr double kWilsonHigh_1000_10 = 0.018309468870314774;

}  // namespace geflab::fixtures
