#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "wbell/scenario.hpp"

// Seeded Monte Carlo simulation of the five-setup experiment, counts-based
// estimation of the CH statistic with a propagated confidence interval, and
// white-noise robustness sweeps.
//
// Randomness contract: every sampled artifact is a pure function of its
// inputs and seed. Streams are mt19937_64; outcomes are drawn by inverse CDF
// from the top-53-bit uniform, so identical inputs give identical counts on
// any platform. Derived seeds are base + index (setup index within an
// estimate, point index within a sweep).

namespace wbell::experiment {

/// Per-setup outcome counts, indexed like OutcomeDistribution masks.
struct CountsTable {
  scenario::MeasurementSetup setup;
  std::vector<std::uint64_t> counts;
  std::uint64_t shots = 0;

  static CountsTable from_counts(scenario::MeasurementSetup setup,
                                 std::vector<std::uint64_t> counts);
};

/// Point estimate with normal-approximation sigma; ci95 = value +/- 1.96*sigma.
struct ChEstimate {
  double value = 0.0;
  double sigma = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;

  bool ci95_contains(double x) const { return ci95_low <= x && x <= ci95_high; }
};

/// Multinomial draw from the exact Born distribution.
CountsTable sample_counts(const scenario::QuantumState& state,
                          const scenario::MeasurementSetup& setup,
                          std::uint64_t shots, std::uint64_t seed);

/// The five tables of one experiment run (ZZZ, ZXX, XZX, XXZ, XXX), sampled
/// with per-setup seeds seed+0 .. seed+4.
std::array<CountsTable, 5> simulate_experiment(const scenario::QuantumState& state,
                                               std::uint64_t shots,
                                               std::uint64_t seed);

/// Empirical pair_prob_zz - middle_upper_bound - pair_prob_xx_same. Sigma
/// treats each aggregated probability as a binomial rate and adds the five
/// independent-setup variances.
ChEstimate estimate_ch(const CountsTable& zzz, const CountsTable& zxx,
                       const CountsTable& xzx, const CountsTable& xxz,
                       const CountsTable& xxx);

struct SweepPoint {
  double p = 0.0;
  double ch_lower_exact = 0.0;
  std::optional<ChEstimate> estimate;  // sampled mode only
};

struct SweepMode {
  bool sampled = false;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  static SweepMode exact() { return {}; }
  static SweepMode with_sampling(std::uint64_t shots, std::uint64_t seed) {
    return {true, shots, seed};
  }
};

/// ch_lower_bound on white_noise(|W>, p) across an evenly spaced grid;
/// sampled mode adds estimates with per-point seeds seed + index.
std::vector<SweepPoint> noise_sweep(double p_from, double p_to, int steps,
                                    const SweepMode& mode);

/// Bisection solve of ch_lower_bound(white_noise(|W>, p)) = target on [0, 1]
/// to an interval below 1e-10; throws when the target is outside the attained
/// range.
double noise_threshold(double target);

}  // namespace wbell::experiment
