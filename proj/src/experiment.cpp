#include "wbell/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wbell/rng.hpp"
#include "wbell/selection.hpp"

namespace wbell::experiment {

namespace {

using scenario::OutcomeDistribution;
using scenario::QuantumState;

std::string setup_letters(const scenario::MeasurementSetup& setup) {
  std::string letters;
  for (const auto& obs : setup) letters += obs.label();
  return letters;
}

void require_table(const CountsTable& table, const char* letters) {
  if (setup_letters(table.setup) != letters)
    throw std::invalid_argument(std::string("estimate_ch: expected setup ") +
                                letters + ", got " +
                                setup_letters(table.setup));
  if (table.shots == 0)
    throw std::invalid_argument("estimate_ch: table has zero shots");
}

// Aggregated empirical rate over a list of outcome masks.
double rate(const CountsTable& table, std::initializer_list<std::size_t> masks) {
  std::uint64_t hits = 0;
  for (std::size_t mask : masks) hits += table.counts[mask];
  return static_cast<double>(hits) / static_cast<double>(table.shots);
}

double binomial_variance(double rate_value, std::uint64_t shots) {
  return rate_value * (1.0 - rate_value) / static_cast<double>(shots);
}

}  // namespace

CountsTable CountsTable::from_counts(scenario::MeasurementSetup setup,
                                     std::vector<std::uint64_t> counts) {
  const std::size_t expected = std::size_t{1} << setup.size();
  if (counts.size() != expected)
    throw std::invalid_argument("CountsTable: count vector size mismatch");
  CountsTable table;
  table.setup = std::move(setup);
  table.shots = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  table.counts = std::move(counts);
  return table;
}

CountsTable sample_counts(const QuantumState& state,
                          const scenario::MeasurementSetup& setup,
                          std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("sample_counts: shots must be >= 1");
  const OutcomeDistribution dist = scenario::born_distribution(state, setup);

  // Cumulative distribution with tiny negatives clamped; the last edge is
  // forced to 1 so the inverse-CDF scan always lands.
  std::vector<double> cumulative(dist.size());
  double running = 0.0;
  for (std::size_t mask = 0; mask < dist.size(); ++mask) {
    running += std::max(0.0, dist.probability_by_mask(mask));
    cumulative[mask] = running;
  }
  cumulative.back() = 1.0;

  CountsTable table;
  table.setup = setup;
  table.shots = shots;
  table.counts.assign(dist.size(), 0);
  Rng rng(seed);
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const double u = rng.uniform01();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t mask = static_cast<std::size_t>(
        std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                 static_cast<std::ptrdiff_t>(dist.size()) - 1));
    ++table.counts[mask];
  }
  return table;
}

std::array<CountsTable, 5> simulate_experiment(const QuantumState& state,
                                               std::uint64_t shots,
                                               std::uint64_t seed) {
  const auto setups = scenario::experiment_setups();
  std::array<CountsTable, 5> tables;
  for (std::size_t k = 0; k < setups.size(); ++k)
    tables[k] = sample_counts(state, setups[k], shots, seed + k);
  return tables;
}

ChEstimate estimate_ch(const CountsTable& zzz, const CountsTable& zxx,
                       const CountsTable& xzx, const CountsTable& xxz,
                       const CountsTable& xxx) {
  require_table(zzz, "ZZZ");
  require_table(zxx, "ZXX");
  require_table(xzx, "XZX");
  require_table(xxz, "XXZ");
  require_table(xxx, "XXX");

  const double p_zz = rate(zzz, {0b011, 0b101, 0b110, 0b111});
  const double mid_zxx = rate(zxx, {0b101, 0b110});
  const double mid_xzx = rate(xzx, {0b011, 0b110});
  const double mid_xxz = rate(xxz, {0b011, 0b101});
  const double p_xx = rate(xxx, {0b000, 0b111});

  ChEstimate estimate;
  estimate.value = p_zz - (mid_zxx + mid_xzx + mid_xxz) - p_xx;
  const double variance = binomial_variance(p_zz, zzz.shots) +
                          binomial_variance(mid_zxx, zxx.shots) +
                          binomial_variance(mid_xzx, xzx.shots) +
                          binomial_variance(mid_xxz, xxz.shots) +
                          binomial_variance(p_xx, xxx.shots);
  estimate.sigma = std::sqrt(variance);
  estimate.ci95_low = estimate.value - 1.96 * estimate.sigma;
  estimate.ci95_high = estimate.value + 1.96 * estimate.sigma;
  return estimate;
}

std::vector<SweepPoint> noise_sweep(double p_from, double p_to, int steps,
                                    const SweepMode& mode) {
  if (!(0.0 <= p_from && p_from <= p_to && p_to <= 1.0))
    throw std::invalid_argument("noise_sweep: need 0 <= p_from <= p_to <= 1");
  if (steps < 2) throw std::invalid_argument("noise_sweep: steps must be >= 2");
  if (mode.sampled && mode.shots == 0)
    throw std::invalid_argument("noise_sweep: sampled mode needs shots >= 1");

  const QuantumState w = scenario::make_w_state();
  std::vector<SweepPoint> points;
  points.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    SweepPoint point;
    point.p = p_from + (p_to - p_from) * i / (steps - 1);
    const QuantumState noisy = scenario::white_noise(w, point.p);
    point.ch_lower_exact = selection::ch_lower_bound(noisy);
    if (mode.sampled) {
      const auto tables = simulate_experiment(noisy, mode.shots, mode.seed + i);
      point.estimate =
          estimate_ch(tables[0], tables[1], tables[2], tables[3], tables[4]);
    }
    points.push_back(std::move(point));
  }
  return points;
}

double noise_threshold(double target) {
  const QuantumState w = scenario::make_w_state();
  const auto ch_at = [&](double p) {
    return selection::ch_lower_bound(scenario::white_noise(w, p));
  };
  const double at_zero = ch_at(0.0);
  const double at_one = ch_at(1.0);
  if (!(target <= at_zero && target >= at_one))
    throw std::invalid_argument("noise_threshold: target outside attained range");

  // ch_lower is strictly decreasing in p.
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo >= 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (ch_at(mid) >= target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace wbell::experiment
