#include "wbell/selection.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace wbell::selection {

namespace {

using scenario::OutcomeDistribution;
using scenario::QuantumState;

std::string setup_letters(const scenario::MeasurementSetup& setup) {
  std::string letters;
  for (const auto& obs : setup) letters += obs.label();
  return letters;
}

void require_setup(const OutcomeDistribution& dist, const char* letters) {
  if (setup_letters(dist.setup()) != letters)
    throw std::invalid_argument(std::string("expected setup ") + letters +
                                ", got " + setup_letters(dist.setup()));
}

// Setup measuring sigma_z on qubit q and sigma_x on the other two.
scenario::MeasurementSetup z_at(int q) {
  scenario::MeasurementSetup setup;
  for (int p = 0; p < 3; ++p)
    setup.push_back(p == q ? scenario::SpinObservable::z()
                           : scenario::SpinObservable::x());
  return setup;
}

// P(the two non-q outcomes agree | outcome of qubit q equals z_value).
double x_agreement_given_z(const QuantumState& state, int q, int z_value) {
  const OutcomeDistribution dist = scenario::born_distribution(state, z_at(q));
  const int a = q == 0 ? 1 : 0;
  const int b = q == 2 ? 1 : 2;
  return scenario::conditional_probability(
      dist,
      [a, b](std::span<const int> o) { return o[a] == o[b]; },
      [q, z_value](std::span<const int> o) { return o[q] == z_value; });
}

}  // namespace

std::string SignLinear::to_string() const {
  std::ostringstream out;
  out.precision(12);
  out << c0 << (c1 < 0.0 ? " - " : " + ") << std::abs(c1) << "*x_k";
  return out.str();
}

std::optional<PairAssignment> classify_trio(SelectionRule rule,
                                            std::array<int, 3> z) {
  for (int v : z)
    if (v != 1 && v != -1)
      throw std::invalid_argument("classify_trio: entries must be +1 or -1");

  const int plus_count = (z[0] == 1) + (z[1] == 1) + (z[2] == 1);
  if (plus_count == 1) {
    PairAssignment pair;
    pair.k = z[0] == 1 ? 0 : (z[1] == 1 ? 1 : 2);
    pair.i = pair.k == 0 ? 1 : 0;
    pair.j = pair.k == 2 ? 1 : 2;
    return pair;
  }
  if (rule == SelectionRule::GhzRule && plus_count == 3)
    return PairAssignment{0, 1, 2};
  return std::nullopt;
}

bool membership_is_local(SelectionRule rule) {
  // membership[q][bit]: observed pair membership of qubit q when z_q = +1
  // (bit 1) or -1 (bit 0); -1 marks "not seen yet".
  int membership[3][2] = {{-1, -1}, {-1, -1}, {-1, -1}};
  for (int mask = 0; mask < 8; ++mask) {
    const std::array<int, 3> z = {mask & 4 ? 1 : -1, mask & 2 ? 1 : -1,
                                  mask & 1 ? 1 : -1};
    const auto pair = classify_trio(rule, z);
    if (!pair) continue;
    for (int q = 0; q < 3; ++q) {
      const int selected = (pair->i == q || pair->j == q) ? 1 : 0;
      int& seen = membership[q][z[q] == 1 ? 1 : 0];
      if (seen == -1)
        seen = selected;
      else if (seen != selected)
        return false;
    }
  }
  return true;
}

CounterfactualCorrelations counterfactual_correlations(
    const QuantumState& state) {
  const QuantumState w = scenario::make_w_state();
  if (state.fidelity(w) < 1.0 - tol::kFidelityGate)
    throw std::invalid_argument(
        "counterfactual_correlations: state is not the exact W state");

  // C(Z_i,Z_j): on every accepted pattern both pair qubits give -1, so the
  // correlation is the probability mass the selection captures.
  const OutcomeDistribution zzz =
      scenario::born_distribution(state, scenario::setup_from_string("ZZZ"));
  double c_zz = 0.0;
  for (std::size_t mask = 0; mask < zzz.size(); ++mask) {
    std::array<int, 3> z{};
    const std::vector<int> outcome = zzz.outcome_from_mask(mask);
    std::copy(outcome.begin(), outcome.end(), z.begin());
    const auto pair = classify_trio(SelectionRule::WMinusMinus, z);
    if (!pair) continue;
    c_zz += zzz.probability_by_mask(mask) * z[pair->i] * z[pair->j];
  }

  // C(Z_i,X_j) and C(X_i,Z_j): given z_q = -1 the other two X outcomes agree,
  // so X_j equals the unknown x_k and the correlation is -(2e-1)*x_k with e
  // the agreement probability (1 for the W state).
  double agree_minus = 0.0;
  for (int q = 0; q < 3; ++q) agree_minus += x_agreement_given_z(state, q, -1);
  agree_minus /= 3.0;
  const SignLinear c_mixed{0.0, -(2.0 * agree_minus - 1.0)};

  // C(X_i,X_j): given z_k = +1 the pair's X outcomes agree and disagree with
  // equal probability, so the conditional correlation 2f-1 vanishes.
  double agree_plus = 0.0;
  for (int q = 0; q < 3; ++q) agree_plus += x_agreement_given_z(state, q, 1);
  agree_plus /= 3.0;

  return {SignLinear::constant(c_zz), c_mixed, c_mixed,
          SignLinear::constant(2.0 * agree_plus - 1.0)};
}

CertaintyReport epr_certainty_checks(const QuantumState& state) {
  CertaintyReport report;
  const OutcomeDistribution zzz =
      scenario::born_distribution(state, scenario::setup_from_string("ZZZ"));

  // (a) For every pair of observed z values with mass, the third z outcome is
  // deterministic.
  report.z_determined_by_other_zs = true;
  for (int q = 0; q < 3 && report.z_determined_by_other_zs; ++q) {
    const std::size_t q_bit = std::size_t{1} << (2 - q);
    for (std::size_t others = 0; others < 8; ++others) {
      if (others & q_bit) continue;  // enumerate patterns with z_q = +1
      const double p_plus = zzz.probability_by_mask(others);
      const double p_minus = zzz.probability_by_mask(others | q_bit);
      if (p_plus + p_minus <= tol::kConditioningFloor) continue;
      if (std::min(p_plus, p_minus) > tol::kStructural) {
        report.z_determined_by_other_zs = false;
        break;
      }
    }
  }

  // (b) Given z_q = -1 the other two X outcomes agree with certainty.
  report.x_pair_match_given_z_minus = true;
  for (int q = 0; q < 3; ++q)
    if (std::abs(x_agreement_given_z(state, q, -1) - 1.0) > tol::kStructural)
      report.x_pair_match_given_z_minus = false;

  // (c) Given z_q = +1 the other two z outcomes are both -1 with certainty.
  report.other_zs_minus_given_z_plus = true;
  for (int q = 0; q < 3; ++q) {
    const double p = scenario::conditional_probability(
        zzz,
        [q](std::span<const int> o) {
          for (int r = 0; r < 3; ++r)
            if (r != q && o[r] != -1) return false;
          return true;
        },
        [q](std::span<const int> o) { return o[q] == 1; });
    if (std::abs(p - 1.0) > tol::kStructural)
      report.other_zs_minus_given_z_plus = false;
  }
  return report;
}

double pair_prob_zz(const OutcomeDistribution& dist_zzz) {
  require_setup(dist_zzz, "ZZZ");
  return dist_zzz.probability_by_mask(0b011) +
         dist_zzz.probability_by_mask(0b101) +
         dist_zzz.probability_by_mask(0b110) +
         dist_zzz.probability_by_mask(0b111);
}

double middle_upper_bound(const OutcomeDistribution& dist_zxx,
                          const OutcomeDistribution& dist_xzx,
                          const OutcomeDistribution& dist_xxz) {
  require_setup(dist_zxx, "ZXX");
  require_setup(dist_xzx, "XZX");
  require_setup(dist_xxz, "XXZ");
  return dist_zxx.probability_by_mask(0b101) +  // (-1, 1,-1)
         dist_zxx.probability_by_mask(0b110) +  // (-1,-1, 1)
         dist_xzx.probability_by_mask(0b011) +  // ( 1,-1,-1)
         dist_xzx.probability_by_mask(0b110) +  // (-1,-1, 1)
         dist_xxz.probability_by_mask(0b011) +  // ( 1,-1,-1)
         dist_xxz.probability_by_mask(0b101);   // (-1, 1,-1)
}

double pair_prob_xx_same(const OutcomeDistribution& dist_xxx) {
  require_setup(dist_xxx, "XXX");
  return dist_xxx.probability_by_mask(0b000) +
         dist_xxx.probability_by_mask(0b111);
}

double ch_lower_bound(const QuantumState& state) {
  if (state.num_qubits() != 3)
    throw std::invalid_argument("ch_lower_bound: state must have 3 qubits");
  const auto setups = scenario::experiment_setups();
  const OutcomeDistribution zzz = scenario::born_distribution(state, setups[0]);
  const OutcomeDistribution zxx = scenario::born_distribution(state, setups[1]);
  const OutcomeDistribution xzx = scenario::born_distribution(state, setups[2]);
  const OutcomeDistribution xxz = scenario::born_distribution(state, setups[3]);
  const OutcomeDistribution xxx = scenario::born_distribution(state, setups[4]);
  return pair_prob_zz(zzz) - middle_upper_bound(zxx, xzx, xxz) -
         pair_prob_xx_same(xxx);
}

}  // namespace wbell::selection
