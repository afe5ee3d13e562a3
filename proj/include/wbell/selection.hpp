#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "wbell/scenario.hpp"

// Post-selection of a qubit pair from each trio, the counterfactual
// correlations carrying the unknown sign x_k symbolically, the
// element-of-reality certainty checks, and the operational probability
// relations the five-setup experiment measures.

namespace wbell::selection {

/// c0 + c1*x, where x is an unknown sign in {-1, +1}. Products use x*x = 1.
struct SignLinear {
  double c0 = 0.0;
  double c1 = 0.0;

  static SignLinear constant(double value) { return {value, 0.0}; }
  static SignLinear symbol() { return {0.0, 1.0}; }

  double at(int sign) const { return c0 + c1 * static_cast<double>(sign); }
  double abs_max() const { return std::max(std::abs(at(1)), std::abs(at(-1))); }
  bool is_constant(double eps = 0.0) const { return std::abs(c1) <= eps; }

  SignLinear operator+(const SignLinear& r) const { return {c0 + r.c0, c1 + r.c1}; }
  SignLinear operator-(const SignLinear& r) const { return {c0 - r.c0, c1 - r.c1}; }
  SignLinear operator-() const { return {-c0, -c1}; }
  SignLinear operator*(const SignLinear& r) const {
    return {c0 * r.c0 + c1 * r.c1, c0 * r.c1 + c1 * r.c0};
  }
  SignLinear operator*(double f) const { return {c0 * f, c1 * f}; }

  /// "c0 + c1*x_k" with plain signs, e.g. "0 - 1*x_k".
  std::string to_string() const;
};

enum class SelectionRule {
  WMinusMinus,  // pair = the two qubits whose sigma_z would have given -1
  GhzRule,      // same, plus (+1,+1,+1) selects the fixed pair {qubit 0, qubit 1}
};

/// Distinct qubit indices (0-based): i, j form the selected pair, k is the
/// remaining qubit.
struct PairAssignment {
  int i = 0;
  int j = 0;
  int k = 0;
};

/// Pair assignment for a sigma_z outcome pattern, or nullopt when the rule
/// does not accept the pattern.
std::optional<PairAssignment> classify_trio(SelectionRule rule,
                                            std::array<int, 3> z);

/// True iff, over all accepted patterns, membership of qubit q in the pair is
/// a function of z_q alone. Checked exhaustively over the 8 patterns.
bool membership_is_local(SelectionRule rule);

/// The four subensemble correlations with x_k symbolic.
struct CounterfactualCorrelations {
  SignLinear c_zz;  // C(Z_i, Z_j)
  SignLinear c_zx;  // C(Z_i, X_j)
  SignLinear c_xz;  // C(X_i, Z_j)
  SignLinear c_xx;  // C(X_i, X_j)
};

/// Derives the correlations from the state's exact distributions: C(Z_i,Z_j)
/// from the all-Z distribution, C(Z_i,X_j) and C(X_i,Z_j) from the perfect
/// X-agreement given z_q = -1, and C(X_i,X_j) from the balanced conditionals
/// given z_q = +1. Throws unless the state has W fidelity above
/// 1 - tol::kFidelityGate; the chain needs the exact perfect correlations.
CounterfactualCorrelations counterfactual_correlations(
    const scenario::QuantumState& state);

/// Element-of-reality checks, each computed from exact distributions.
struct CertaintyReport {
  // Any qubit's z outcome is determined by the other two z outcomes.
  bool z_determined_by_other_zs = false;
  // Given z_q = -1, the other two X outcomes agree with probability 1.
  bool x_pair_match_given_z_minus = false;
  // Given z_q = +1, the other two z outcomes are -1 with probability 1.
  bool other_zs_minus_given_z_plus = false;

  bool all() const {
    return z_determined_by_other_zs && x_pair_match_given_z_minus &&
           other_zs_minus_given_z_plus;
  }
};

CertaintyReport epr_certainty_checks(const scenario::QuantumState& state);

/// P(1,-1,-1) + P(-1,1,-1) + P(-1,-1,1) + P(-1,-1,-1) from the all-Z setup:
/// the probability that the selected pair would both give -1 for sigma_z.
double pair_prob_zz(const scenario::OutcomeDistribution& dist_zzz);

/// The six-term sum over the ZXX, XZX and XXZ setups that upper-bounds each
/// of the two mixed pair probabilities.
double middle_upper_bound(const scenario::OutcomeDistribution& dist_zxx,
                          const scenario::OutcomeDistribution& dist_xzx,
                          const scenario::OutcomeDistribution& dist_xxz);

/// P(1,1,1) + P(-1,-1,-1) from the all-X setup.
double pair_prob_xx_same(const scenario::OutcomeDistribution& dist_xxx);

/// pair_prob_zz - middle_upper_bound - pair_prob_xx_same from the state's
/// exact distributions; the operational test statistic with both middle
/// probabilities replaced by their common measurable upper bound.
double ch_lower_bound(const scenario::QuantumState& state);

}  // namespace wbell::selection
