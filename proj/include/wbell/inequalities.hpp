#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "wbell/selection.hpp"

// CHSH and CH functionals, the bound map l -> (l-2)/4, the
// correlation-to-probability expansion, exact-integer enumerations over
// deterministic local strategies, and the Bell-operator route to the
// 2*sqrt(2) quantum ceiling.

namespace wbell::inequalities {

using selection::SignLinear;

/// The signs m, n of the CHSH combination. Either numeric (+1/-1) or the
/// symbolic unknown x_k shared by both.
struct ChshSpec {
  SignLinear m;
  SignLinear n;

  static ChshSpec numeric(int m_sign, int n_sign);
  /// m = n = x_k.
  static ChshSpec symbolic_xk() { return {SignLinear::symbol(), SignLinear::symbol()}; }

  bool is_numeric() const { return m.is_constant() && n.is_constant(); }
};

/// C(A,B) - m*C(A,b) - n*C(a,B) - m*n*C(a,b) in the sign algebra (x_k^2 = 1).
SignLinear chsh_value(const SignLinear& corr_AB, const SignLinear& corr_Ab,
                      const SignLinear& corr_aB, const SignLinear& corr_ab,
                      const ChshSpec& spec);

/// P1 - P2 - P3 - P4; throws on probabilities outside [0, 1].
double ch_value(double p1, double p2, double p3, double p4);

/// (l - 2) / 4: CHSH bounds map onto CH bounds.
double map_chsh_bound_to_ch(double l);

/// (1/4) * [1 + s_i*C_i + s_j*C_j + s_i*s_j*C_ij]; throws when a correlation
/// leaves [-1, 1].
double joint_prob_from_correlations(int sign_i, int sign_j, double c_i,
                                    double c_j, double c_ij);

/// A value against its local-realistic interval and the quantum interval;
/// violation flags hold at both x_k signs.
struct InequalityReport {
  SignLinear value;
  double lhv_min = 0.0;
  double lhv_max = 0.0;
  double quantum_min = 0.0;
  double quantum_max = 0.0;
  bool violated_lhv = false;
  bool violated_cirelson = false;
};

InequalityReport chsh_report(const SignLinear& value);
InequalityReport ch_report(double value);

/// CHSH over all 16 assignments (A,a,B,b) in {-1,1}^4 and all 4 numeric
/// (m,n); exact integers.
struct LhvChshResult {
  long max_abs = 0;
  struct PerSigns {
    int m = 0;
    int n = 0;
    long max_abs = 0;
    long attain_count = 0;  // assignments reaching max_abs in magnitude
  };
  std::array<PerSigns, 4> per_signs{};
};

LhvChshResult lhv_enumerate_chsh();

/// The 24 local-realistic trios with exactly one z = +1, pushed through the
/// WMinusMinus rule into z_i*z_j - x_k*z_i*x_j - x_k*x_i*z_j - x_i*x_j.
struct WSelectionCase {
  std::array<int, 3> z{};
  std::array<int, 3> x{};
  long value = 0;
};

struct LhvWSelectionResult {
  long max_abs = 0;
  std::vector<WSelectionCase> cases;  // all 24, in enumeration order
};

LhvWSelectionResult lhv_enumerate_w_selection();

/// CH combination over all 32 deterministic strategies (z_i, x_i, z_j, x_j,
/// x_k); probabilities are 0/1 indicators, values exact quarters.
struct LhvChResult {
  int min_times4 = 0;
  int max_times4 = 0;
  long attain_max_count = 0;
  long attain_min_count = 0;
  double min() const { return min_times4 / 4.0; }
  double max() const { return max_times4 / 4.0; }
};

LhvChResult lhv_enumerate_ch();

/// A(x)B - m*A(x)b - n*a(x)B - m*n*a(x)b as a 4x4 Hermitian matrix. The spec
/// must be numeric.
qmath::ComplexMatrix bell_operator(const scenario::SpinObservable& obs_A,
                                   const scenario::SpinObservable& obs_a,
                                   const scenario::SpinObservable& obs_B,
                                   const scenario::SpinObservable& obs_b,
                                   const ChshSpec& spec);

enum class StateFamily { AnyPure, Product };

struct TsirelsonResult {
  double sampled_max = 0.0;  // best |<B>| over the random draws
  double refined_max = 0.0;  // after local refinement of the spectral norm
  std::uint64_t samples = 0;
};

/// Random x-z-plane angles and random two-qubit pure states, |<B>| tracked
/// over `samples` draws, then (for AnyPure) Nelder-Mead refinement of the
/// spectral norm from the best angles. Values never exceed 2*sqrt(2) up to
/// tol::kCirelsonSlack; the refined maximum reaches it to 1e-6.
TsirelsonResult tsirelson_max(std::uint64_t samples, std::uint64_t seed,
                              StateFamily family = StateFamily::AnyPure);

/// Spectrum of the Bell operator at the canonical anticommuting angles:
/// {-2*sqrt(2), 0, 0, 2*sqrt(2)}.
std::vector<double> canonical_bell_spectrum();

inline constexpr double kChshLhvBound = 2.0;
inline constexpr double kCirelsonBound = 2.8284271247461903;  // 2*sqrt(2)

}  // namespace wbell::inequalities
