#include "wbell/inequalities.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wbell/optimize.hpp"
#include "wbell/rng.hpp"

namespace wbell::inequalities {

namespace {

using qmath::Complex;
using qmath::ComplexMatrix;
using qmath::ComplexVector;
using scenario::SignConvention;
using scenario::SpinObservable;

constexpr double kChLhvMin = -1.0;
constexpr double kChLhvMax = 0.0;

}  // namespace

ChshSpec ChshSpec::numeric(int m_sign, int n_sign) {
  if ((m_sign != 1 && m_sign != -1) || (n_sign != 1 && n_sign != -1))
    throw std::invalid_argument("ChshSpec: signs must be +1 or -1");
  return {SignLinear::constant(m_sign), SignLinear::constant(n_sign)};
}

SignLinear chsh_value(const SignLinear& corr_AB, const SignLinear& corr_Ab,
                      const SignLinear& corr_aB, const SignLinear& corr_ab,
                      const ChshSpec& spec) {
  return corr_AB - spec.m * corr_Ab - spec.n * corr_aB -
         spec.m * spec.n * corr_ab;
}

double ch_value(double p1, double p2, double p3, double p4) {
  for (double p : {p1, p2, p3, p4})
    if (!(p >= -tol::kStructural && p <= 1.0 + tol::kStructural))
      throw std::invalid_argument("ch_value: probability outside [0, 1]");
  return p1 - p2 - p3 - p4;
}

double map_chsh_bound_to_ch(double l) { return (l - 2.0) / 4.0; }

double joint_prob_from_correlations(int sign_i, int sign_j, double c_i,
                                    double c_j, double c_ij) {
  if ((sign_i != 1 && sign_i != -1) || (sign_j != 1 && sign_j != -1))
    throw std::invalid_argument("joint_prob_from_correlations: signs must be +1 or -1");
  for (double c : {c_i, c_j, c_ij})
    if (std::abs(c) > 1.0 + tol::kStructural)
      throw std::invalid_argument(
          "joint_prob_from_correlations: correlation outside [-1, 1]");
  return 0.25 * (1.0 + sign_i * c_i + sign_j * c_j + sign_i * sign_j * c_ij);
}

namespace {

bool outside_at_both_signs(const SignLinear& value, double lo, double hi) {
  const double slack = tol::kStructural;
  const auto outside = [&](double v) { return v < lo - slack || v > hi + slack; };
  return outside(value.at(1)) && outside(value.at(-1));
}

}  // namespace

InequalityReport chsh_report(const SignLinear& value) {
  InequalityReport report;
  report.value = value;
  report.lhv_min = -kChshLhvBound;
  report.lhv_max = kChshLhvBound;
  report.quantum_min = -kCirelsonBound;
  report.quantum_max = kCirelsonBound;
  report.violated_lhv = outside_at_both_signs(value, report.lhv_min, report.lhv_max);
  report.violated_cirelson =
      outside_at_both_signs(value, report.quantum_min, report.quantum_max);
  return report;
}

InequalityReport ch_report(double value) {
  InequalityReport report;
  report.value = SignLinear::constant(value);
  report.lhv_min = kChLhvMin;
  report.lhv_max = kChLhvMax;
  report.quantum_min = map_chsh_bound_to_ch(-kCirelsonBound);
  report.quantum_max = map_chsh_bound_to_ch(kCirelsonBound);
  report.violated_lhv =
      outside_at_both_signs(report.value, report.lhv_min, report.lhv_max);
  report.violated_cirelson =
      outside_at_both_signs(report.value, report.quantum_min, report.quantum_max);
  return report;
}

LhvChshResult lhv_enumerate_chsh() {
  LhvChshResult result;
  int slot = 0;
  for (int m = -1; m <= 1; m += 2) {
    for (int n = -1; n <= 1; n += 2) {
      LhvChshResult::PerSigns per;
      per.m = m;
      per.n = n;
      for (int bits = 0; bits < 16; ++bits) {
        const int A = bits & 1 ? 1 : -1;
        const int a = bits & 2 ? 1 : -1;
        const int B = bits & 4 ? 1 : -1;
        const int b = bits & 8 ? 1 : -1;
        const long value = A * B - m * A * b - n * a * B - m * n * a * b;
        const long magnitude = std::abs(value);
        if (magnitude > per.max_abs) {
          per.max_abs = magnitude;
          per.attain_count = 1;
        } else if (magnitude == per.max_abs) {
          ++per.attain_count;
        }
      }
      result.max_abs = std::max(result.max_abs, per.max_abs);
      result.per_signs[slot++] = per;
    }
  }
  return result;
}

LhvWSelectionResult lhv_enumerate_w_selection() {
  LhvWSelectionResult result;
  for (int plus_at = 0; plus_at < 3; ++plus_at) {
    for (int xbits = 0; xbits < 8; ++xbits) {
      WSelectionCase entry;
      for (int q = 0; q < 3; ++q) {
        entry.z[q] = q == plus_at ? 1 : -1;
        entry.x[q] = xbits & (1 << q) ? 1 : -1;
      }
      const auto pair =
          selection::classify_trio(selection::SelectionRule::WMinusMinus, entry.z);
      const int i = pair->i;
      const int j = pair->j;
      const int k = pair->k;
      entry.value = static_cast<long>(entry.z[i]) * entry.z[j] -
                    static_cast<long>(entry.x[k]) * entry.z[i] * entry.x[j] -
                    static_cast<long>(entry.x[k]) * entry.x[i] * entry.z[j] -
                    static_cast<long>(entry.x[i]) * entry.x[j];
      result.max_abs = std::max(result.max_abs, std::abs(entry.value));
      result.cases.push_back(entry);
    }
  }
  return result;
}

LhvChResult lhv_enumerate_ch() {
  LhvChResult result;
  result.min_times4 = 4;
  result.max_times4 = -4;
  for (int bits = 0; bits < 32; ++bits) {
    const int z_i = bits & 1 ? 1 : -1;
    const int x_i = bits & 2 ? 1 : -1;
    const int z_j = bits & 4 ? 1 : -1;
    const int x_j = bits & 8 ? 1 : -1;
    const int x_k = bits & 16 ? 1 : -1;
    const int p_zz = (z_i == -1 && z_j == -1) ? 1 : 0;
    const int p_zx = (z_i == -1 && x_j == -x_k) ? 1 : 0;
    const int p_xz = (x_i == -x_k && z_j == -1) ? 1 : 0;
    const int p_xx = (x_i == x_k && x_j == x_k) ? 1 : 0;
    const int value_times4 = 4 * (p_zz - p_zx - p_xz - p_xx);
    if (value_times4 > result.max_times4) {
      result.max_times4 = value_times4;
      result.attain_max_count = 1;
    } else if (value_times4 == result.max_times4) {
      ++result.attain_max_count;
    }
    if (value_times4 < result.min_times4) {
      result.min_times4 = value_times4;
      result.attain_min_count = 1;
    } else if (value_times4 == result.min_times4) {
      ++result.attain_min_count;
    }
  }
  return result;
}

ComplexMatrix bell_operator(const SpinObservable& obs_A,
                            const SpinObservable& obs_a,
                            const SpinObservable& obs_B,
                            const SpinObservable& obs_b,
                            const ChshSpec& spec) {
  if (!spec.is_numeric())
    throw std::invalid_argument("bell_operator: symbolic m, n not representable");
  const double m = spec.m.c0;
  const double n = spec.n.c0;
  const ComplexMatrix big_a = obs_A.realize();
  const ComplexMatrix small_a = obs_a.realize();
  const ComplexMatrix big_b = obs_B.realize();
  const ComplexMatrix small_b = obs_b.realize();
  return qmath::kron(big_a, big_b) + qmath::kron(big_a, small_b).scaled(-m) +
         qmath::kron(small_a, big_b).scaled(-n) +
         qmath::kron(small_a, small_b).scaled(-m * n);
}

namespace {

ComplexVector random_pure_state(Rng& rng, std::size_t dim) {
  ComplexVector v(dim);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    v[i] = Complex(rng.gaussian(), rng.gaussian());
    norm2 += std::norm(v[i]);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (std::size_t i = 0; i < dim; ++i) v[i] *= inv;
  return v;
}

ComplexVector random_product_state(Rng& rng) {
  const ComplexVector lhs = random_pure_state(rng, 2);
  const ComplexVector rhs = random_pure_state(rng, 2);
  ComplexVector v(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) v[2 * i + j] = lhs[i] * rhs[j];
  return v;
}

double spectral_norm(const ComplexMatrix& op) {
  double norm = 0.0;
  for (double eig : qmath::hermitian_eigenvalues(op))
    norm = std::max(norm, std::abs(eig));
  return norm;
}

ComplexMatrix operator_at(std::span<const double> angles, int m, int n) {
  return bell_operator(
      SpinObservable::plane(angles[0], SignConvention::PlusSinZ),
      SpinObservable::plane(angles[1], SignConvention::PlusSinZ),
      SpinObservable::plane(angles[2], SignConvention::PlusSinZ),
      SpinObservable::plane(angles[3], SignConvention::PlusSinZ),
      ChshSpec::numeric(m, n));
}

}  // namespace

TsirelsonResult tsirelson_max(std::uint64_t samples, std::uint64_t seed,
                              StateFamily family) {
  if (samples < 1)
    throw std::invalid_argument("tsirelson_max: samples must be >= 1");

  Rng rng(seed);
  const double pi = std::numbers::pi;
  TsirelsonResult result;
  result.samples = samples;

  std::array<double, 4> best_angles{};
  int best_m = -1;
  int best_n = -1;

  for (std::uint64_t draw = 0; draw < samples; ++draw) {
    std::array<double, 4> angles;
    for (double& angle : angles) angle = rng.uniform(-pi, pi);
    const int m = rng.sign();
    const int n = rng.sign();
    const ComplexVector state = family == StateFamily::Product
                                    ? random_product_state(rng)
                                    : random_pure_state(rng, 4);
    const double value =
        std::abs(qmath::expectation(state, operator_at(angles, m, n)));
    if (value > result.sampled_max) {
      result.sampled_max = value;
      best_angles = angles;
      best_m = m;
      best_n = n;
    }
  }

  if (family == StateFamily::Product) {
    result.refined_max = result.sampled_max;
    return result;
  }

  // Refine the spectral norm (the state-free maximum of |<B>|) over angles.
  const optimize::AngleBox box{
      {{-pi, pi}, {-pi, pi}, {-pi, pi}, {-pi, pi}}};
  const auto objective = [&](std::span<const double> angles) {
    return spectral_norm(operator_at(angles, best_m, best_n));
  };
  const optimize::MaximizeResult refined =
      optimize::nelder_mead(objective, box, best_angles, 0.3, 1e-9, 4000);
  result.refined_max = std::max(result.sampled_max, refined.value);
  return result;
}

std::vector<double> canonical_bell_spectrum() {
  const double pi = std::numbers::pi;
  const ComplexMatrix op = bell_operator(
      SpinObservable::plane(pi / 2, SignConvention::PlusSinZ),
      SpinObservable::plane(0.0, SignConvention::PlusSinZ),
      SpinObservable::plane(pi / 4, SignConvention::PlusSinZ),
      SpinObservable::plane(-pi / 4, SignConvention::PlusSinZ),
      ChshSpec::numeric(-1, -1));
  return qmath::hermitian_eigenvalues(op);
}

}  // namespace wbell::inequalities
