#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wbell/qmath.hpp"

// States, single-qubit +/-1 observables in the x-z plane, measurement setups
// and exact Born-rule joint outcome distributions.
//
// Basis ordering convention (fixed for byte-stable output): |+> maps to bit 0
// and |-> to bit 1, with qubit 1 in the most significant position. The same
// convention indexes outcome tuples: outcome mask bit = 1 means the qubit
// gave -1.

namespace wbell::scenario {

/// Pure state vector or full density matrix over num_qubits qubits.
class QuantumState {
 public:
  static QuantumState pure(std::size_t num_qubits, qmath::ComplexVector amplitudes);
  static QuantumState mixed(std::size_t num_qubits, qmath::ComplexMatrix density);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return std::size_t{1} << num_qubits_; }
  bool is_pure() const { return pure_; }

  const qmath::ComplexVector& amplitudes() const;
  /// Density matrix; built from |psi><psi| on demand for pure states.
  qmath::ComplexMatrix density() const;

  double expectation(const qmath::ComplexMatrix& op) const;

  /// <psi|rho|psi> against a pure reference state.
  double fidelity(const QuantumState& pure_reference) const;

 private:
  QuantumState() = default;

  std::size_t num_qubits_ = 0;
  bool pure_ = true;
  qmath::ComplexVector amplitudes_;
  qmath::ComplexMatrix density_;
};

enum class SignConvention {
  MinusSinZ,  // cos(angle)*sigma_x - sin(angle)*sigma_z
  PlusSinZ,   // cos(angle)*sigma_x + sin(angle)*sigma_z
};

/// A +/-1-valued single-qubit spin observable: Z, X, or a direction in the
/// x-z plane.
class SpinObservable {
 public:
  enum class Kind { Z, X, PlaneAngle };

  static SpinObservable z();
  static SpinObservable x();
  static SpinObservable plane(double angle, SignConvention convention);

  Kind kind() const { return kind_; }
  double angle() const { return angle_; }
  SignConvention convention() const { return convention_; }

  /// The 2x2 Hermitian matrix with eigenvalues exactly {-1, +1}.
  qmath::ComplexMatrix realize() const;

  /// "Z", "X" or "plane(angle,+/-)".
  std::string label() const;

 private:
  SpinObservable(Kind kind, double angle, SignConvention convention)
      : kind_(kind), angle_(angle), convention_(convention) {}

  Kind kind_;
  double angle_;
  SignConvention convention_;
};

/// One observable per qubit.
using MeasurementSetup = std::vector<SpinObservable>;

/// Setup from a string of Z/X letters, e.g. "ZXX".
MeasurementSetup setup_from_string(std::string_view letters);

/// Outcome tuple (+1/-1 entries, qubit 1 first) for a mask under the fixed
/// bit convention.
std::vector<int> outcome_from_mask(std::size_t mask, std::size_t num_qubits);

/// The five setups the three-qubit experiment needs: ZZZ, ZXX, XZX, XXZ, XXX.
std::array<MeasurementSetup, 5> experiment_setups();
std::array<std::string, 5> experiment_setup_names();

/// Joint probabilities over outcome tuples in {-1,+1}^n for one setup.
class OutcomeDistribution {
 public:
  OutcomeDistribution(MeasurementSetup setup, std::vector<double> probabilities);

  std::size_t num_qubits() const { return setup_.size(); }
  std::size_t size() const { return probabilities_.size(); }
  const MeasurementSetup& setup() const { return setup_; }

  /// Probability of an outcome tuple (entries +1/-1, qubit 1 first).
  double probability(std::span<const int> outcomes) const;
  double probability_by_mask(std::size_t mask) const {
    return probabilities_[mask];
  }

  double sum() const;

  /// Outcome tuple for a mask under the fixed bit convention.
  std::vector<int> outcome_from_mask(std::size_t mask) const;
  static std::size_t mask_from_outcome(std::span<const int> outcomes);

 private:
  MeasurementSetup setup_;
  std::vector<double> probabilities_;
};

/// (|+-->+|-+->+|--+>)/sqrt(3).
QuantumState make_w_state();

/// (|+++>+|--->)/sqrt(2).
QuantumState make_ghz_state();

/// (1-p)*rho + p*I/2^n, always returned in density form.
QuantumState white_noise(const QuantumState& state, double p);

/// Exact Born-rule distribution: P(outcomes) is the expectation of the
/// tensor product of per-qubit projectors (I +/- O_q)/2.
OutcomeDistribution born_distribution(const QuantumState& state,
                                      const MeasurementSetup& setup);

/// Sum over outcomes of P * product of the listed qubits' results. A
/// singleton yields a mean, the empty set the total mass.
double correlation(const OutcomeDistribution& dist, std::span<const int> qubits);

/// P(event | given); throws if P(given) <= tol::kConditioningFloor.
double conditional_probability(const OutcomeDistribution& dist,
                               const std::function<bool(std::span<const int>)>& event,
                               const std::function<bool(std::span<const int>)>& given);

}  // namespace wbell::scenario
