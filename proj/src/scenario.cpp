#include "wbell/scenario.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace wbell::scenario {

namespace {

qmath::ComplexMatrix pauli_x() {
  return qmath::ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
}

qmath::ComplexMatrix pauli_z() {
  return qmath::ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
}

}  // namespace

QuantumState QuantumState::pure(std::size_t num_qubits,
                                qmath::ComplexVector amplitudes) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (amplitudes.dim() != dim)
    throw std::invalid_argument("QuantumState::pure: amplitude count mismatch");
  if (std::abs(amplitudes.norm() - 1.0) > tol::kStructural)
    throw std::invalid_argument("QuantumState::pure: state not normalized");
  QuantumState s;
  s.num_qubits_ = num_qubits;
  s.pure_ = true;
  s.amplitudes_ = std::move(amplitudes);
  return s;
}

QuantumState QuantumState::mixed(std::size_t num_qubits,
                                 qmath::ComplexMatrix density) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (density.rows() != dim || density.cols() != dim)
    throw std::invalid_argument("QuantumState::mixed: dimension mismatch");
  if (!density.is_hermitian())
    throw std::invalid_argument("QuantumState::mixed: density not Hermitian");
  if (std::abs(density.trace().real() - 1.0) > tol::kStructural)
    throw std::invalid_argument("QuantumState::mixed: trace is not 1");
  for (double eig : qmath::hermitian_eigenvalues(density))
    if (eig < -tol::kEigen)
      throw std::invalid_argument("QuantumState::mixed: negative eigenvalue");
  QuantumState s;
  s.num_qubits_ = num_qubits;
  s.pure_ = false;
  s.density_ = std::move(density);
  return s;
}

const qmath::ComplexVector& QuantumState::amplitudes() const {
  if (!pure_)
    throw std::logic_error("QuantumState: mixed state has no amplitude vector");
  return amplitudes_;
}

qmath::ComplexMatrix QuantumState::density() const {
  if (!pure_) return density_;
  qmath::ComplexMatrix rho(dim(), dim());
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = 0; c < dim(); ++c)
      rho.at(r, c) = amplitudes_[r] * std::conj(amplitudes_[c]);
  return rho;
}

double QuantumState::expectation(const qmath::ComplexMatrix& op) const {
  return pure_ ? qmath::expectation(amplitudes_, op)
               : qmath::expectation(density_, op);
}

double QuantumState::fidelity(const QuantumState& pure_reference) const {
  if (!pure_reference.is_pure())
    throw std::invalid_argument("fidelity: reference must be pure");
  if (dim() != pure_reference.dim())
    throw std::invalid_argument("fidelity: dimension mismatch");
  const qmath::ComplexVector& ref = pure_reference.amplitudes();
  if (pure_) return std::norm(ref.inner(amplitudes_));
  qmath::Complex value = 0.0;
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = 0; c < dim(); ++c)
      value += std::conj(ref[r]) * density_.at(r, c) * ref[c];
  return value.real();
}

SpinObservable SpinObservable::z() {
  return SpinObservable(Kind::Z, 0.0, SignConvention::PlusSinZ);
}

SpinObservable SpinObservable::x() {
  return SpinObservable(Kind::X, 0.0, SignConvention::PlusSinZ);
}

SpinObservable SpinObservable::plane(double angle, SignConvention convention) {
  return SpinObservable(Kind::PlaneAngle, angle, convention);
}

qmath::ComplexMatrix SpinObservable::realize() const {
  switch (kind_) {
    case Kind::Z:
      return pauli_z();
    case Kind::X:
      return pauli_x();
    case Kind::PlaneAngle: {
      const double zsign = convention_ == SignConvention::MinusSinZ ? -1.0 : 1.0;
      return pauli_x().scaled(std::cos(angle_)) +
             pauli_z().scaled(zsign * std::sin(angle_));
    }
  }
  throw std::logic_error("SpinObservable: unknown kind");
}

std::string SpinObservable::label() const {
  switch (kind_) {
    case Kind::Z:
      return "Z";
    case Kind::X:
      return "X";
    case Kind::PlaneAngle:
      return "plane(" + std::to_string(angle_) +
             (convention_ == SignConvention::MinusSinZ ? ",-)" : ",+)");
  }
  return "?";
}

MeasurementSetup setup_from_string(std::string_view letters) {
  MeasurementSetup setup;
  setup.reserve(letters.size());
  for (char c : letters) {
    if (c == 'Z' || c == 'z')
      setup.push_back(SpinObservable::z());
    else if (c == 'X' || c == 'x')
      setup.push_back(SpinObservable::x());
    else
      throw std::invalid_argument("setup_from_string: unknown letter");
  }
  return setup;
}

std::array<MeasurementSetup, 5> experiment_setups() {
  return {setup_from_string("ZZZ"), setup_from_string("ZXX"),
          setup_from_string("XZX"), setup_from_string("XXZ"),
          setup_from_string("XXX")};
}

std::array<std::string, 5> experiment_setup_names() {
  return {"ZZZ", "ZXX", "XZX", "XXZ", "XXX"};
}

OutcomeDistribution::OutcomeDistribution(MeasurementSetup setup,
                                         std::vector<double> probabilities)
    : setup_(std::move(setup)), probabilities_(std::move(probabilities)) {
  const std::size_t expected = std::size_t{1} << setup_.size();
  if (probabilities_.size() != expected)
    throw std::invalid_argument("OutcomeDistribution: size mismatch");
  double total = 0.0;
  for (double p : probabilities_) {
    if (p < -tol::kStructural)
      throw std::invalid_argument("OutcomeDistribution: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > tol::kStructural)
    throw std::invalid_argument("OutcomeDistribution: probabilities do not sum to 1");
}

double OutcomeDistribution::probability(std::span<const int> outcomes) const {
  if (outcomes.size() != setup_.size())
    throw std::invalid_argument("probability: outcome length mismatch");
  return probabilities_[mask_from_outcome(outcomes)];
}

double OutcomeDistribution::sum() const {
  double total = 0.0;
  for (double p : probabilities_) total += p;
  return total;
}

std::vector<int> OutcomeDistribution::outcome_from_mask(std::size_t mask) const {
  return scenario::outcome_from_mask(mask, setup_.size());
}

std::vector<int> outcome_from_mask(std::size_t mask, std::size_t num_qubits) {
  std::vector<int> outcome(num_qubits);
  for (std::size_t q = 0; q < num_qubits; ++q)
    outcome[q] = (mask >> (num_qubits - 1 - q)) & 1 ? -1 : 1;
  return outcome;
}

std::size_t OutcomeDistribution::mask_from_outcome(std::span<const int> outcomes) {
  std::size_t mask = 0;
  const std::size_t n = outcomes.size();
  for (std::size_t q = 0; q < n; ++q) {
    if (outcomes[q] != 1 && outcomes[q] != -1)
      throw std::invalid_argument("outcome entries must be +1 or -1");
    if (outcomes[q] == -1) mask |= std::size_t{1} << (n - 1 - q);
  }
  return mask;
}

QuantumState make_w_state() {
  qmath::ComplexVector amp(8);
  const double a = 1.0 / std::sqrt(3.0);
  amp[0b011] = a;  // |+-->
  amp[0b101] = a;  // |-+->
  amp[0b110] = a;  // |--+>
  return QuantumState::pure(3, std::move(amp));
}

QuantumState make_ghz_state() {
  qmath::ComplexVector amp(8);
  const double a = 1.0 / std::sqrt(2.0);
  amp[0b000] = a;  // |+++>
  amp[0b111] = a;  // |--->
  return QuantumState::pure(3, std::move(amp));
}

QuantumState white_noise(const QuantumState& state, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("white_noise: p must lie in [0, 1]");
  const std::size_t dim = state.dim();
  qmath::ComplexMatrix rho = state.density().scaled(1.0 - p);
  const double uniform = p / static_cast<double>(dim);
  for (std::size_t i = 0; i < dim; ++i) rho.at(i, i) += uniform;
  return QuantumState::mixed(state.num_qubits(), std::move(rho));
}

OutcomeDistribution born_distribution(const QuantumState& state,
                                      const MeasurementSetup& setup) {
  const std::size_t n = setup.size();
  if (n != state.num_qubits())
    throw std::invalid_argument("born_distribution: setup length mismatch");

  std::vector<qmath::ComplexMatrix> plus_projectors;
  std::vector<qmath::ComplexMatrix> minus_projectors;
  const qmath::ComplexMatrix half_id = qmath::ComplexMatrix::identity(2).scaled(0.5);
  for (const SpinObservable& obs : setup) {
    const qmath::ComplexMatrix half_obs = obs.realize().scaled(0.5);
    plus_projectors.push_back(half_id + half_obs);
    minus_projectors.push_back(half_id - half_obs);
  }

  const std::size_t outcomes = std::size_t{1} << n;
  std::vector<double> probs(outcomes);
  for (std::size_t mask = 0; mask < outcomes; ++mask) {
    qmath::ComplexMatrix projector = qmath::ComplexMatrix::identity(1);
    for (std::size_t q = 0; q < n; ++q) {
      const bool minus = (mask >> (n - 1 - q)) & 1;
      projector = qmath::kron(projector,
                              minus ? minus_projectors[q] : plus_projectors[q]);
    }
    probs[mask] = state.expectation(projector);
  }
  return OutcomeDistribution(setup, std::move(probs));
}

double correlation(const OutcomeDistribution& dist, std::span<const int> qubits) {
  const std::size_t n = dist.num_qubits();
  std::size_t member_mask = 0;
  for (int q : qubits) {
    if (q < 0 || static_cast<std::size_t>(q) >= n)
      throw std::invalid_argument("correlation: qubit index out of range");
    const std::size_t bit = std::size_t{1} << (n - 1 - static_cast<std::size_t>(q));
    if (member_mask & bit)
      throw std::invalid_argument("correlation: duplicate qubit index");
    member_mask |= bit;
  }
  double total = 0.0;
  for (std::size_t mask = 0; mask < dist.size(); ++mask) {
    const int parity = std::popcount(mask & member_mask) % 2 ? -1 : 1;
    total += parity * dist.probability_by_mask(mask);
  }
  return total;
}

double conditional_probability(
    const OutcomeDistribution& dist,
    const std::function<bool(std::span<const int>)>& event,
    const std::function<bool(std::span<const int>)>& given) {
  double joint = 0.0;
  double condition = 0.0;
  for (std::size_t mask = 0; mask < dist.size(); ++mask) {
    const std::vector<int> outcome = dist.outcome_from_mask(mask);
    if (!given(outcome)) continue;
    const double p = dist.probability_by_mask(mask);
    condition += p;
    if (event(outcome)) joint += p;
  }
  if (condition <= tol::kConditioningFloor)
    throw std::invalid_argument(
        "conditional_probability: conditioning event has no mass");
  return joint / condition;
}

}  // namespace wbell::scenario
