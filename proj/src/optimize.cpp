#include "wbell/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "wbell/rng.hpp"

namespace wbell::optimize {

namespace {

using qmath::ComplexMatrix;
using qmath::ComplexVector;

std::vector<double> clamp_to_box(std::vector<double> point, const AngleBox& box) {
  for (std::size_t d = 0; d < box.dims(); ++d)
    point[d] = std::clamp(point[d], box.intervals[d].first,
                          box.intervals[d].second);
  return point;
}

double simplex_diameter(const std::vector<std::vector<double>>& vertices) {
  double diameter = 0.0;
  for (std::size_t a = 0; a + 1 < vertices.size(); ++a)
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      double dist2 = 0.0;
      for (std::size_t d = 0; d < vertices[a].size(); ++d) {
        const double diff = vertices[a][d] - vertices[b][d];
        dist2 += diff * diff;
      }
      diameter = std::max(diameter, std::sqrt(dist2));
    }
  return diameter;
}

}  // namespace

MaximizeResult nelder_mead(const Objective& objective, const AngleBox& box,
                           std::span<const double> start, double initial_step,
                           double tolerance, int max_iterations) {
  const std::size_t n = box.dims();
  if (start.size() != n)
    throw std::invalid_argument("nelder_mead: start dimension mismatch");

  std::vector<std::vector<double>> vertices;
  vertices.push_back(clamp_to_box({start.begin(), start.end()}, box));
  for (std::size_t d = 0; d < n; ++d) {
    std::vector<double> v = vertices.front();
    const double span = box.intervals[d].second - box.intervals[d].first;
    double step = std::min(initial_step, span);
    if (step == 0.0) step = initial_step;  // degenerate axis, clamp fixes it
    v[d] += (v[d] + step <= box.intervals[d].second) ? step : -step;
    vertices.push_back(clamp_to_box(std::move(v), box));
  }

  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = objective(vertices[i]);

  const auto order = [&] {
    std::vector<std::size_t> idx(n + 1);
    for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    std::vector<std::vector<double>> vs(n + 1);
    std::vector<double> fs(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      vs[i] = vertices[idx[i]];
      fs[i] = values[idx[i]];
    }
    vertices = std::move(vs);
    values = std::move(fs);
  };

  for (int iter = 0; iter < max_iterations; ++iter) {
    order();
    if (simplex_diameter(vertices) < tolerance) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t d = 0; d < n; ++d) centroid[d] += vertices[i][d] / n;

    const auto blend = [&](double factor) {
      std::vector<double> p(n);
      for (std::size_t d = 0; d < n; ++d)
        p[d] = centroid[d] + factor * (centroid[d] - vertices[n][d]);
      return clamp_to_box(std::move(p), box);
    };

    const std::vector<double> reflected = blend(1.0);
    const double f_reflected = objective(reflected);

    if (f_reflected > values[0]) {
      const std::vector<double> expanded = blend(2.0);
      const double f_expanded = objective(expanded);
      if (f_expanded > f_reflected) {
        vertices[n] = expanded;
        values[n] = f_expanded;
      } else {
        vertices[n] = reflected;
        values[n] = f_reflected;
      }
    } else if (f_reflected > values[n - 1]) {
      vertices[n] = reflected;
      values[n] = f_reflected;
    } else {
      const std::vector<double> contracted = blend(-0.5);
      const double f_contracted = objective(contracted);
      if (f_contracted > values[n]) {
        vertices[n] = contracted;
        values[n] = f_contracted;
      } else {
        for (std::size_t i = 1; i <= n; ++i) {  // shrink toward the best
          for (std::size_t d = 0; d < n; ++d)
            vertices[i][d] = vertices[0][d] + 0.5 * (vertices[i][d] - vertices[0][d]);
          values[i] = objective(vertices[i]);
        }
      }
    }
  }

  order();
  return {vertices[0], values[0], values[0]};
}

MaximizeResult maximize(const Objective& objective, const AngleBox& box,
                        int grid, double refine_tol, std::uint64_t seed) {
  const std::size_t n = box.dims();
  if (n == 0) throw std::invalid_argument("maximize: empty box");
  if (grid < 2) throw std::invalid_argument("maximize: grid must be >= 2");

  std::vector<double> best_point(n);
  double best_value = -std::numeric_limits<double>::infinity();
  double max_spacing = 0.0;

  std::vector<int> index(n, 0);
  std::vector<double> point(n);
  for (;;) {
    for (std::size_t d = 0; d < n; ++d) {
      const auto [lo, hi] = box.intervals[d];
      point[d] = lo + (hi - lo) * index[d] / (grid - 1);
    }
    const double value = objective(point);
    if (value > best_value) {
      best_value = value;
      best_point = point;
    }
    std::size_t d = 0;
    while (d < n && ++index[d] == grid) index[d++] = 0;
    if (d == n) break;
  }
  for (const auto& [lo, hi] : box.intervals)
    max_spacing = std::max(max_spacing, (hi - lo) / (grid - 1));

  const double grid_best = best_value;
  MaximizeResult result{best_point, best_value, grid_best};

  const auto refine_from = [&](std::span<const double> start, double step) {
    const MaximizeResult local =
        nelder_mead(objective, box, start, step, refine_tol);
    if (local.value > result.value) {
      result.argmax = local.argmax;
      result.value = local.value;
    }
  };

  refine_from(best_point, std::max(max_spacing, refine_tol));

  // A few extra seeded starts to escape grid-aligned ridges.
  Rng rng(seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<double> start(n);
    double step = refine_tol;
    for (std::size_t d = 0; d < n; ++d) {
      const auto [lo, hi] = box.intervals[d];
      start[d] = rng.uniform(lo, hi);
      step = std::max(step, (hi - lo) / 8.0);
    }
    refine_from(start, step);
  }

  result.best_grid_value = grid_best;
  return result;
}

namespace {

ComplexMatrix plus_projector() {
  return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}});
}

// Three-factor tensor product with `special` at `position` and `other`
// everywhere else.
ComplexMatrix place_at(int position, const ComplexMatrix& special,
                       const ComplexMatrix& other) {
  ComplexMatrix result = ComplexMatrix::identity(1);
  for (int q = 0; q < 3; ++q)
    result = qmath::kron(result, q == position ? special : other);
  return result;
}

ComplexVector minus_ket() { return ComplexVector{0.0, 1.0}; }

ComplexVector triplet_ket() {
  const double a = 1.0 / std::sqrt(2.0);
  return ComplexVector{0.0, a, a, 0.0};
}

}  // namespace

SymOperatorTerms sym_operator_terms(double alpha, double beta) {
  const ComplexMatrix obs_a =
      scenario::SpinObservable::plane(alpha, scenario::SignConvention::MinusSinZ)
          .realize();
  const ComplexMatrix obs_b =
      scenario::SpinObservable::plane(beta, scenario::SignConvention::PlusSinZ)
          .realize();
  const ComplexMatrix proj = plus_projector();
  const ComplexVector w = scenario::make_w_state().amplitudes();

  SymOperatorTerms terms;
  for (int k = 0; k < 3; ++k) {
    terms.pair_aa += qmath::expectation(w, place_at(k, proj, obs_a));
    terms.mixed_terms[k] = qmath::expectation(w, place_at(k, obs_a, obs_b));
    terms.pair_bb += qmath::expectation(w, place_at(k, proj, obs_b));
  }
  return terms;
}

double w_functional(EvaluationModel model, double alpha, double beta) {
  if (model == EvaluationModel::SymOperator)
    return sym_operator_terms(alpha, beta).total();

  const ComplexMatrix obs_a =
      scenario::SpinObservable::plane(alpha, scenario::SignConvention::MinusSinZ)
          .realize();
  const ComplexMatrix obs_b =
      scenario::SpinObservable::plane(beta, scenario::SignConvention::PlusSinZ)
          .realize();
  const double mean_a = qmath::expectation(minus_ket(), obs_a);
  const double mean_b = qmath::expectation(minus_ket(), obs_b);
  const double pair_bb =
      qmath::expectation(triplet_ket(), qmath::kron(obs_b, obs_b));
  return mean_a * mean_a - 2.0 * mean_a * pair_bb - mean_b * mean_b;
}

ProbeReport probe_paper_angles(EvaluationModel model, int grid,
                               double refine_tol, std::uint64_t seed) {
  ProbeReport report;
  report.model = model;
  report.canonical_value = w_functional(model, kCanonicalAlpha, kCanonicalBeta);
  report.value_at_reference =
      w_functional(model, kReferenceAlpha, kReferenceBeta);

  const double pi = std::numbers::pi;
  const AngleBox box{{{-pi, pi}, {-pi, pi}}};
  const MaximizeResult max = maximize(
      [model](std::span<const double> p) {
        return w_functional(model, p[0], p[1]);
      },
      box, grid, refine_tol, seed);
  report.box_maximum = max.value;
  report.box_argmax = {max.argmax[0], max.argmax[1]};
  report.gap_at_reference = std::abs(report.value_at_reference - report.target);
  report.gap_box_maximum = std::abs(report.box_maximum - report.target);
  return report;
}

double chsh_singlet_objective(std::span<const double> angles) {
  if (angles.size() != 4)
    throw std::invalid_argument("chsh_singlet_objective: need 4 angles");
  const double a = 1.0 / std::sqrt(2.0);
  const ComplexVector singlet{0.0, a, -a, 0.0};
  const auto observable = [](double angle) {
    return scenario::SpinObservable::plane(angle,
                                           scenario::SignConvention::PlusSinZ)
        .realize();
  };
  const ComplexMatrix obs_big_a = observable(angles[0]);
  const ComplexMatrix obs_small_a = observable(angles[1]);
  const ComplexMatrix obs_big_b = observable(angles[2]);
  const ComplexMatrix obs_small_b = observable(angles[3]);
  const auto corr = [&](const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    return qmath::expectation(singlet, qmath::kron(lhs, rhs));
  };
  return corr(obs_big_a, obs_big_b) + corr(obs_big_a, obs_small_b) +
         corr(obs_small_a, obs_big_b) - corr(obs_small_a, obs_small_b);
}

}  // namespace wbell::optimize
