#include "gsp/graph.hpp"

#include <cmath>
#include <random>

namespace gsp {

std::tuple<Graph<double>, Matrix<double>>
random_geometric_with_points(const GeometricGraphConfig &cfg) {
  if (cfg.n < 2)
    throw InputError("geometric graph needs n >= 2");
  if (!(cfg.radius > 0.0))
    throw InputError("geometric graph radius must be positive");

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Index n = cfg.n;
  Matrix<double> points(n, 2);

  for (int attempt = 0; attempt <= kGeometricRedrawBudget; ++attempt) {
    for (Index i = 0; i < n; ++i) {
      points(i, 0) = unit(rng);
      points(i, 1) = unit(rng);
    }
    Matrix<double> w = Matrix<double>::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        if ((points.row(i) - points.row(j)).norm() <= cfg.radius) {
          w(i, j) = 1.0;
          w(j, i) = 1.0;
        }
      }
    }
    Graph<double> g(std::move(w));
    if (!cfg.require_connected || is_connected(g))
      return {std::move(g), points};
  }
  throw BudgetExceededError(
      "no connected geometric graph after " +
      std::to_string(kGeometricRedrawBudget) + " redraws (n = " +
      std::to_string(n) + ", radius = " + std::to_string(cfg.radius) + ")");
}

Graph<double> random_geometric(const GeometricGraphConfig &cfg) {
  return std::get<0>(random_geometric_with_points(cfg));
}

} // namespace gsp
