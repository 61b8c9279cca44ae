#pragma once

#include "gsp/common.hpp"
#include "gsp/index_set.hpp"

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

namespace gsp {

template <typename Scalar> struct Edge {
  Index i;
  Index j;
  Scalar weight;
};

/// Undirected weighted graph held as a dense symmetric adjacency matrix.
template <typename Scalar> class Graph {
public:
  Graph() = default;

  explicit Graph(Matrix<Scalar> weights) : weights_(std::move(weights)) {
    const Index n = weights_.rows();
    if (n != weights_.cols())
      throw InputError("adjacency matrix must be square");
    if (n < 1)
      throw InputError("graph needs at least one vertex");
    for (Index j = 0; j < n; ++j) {
      if (weights_(j, j) != Scalar(0))
        throw InputError("self-loop at vertex " + std::to_string(j));
      for (Index i = 0; i < n; ++i) {
        if (!(weights_(i, j) >= Scalar(0)))
          throw InputError("negative or NaN weight on (" + std::to_string(i) +
                           ", " + std::to_string(j) + ")");
        if (weights_(i, j) != weights_(j, i))
          throw InputError("adjacency not symmetric at (" +
                           std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }

  /// Builds from an edge list; rejects self-loops, duplicates, bad indices
  /// and nonpositive weights.
  static Graph from_edges(Index n, const std::vector<Edge<Scalar>> &edges) {
    if (n < 1)
      throw InputError("graph needs at least one vertex");
    Matrix<Scalar> w = Matrix<Scalar>::Zero(n, n);
    for (const auto &e : edges) {
      if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n)
        throw InputError("edge (" + std::to_string(e.i) + ", " +
                         std::to_string(e.j) + ") out of range for n = " +
                         std::to_string(n));
      if (e.i == e.j)
        throw InputError("self-loop at vertex " + std::to_string(e.i));
      if (!(e.weight > Scalar(0)))
        throw InputError("edge (" + std::to_string(e.i) + ", " +
                         std::to_string(e.j) + ") has nonpositive weight");
      if (w(e.i, e.j) != Scalar(0))
        throw InputError("duplicate edge (" + std::to_string(e.i) + ", " +
                         std::to_string(e.j) + ")");
      w(e.i, e.j) = e.weight;
      w(e.j, e.i) = e.weight;
    }
    return Graph(std::move(w));
  }

  Index size() const noexcept { return weights_.rows(); }
  const Matrix<Scalar> &weights() const noexcept { return weights_; }
  Scalar weight(Index i, Index j) const { return weights_(i, j); }
  bool adjacent(Index i, Index j) const { return weights_(i, j) > Scalar(0); }

  /// Upper-triangle edges sorted by (i, j).
  std::vector<Edge<Scalar>> edges() const {
    std::vector<Edge<Scalar>> out;
    for (Index i = 0; i < size(); ++i)
      for (Index j = i + 1; j < size(); ++j)
        if (adjacent(i, j))
          out.push_back({i, j, weights_(i, j)});
    return out;
  }

  friend bool operator==(const Graph &a, const Graph &b) {
    return a.weights_.rows() == b.weights_.rows() && a.weights_ == b.weights_;
  }

private:
  Matrix<Scalar> weights_;
};

/// Combinatorial Laplacian K - A.
template <typename Scalar> Matrix<Scalar> laplacian(const Graph<Scalar> &g) {
  Matrix<Scalar> L = -g.weights();
  L.diagonal() = g.weights().rowwise().sum();
  return L;
}

/// Connected components, each sorted, ordered by smallest member.
template <typename Scalar>
std::vector<VertexSet> connected_components(const Graph<Scalar> &g) {
  const Index n = g.size();
  std::vector<Index> label(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<Index>> groups;
  std::vector<Index> stack;
  for (Index root = 0; root < n; ++root) {
    if (label[static_cast<std::size_t>(root)] >= 0)
      continue;
    const Index id = static_cast<Index>(groups.size());
    groups.emplace_back();
    stack.push_back(root);
    label[static_cast<std::size_t>(root)] = id;
    while (!stack.empty()) {
      const Index v = stack.back();
      stack.pop_back();
      groups.back().push_back(v);
      for (Index w = 0; w < n; ++w) {
        if (g.adjacent(v, w) && label[static_cast<std::size_t>(w)] < 0) {
          label[static_cast<std::size_t>(w)] = id;
          stack.push_back(w);
        }
      }
    }
  }
  std::vector<VertexSet> out;
  out.reserve(groups.size());
  for (auto &members : groups)
    out.emplace_back(n, std::move(members));
  return out;
}

template <typename Scalar> bool is_connected(const Graph<Scalar> &g) {
  return connected_components(g).size() == 1;
}

struct GeometricGraphConfig {
  Index n = 20;
  double radius = 0.34;
  std::uint64_t seed = 1;
  bool require_connected = true;

  friend bool operator==(const GeometricGraphConfig &,
                         const GeometricGraphConfig &) = default;
};

inline constexpr int kGeometricRedrawBudget = 10000;

/// Random geometric graph on the unit square with unit weights between
/// points at Euclidean distance <= radius.
///
/// With require_connected, whole point sets are redrawn from the same
/// stream until the graph is connected; gives up with BudgetExceededError
/// after kGeometricRedrawBudget redraws.
Graph<double> random_geometric(const GeometricGraphConfig &cfg);

/// Same as random_geometric, also returning the accepted point set (n x 2).
std::tuple<Graph<double>, Matrix<double>>
random_geometric_with_points(const GeometricGraphConfig &cfg);

} // namespace gsp
