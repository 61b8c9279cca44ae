#pragma once

// Shared graphs, generators and independent oracles for the test suites.
// The oracles deliberately take the long way round (full n x n matrices,
// bitmask enumeration, pseudo-inverses) so they do not share code paths
// with the library routines they check.

#include "gsp/graph.hpp"
#include "gsp/sampling.hpp"
#include "gsp/spectral.hpp"

#include <doctest.h>

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace gsp::test {

inline Graph<double> path3() {
  return Graph<double>::from_edges(3, {{0, 1, 1.0}, {1, 2, 1.0}});
}

inline Graph<double> single_edge() { return Graph<double>::from_edges(2, {{0, 1, 1.0}}); }

inline Graph<double> two_disjoint_edges() {
  return Graph<double>::from_edges(4, {{0, 1, 1.0}, {2, 3, 1.0}});
}

inline Graph<double> edgeless(Index n) { return Graph<double>(Matrix<double>::Zero(n, n)); }

/// Erdos-Renyi graph with uniform (0.5, 2) weights.
inline Graph<double> random_weighted(std::mt19937_64 &rng, Index n, double p) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Edge<double>> edges;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (u(rng) < p)
        edges.push_back({i, j, 0.5 + 1.5 * u(rng)});
  return Graph<double>::from_edges(n, edges);
}

/// Connected random geometric graph of the experiment family.
inline Graph<double> geometric(std::uint64_t seed, Index n = 20, double radius = 0.34) {
  return random_geometric({n, radius, seed, true});
}

inline Vector<double> random_vector(std::mt19937_64 &rng, Index n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector<double> v(n);
  for (Index i = 0; i < n; ++i)
    v(i) = g(rng);
  return v;
}

inline std::vector<Index> random_subset(std::mt19937_64 &rng, Index n, Index k) {
  std::vector<Index> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), Index{0});
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(static_cast<std::size_t>(k));
  return all;
}

inline double max_abs(const Matrix<double> &m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// ---- oracles --------------------------------------------------------------

/// Union-find component count.
inline Index component_count_oracle(const Graph<double> &g) {
  std::vector<Index> parent(static_cast<std::size_t>(g.size()));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index x) {
    while (parent[static_cast<std::size_t>(x)] != x)
      x = parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  Index count = g.size();
  for (Index i = 0; i < g.size(); ++i)
    for (Index j = i + 1; j < g.size(); ++j)
      if (g.weight(i, j) > 0) {
        const Index a = find(i), b = find(j);
        if (a != b) {
          parent[static_cast<std::size_t>(a)] = b;
          --count;
        }
      }
  return count;
}

/// sigma_max(P Q) from the full matrix product.
inline double sigma_max_oracle(const Matrix<double> &p, const Matrix<double> &q) {
  Eigen::JacobiSVD<Matrix<double>> svd(p * q);
  return svd.singularValues()(0);
}

/// Eigenvalues of the full n x n matrix B D B, descending.
inline Vector<double> bdb_eigenvalues_oracle(const Matrix<double> &b, const Matrix<double> &d) {
  const Matrix<double> bdb = b * d * b;
  Eigen::SelfAdjointEigenSolver<Matrix<double>> eig(0.5 * (bdb + bdb.transpose()),
                                                    Eigen::EigenvaluesOnly);
  return eig.eigenvalues().reverse();
}

/// Unit-noise MSE from the full B D B spectrum; +inf when the |F|-th
/// eigenvalue vanishes.
inline double mse_oracle(const SpectralBasis<double> &basis, const std::vector<Index> &s,
                         const std::vector<Index> &f) {
  const Index n = basis.size();
  Matrix<double> uf(n, static_cast<Index>(f.size()));
  for (std::size_t k = 0; k < f.size(); ++k)
    uf.col(static_cast<Index>(k)) = basis.eigenvectors.col(f[k]);
  const Matrix<double> b = uf * uf.transpose();
  Matrix<double> d = Matrix<double>::Zero(n, n);
  for (Index i : s)
    d(i, i) = 1.0;
  const Vector<double> lam = bdb_eigenvalues_oracle(b, d);
  double total = 0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double l = lam(static_cast<Index>(k));
    if (l < 1e-8)
      return std::numeric_limits<double>::infinity();
    total += 1.0 / l;
  }
  return total;
}

/// Minimum unit-noise MSE over every m-subset, by bitmask enumeration.
inline double exhaustive_mse_oracle(const SpectralBasis<double> &basis, Index m,
                                    const std::vector<Index> &f) {
  const Index n = basis.size();
  double best = std::numeric_limits<double>::infinity();
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    if (__builtin_popcountl(mask) != m)
      continue;
    std::vector<Index> s;
    for (Index i = 0; i < n; ++i)
      if (mask & (1UL << i))
        s.push_back(i);
    best = std::min(best, mse_oracle(basis, s, f));
  }
  return best;
}

/// Least-squares recovery through the pseudo-inverse of G: coefficients
/// G^+ f_S on the band, then back to the vertex domain.
inline Vector<double> pinv_reconstruction_oracle(const SpectralBasis<double> &basis,
                                                 const std::vector<Index> &s,
                                                 const std::vector<Index> &f,
                                                 const Vector<double> &samples) {
  Matrix<double> g(static_cast<Index>(s.size()), static_cast<Index>(f.size()));
  Vector<double> fs(static_cast<Index>(s.size()));
  for (std::size_t r = 0; r < s.size(); ++r) {
    fs(static_cast<Index>(r)) = samples(s[r]);
    for (std::size_t c = 0; c < f.size(); ++c)
      g(static_cast<Index>(r), static_cast<Index>(c)) = basis.eigenvectors(s[r], f[c]);
  }
  const Matrix<double> pinv = g.completeOrthogonalDecomposition().pseudoInverse();
  const Vector<double> coeffs = pinv * fs;
  Vector<double> out = Vector<double>::Zero(basis.size());
  for (std::size_t c = 0; c < f.size(); ++c)
    out += coeffs(static_cast<Index>(c)) * basis.eigenvectors.col(f[c]);
  return out;
}

} // namespace gsp::test

namespace doctest {
template <typename Tag> struct StringMaker<gsp::IndexSet<Tag>> {
  static String convert(const gsp::IndexSet<Tag> &s) {
    std::string out = "{";
    for (gsp::Index i = 0; i < s.size(); ++i)
      out += (i ? "," : "") + std::to_string(s[i]);
    return (out + "}").c_str();
  }
};
} // namespace doctest
