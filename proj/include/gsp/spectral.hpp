#pragma once

#include "gsp/common.hpp"
#include "gsp/index_set.hpp"
#include "gsp/log.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>
#include <vector>

namespace gsp {

/// Orthonormal Laplacian eigenbasis; column k of eigenvectors pairs with
/// eigenvalues(k), eigenvalues ascending.
template <typename Scalar> struct SpectralBasis {
  Vector<Scalar> eigenvalues;
  Matrix<Scalar> eigenvectors;

  Index size() const noexcept { return eigenvalues.size(); }
};

namespace detail {

/// Flips each column so its largest-magnitude entry is positive. Entries
/// within a relative 1e-12 of the maximum count as tied; the lowest index
/// wins.
template <typename Derived>
void fix_column_signs(Eigen::MatrixBase<Derived> &vectors) {
  using Scalar = typename Derived::Scalar;
  for (Index c = 0; c < vectors.cols(); ++c) {
    const Scalar peak = vectors.col(c).cwiseAbs().maxCoeff();
    if (peak == Scalar(0))
      continue;
    const Scalar cutoff = peak * (Scalar(1) - Scalar(1e-12));
    for (Index r = 0; r < vectors.rows(); ++r) {
      if (std::abs(vectors(r, c)) >= cutoff) {
        if (vectors(r, c) < Scalar(0))
          vectors.col(c) *= Scalar(-1);
        break;
      }
    }
  }
}

template <typename Scalar>
void require_size(Index got, Index expected, const char *what) {
  if (got != expected)
    throw InputError(std::string(what) + ": dimension " + std::to_string(got) +
                     " does not match " + std::to_string(expected));
}

} // namespace detail

/// Symmetric eigendecomposition with ascending eigenvalues and the
/// largest-entry-positive sign convention.
template <typename Derived>
SpectralBasis<typename Derived::Scalar>
eigendecompose(const Eigen::MatrixBase<Derived> &L,
               const Tolerances &tol = Tolerances{}) {
  using Scalar = typename Derived::Scalar;
  if (L.rows() != L.cols())
    throw InputError("eigendecompose: matrix must be square");
  const Scalar asym = L.rows() == 0
                          ? Scalar(0)
                          : (L - L.transpose()).cwiseAbs().maxCoeff();
  if (asym > Scalar(tol.symmetry))
    throw InputError("eigendecompose: matrix not symmetric (max |L - L^T| = " +
                     std::to_string(static_cast<double>(asym)) + ")");

  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(L.derived());
  if (solver.info() != Eigen::Success) {
    const double scale = static_cast<double>(L.cwiseAbs().maxCoeff());
    throw NumericalError("eigendecompose: solver did not converge (n = " +
                         std::to_string(L.rows()) +
                         ", max |entry| = " + std::to_string(scale) + ")");
  }

  SpectralBasis<Scalar> basis{solver.eigenvalues(), solver.eigenvectors()};
  for (Index k = 0; k < basis.eigenvalues.size(); ++k) {
    Scalar &lam = basis.eigenvalues(k);
    if (lam < Scalar(0)) {
      if (lam < -Scalar(tol.eigenvalue_floor))
        throw NumericalError("eigendecompose: eigenvalue " +
                             std::to_string(static_cast<double>(lam)) +
                             " below zero; matrix is not positive semidefinite");
      lam = Scalar(0);
    }
  }
  detail::fix_column_signs(basis.eigenvectors);
  return basis;
}

/// Graph Fourier transform U^T x.
template <typename Scalar, typename Derived>
Vector<Scalar> gft(const SpectralBasis<Scalar> &basis,
                   const Eigen::MatrixBase<Derived> &x) {
  detail::require_size<Scalar>(x.size(), basis.size(), "gft");
  return basis.eigenvectors.transpose() * x;
}

/// Inverse transform U xhat.
template <typename Scalar, typename Derived>
Vector<Scalar> igft(const SpectralBasis<Scalar> &basis,
                    const Eigen::MatrixBase<Derived> &xhat) {
  detail::require_size<Scalar>(xhat.size(), basis.size(), "igft");
  return basis.eigenvectors * xhat;
}

enum class ProjectorKind { vertex, band };

/// Orthogonal projector P = R R^T onto a vertex or frequency support.
///
/// `range` holds an orthonormal basis of range(P) and `kernel` one of its
/// orthogonal complement, so complements and products of projectors can
/// be evaluated without forming n x n products.
template <typename Scalar> struct Projector {
  ProjectorKind kind = ProjectorKind::vertex;
  Matrix<Scalar> matrix;
  std::vector<Index> support;
  Matrix<Scalar> range;
  Matrix<Scalar> kernel;

  Index size() const noexcept { return matrix.rows(); }
  Index rank() const noexcept { return range.cols(); }
};

namespace detail {

template <typename Scalar>
Projector<Scalar> make_projector(ProjectorKind kind, std::vector<Index> support,
                                 Matrix<Scalar> range, Matrix<Scalar> kernel) {
  Projector<Scalar> p;
  p.kind = kind;
  p.support = std::move(support);
  if (kind == ProjectorKind::vertex) {
    const Index n = range.rows();
    p.matrix = Matrix<Scalar>::Zero(n, n);
    for (Index i : p.support)
      p.matrix(i, i) = Scalar(1);
  } else {
    p.matrix = range * range.transpose();
  }
  p.range = std::move(range);
  p.kernel = std::move(kernel);
  return p;
}

} // namespace detail

/// Vertex-limiting projector Diag(1_S).
template <typename Scalar = double>
Projector<Scalar> vertex_projector(Index n, const VertexSet &s) {
  s.require_universe(n);
  const VertexSet rest = s.complement();
  Matrix<Scalar> range = Matrix<Scalar>::Zero(n, s.size());
  Matrix<Scalar> kernel = Matrix<Scalar>::Zero(n, rest.size());
  for (Index k = 0; k < s.size(); ++k)
    range(s[k], k) = Scalar(1);
  for (Index k = 0; k < rest.size(); ++k)
    kernel(rest[k], k) = Scalar(1);
  return detail::make_projector<Scalar>(ProjectorKind::vertex, s.members(),
                                        std::move(range), std::move(kernel));
}

/// True when F contains some but not all members of a cluster of
/// numerically equal Laplacian eigenvalues.
template <typename Scalar>
bool splits_degenerate_cluster(const SpectralBasis<Scalar> &basis,
                               const FrequencySet &f,
                               const Tolerances &tol = Tolerances{}) {
  const auto &lam = basis.eigenvalues;
  for (Index k = 0; k + 1 < lam.size(); ++k) {
    const Scalar gap = lam(k + 1) - lam(k);
    const Scalar scale = std::max(Scalar(1), std::abs(lam(k + 1)));
    if (gap <= Scalar(tol.degenerate_cluster) * scale &&
        f.contains(k) != f.contains(k + 1))
      return true;
  }
  return false;
}

/// Band-limiting projector U Sigma_F U^T.
template <typename Scalar>
Projector<Scalar> band_projector(const SpectralBasis<Scalar> &basis,
                                 const FrequencySet &f,
                                 const Tolerances &tol = Tolerances{}) {
  const Index n = basis.size();
  f.require_universe(n);
  if (splits_degenerate_cluster(basis, f, tol))
    logger().warn("frequency set splits a degenerate eigenvalue cluster; "
                  "the band projector depends on the solver's basis choice");
  const FrequencySet rest = f.complement();
  Matrix<Scalar> range(n, f.size());
  Matrix<Scalar> kernel(n, rest.size());
  for (Index k = 0; k < f.size(); ++k)
    range.col(k) = basis.eigenvectors.col(f[k]);
  for (Index k = 0; k < rest.size(); ++k)
    kernel.col(k) = basis.eigenvectors.col(rest[k]);
  return detail::make_projector<Scalar>(ProjectorKind::band, f.members(),
                                        std::move(range), std::move(kernel));
}

/// I - P, as a projector of the same kind on the complementary support.
template <typename Scalar>
Projector<Scalar> complement(const Projector<Scalar> &p) {
  const Index n = p.size();
  std::vector<Index> rest;
  for (Index i = 0, k = 0; i < n; ++i) {
    if (k < static_cast<Index>(p.support.size()) &&
        p.support[static_cast<std::size_t>(k)] == i)
      ++k;
    else
      rest.push_back(i);
  }
  return detail::make_projector<Scalar>(p.kind, std::move(rest), p.kernel,
                                        p.range);
}

} // namespace gsp
