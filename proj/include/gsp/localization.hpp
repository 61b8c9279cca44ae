#pragma once

#include "gsp/common.hpp"
#include "gsp/index_set.hpp"
#include "gsp/log.hpp"
#include "gsp/spectral.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

namespace gsp {

/// Eigenpairs of B D B, ordered by nonincreasing concentration.
///
/// Column i of `vectors` is psi_i; concentrations(i) = lambda_i = sigma_i^2,
/// the fraction of psi_i's energy that falls on the vertex set. The first
/// |F| columns span the band, the remaining ones its complement (lambda = 0).
template <typename Scalar> struct SlepianBasis {
  Matrix<Scalar> vectors;
  Vector<Scalar> concentrations;
  VertexSet vertex_set;
  FrequencySet frequency_set;

  Index size() const noexcept { return concentrations.size(); }
};

namespace detail {

template <typename Scalar>
void require_same_size(const Projector<Scalar> &p, const Projector<Scalar> &q) {
  if (p.size() != q.size())
    throw InputError("projector dimensions differ: " + std::to_string(p.size()) +
                     " vs " + std::to_string(q.size()));
}

template <typename Scalar> Scalar clamp_unit(Scalar v) {
  return std::clamp(v, Scalar(0), Scalar(1));
}

template <typename Scalar> Scalar safe_acos(Scalar v) {
  return std::acos(std::clamp(v, Scalar(-1), Scalar(1)));
}

template <typename Scalar> Scalar complement_norm(Scalar v) {
  return std::sqrt(std::max(Scalar(0), Scalar(1) - v * v));
}

} // namespace detail

/// Slepian-type basis maximally concentrated on D's vertex set among
/// signals band-limited by B.
///
/// Works in band coordinates: with B = U_F U_F^T, the nonzero spectrum of
/// B D B is that of the |F| x |F| matrix U_F^T D U_F, and psi = U_F v is
/// band-limited by construction.
template <typename Scalar>
SlepianBasis<Scalar> slepian_basis(const Projector<Scalar> &band,
                                   const Projector<Scalar> &vertex,
                                   const Tolerances &tol = Tolerances{}) {
  if (band.kind != ProjectorKind::band || vertex.kind != ProjectorKind::vertex)
    throw InputError("slepian_basis expects a band projector and a vertex projector");
  detail::require_same_size(band, vertex);
  const Index n = band.size();
  const Index k = band.rank();

  const Matrix<Scalar> cross = band.range.transpose() * vertex.range;
  Matrix<Scalar> gram = cross * cross.transpose();
  gram = Scalar(0.5) * (gram + gram.transpose()).eval();

  SlepianBasis<Scalar> out;
  out.vectors.resize(n, n);
  out.concentrations = Vector<Scalar>::Zero(n);
  if (k > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(gram);
    if (solver.info() != Eigen::Success)
      throw NumericalError("slepian_basis: eigensolver did not converge");
    const Matrix<Scalar> rotation = solver.eigenvectors().rowwise().reverse();
    out.concentrations.head(k) = solver.eigenvalues().reverse();
    out.vectors.leftCols(k) = band.range * rotation;
  }
  out.vectors.rightCols(n - k) = band.kernel;

  for (Index i = 0; i < k; ++i) {
    Scalar &lam = out.concentrations(i);
    const Scalar overshoot = std::max(lam - Scalar(1), -lam);
    if (overshoot > Scalar(tol.concentration_warn))
      logger().warn("slepian_basis: concentration {} outside [0, 1]",
                    static_cast<double>(lam));
    lam = detail::clamp_unit(lam);
  }
  detail::fix_column_signs(out.vectors);
  out.vertex_set = VertexSet(n, vertex.support);
  out.frequency_set = FrequencySet(n, band.support);
  return out;
}

/// Largest singular value of P Q, clamped to [0, 1].
template <typename Scalar>
Scalar sigma_max(const Projector<Scalar> &p, const Projector<Scalar> &q) {
  detail::require_same_size(p, q);
  if (p.rank() == 0 || q.rank() == 0)
    return Scalar(0);
  const Matrix<Scalar> cross = p.range.transpose() * q.range;
  Eigen::JacobiSVD<Matrix<Scalar>> svd(cross);
  return detail::clamp_unit(svd.singularValues()(0));
}

template <typename Scalar> struct PerfectLocalization {
  bool exists = false;
  Scalar top_concentration = 0;
  std::optional<Vector<Scalar>> witness;
};

/// Whether some nonzero signal is supported on D's vertex set and
/// band-limited by B, i.e. lambda_max(B D B) >= 1 - tolerance.
template <typename Scalar>
PerfectLocalization<Scalar>
perfectly_localized_exists(const Projector<Scalar> &band,
                           const Projector<Scalar> &vertex,
                           double tolerance = 1e-8) {
  if (!(tolerance > 0))
    throw InputError("perfect localization tolerance must be positive");
  const SlepianBasis<Scalar> sl = slepian_basis(band, vertex);
  PerfectLocalization<Scalar> out;
  out.top_concentration = sl.size() > 0 ? sl.concentrations(0) : Scalar(0);
  out.exists = sl.size() > 0 && band.rank() > 0 &&
               out.top_concentration >= Scalar(1) - Scalar(tolerance);
  if (out.exists)
    out.witness = sl.vectors.col(0);
  return out;
}

/// The four extreme singular values bounding the uncertainty region:
/// sigma_max(B D), sigma_max(B Dbar), sigma_max(Bbar D), sigma_max(Bbar Dbar).
template <typename Scalar> struct UncertaintyProfile {
  Scalar s_bd = 0;
  Scalar s_bdc = 0;
  Scalar s_bcd = 0;
  Scalar s_bcdc = 0;
};

/// Energy fractions (||D f||, ||B f||) of a unit-norm signal.
template <typename Scalar> struct UncertaintyPoint {
  Scalar alpha = 0;
  Scalar beta = 0;
};

template <typename Scalar>
UncertaintyProfile<Scalar> uncertainty_profile(const Projector<Scalar> &band,
                                               const Projector<Scalar> &vertex) {
  const Projector<Scalar> band_c = complement(band);
  const Projector<Scalar> vertex_c = complement(vertex);
  return {sigma_max(band, vertex), sigma_max(band, vertex_c),
          sigma_max(band_c, vertex), sigma_max(band_c, vertex_c)};
}

template <typename Scalar>
UncertaintyProfile<Scalar> uncertainty_profile(const SpectralBasis<Scalar> &basis,
                                               const VertexSet &s,
                                               const FrequencySet &f) {
  return uncertainty_profile(band_projector(basis, f),
                             vertex_projector<Scalar>(basis.size(), s));
}

/// Angle-space slack of each region constraint (left side minus right
/// side); a point is admissible when every slack is >= -tolerance.
template <typename Scalar>
std::array<Scalar, 4> region_slack(const UncertaintyProfile<Scalar> &p,
                                   const UncertaintyPoint<Scalar> &pt) {
  using detail::complement_norm;
  using detail::safe_acos;
  const Scalar a = safe_acos(pt.alpha);
  const Scalar b = safe_acos(pt.beta);
  const Scalar ac = safe_acos(complement_norm(pt.alpha));
  const Scalar bc = safe_acos(complement_norm(pt.beta));
  return {a + b - safe_acos(p.s_bd), ac + b - safe_acos(p.s_bdc),
          a + bc - safe_acos(p.s_bcd), ac + bc - safe_acos(p.s_bcdc)};
}

template <typename Scalar>
bool region_contains(const UncertaintyProfile<Scalar> &p,
                     const UncertaintyPoint<Scalar> &pt,
                     const Tolerances &tol = Tolerances{}) {
  const auto slack = region_slack(p, pt);
  bool inside = true;
  for (Scalar s : slack)
    inside = inside && s >= -Scalar(tol.angle);
  return inside;
}

namespace detail {

// Largest y with acos(x) + acos(y) >= acos(sigma); flat at 1 until x
// reaches sigma. Singular values within 1e-12 of 1 count as 1.
template <typename Scalar> Scalar corner_curve(Scalar x, Scalar sigma) {
  if (x <= sigma || sigma >= Scalar(1) - Scalar(1e-12))
    return Scalar(1);
  const Scalar y =
      x * sigma + std::sqrt(std::max(Scalar(0), (Scalar(1) - x * x) *
                                                    (Scalar(1) - sigma * sigma)));
  return clamp_unit(y);
}

template <typename Scalar> void require_fraction(Scalar alpha) {
  if (!(alpha >= Scalar(0) && alpha <= Scalar(1)))
    throw InputError("alpha must lie in [0, 1], got " +
                     std::to_string(static_cast<double>(alpha)));
}

} // namespace detail

/// Maximal beta on the upper-right boundary curve for a given alpha:
/// alpha*s + sqrt((1 - alpha^2)(1 - s^2)) with s = sigma_max(B D), and 1
/// for alpha <= s where the curve is not active.
template <typename Scalar>
Scalar boundary_beta(const UncertaintyProfile<Scalar> &p, Scalar alpha) {
  detail::require_fraction(alpha);
  return detail::corner_curve(alpha, p.s_bd);
}

/// The four corner curves of the region evaluated at one alpha.
template <typename Scalar> struct RegionBoundary {
  Scalar upper_right = 1;
  Scalar upper_left = 1;
  Scalar lower_right = 0;
  Scalar lower_left = 0;
};

template <typename Scalar>
RegionBoundary<Scalar> region_boundary(const UncertaintyProfile<Scalar> &p,
                                       Scalar alpha) {
  using detail::complement_norm;
  using detail::corner_curve;
  detail::require_fraction(alpha);
  const Scalar alpha_c = complement_norm(alpha);
  return {corner_curve(alpha, p.s_bd), corner_curve(alpha_c, p.s_bdc),
          complement_norm(corner_curve(alpha, p.s_bcd)),
          complement_norm(corner_curve(alpha_c, p.s_bcdc))};
}

/// Unit-norm signal on the upper-right boundary with alpha = beta =
/// sqrt((1 + s)/2), built from the top Slepian vector psi_1:
/// (psi_1 - D psi_1)/sqrt(2(1+s)) + sqrt((1+s)/(2 s^2)) D psi_1.
template <typename Scalar>
Vector<Scalar> max_concentration_vector(const SlepianBasis<Scalar> &sl,
                                        const Projector<Scalar> &vertex,
                                        const Tolerances &tol = Tolerances{}) {
  if (vertex.kind != ProjectorKind::vertex)
    throw InputError("max_concentration_vector expects a vertex projector");
  if (sl.size() != vertex.size())
    throw InputError("max_concentration_vector: dimension mismatch");
  const Scalar s = std::sqrt(sl.concentrations(0));
  if (!(s > Scalar(tol.positive_concentration)))
    throw NumericalError("max_concentration_vector: sigma_max(B D) = " +
                         std::to_string(static_cast<double>(s)) +
                         " leaves no concentrated direction");
  const Vector<Scalar> psi = sl.vectors.col(0);
  const Vector<Scalar> on = vertex.matrix.diagonal().cwiseProduct(psi);
  return (psi - on) / std::sqrt(Scalar(2) * (Scalar(1) + s)) +
         std::sqrt((Scalar(1) + s) / (Scalar(2) * s * s)) * on;
}

} // namespace gsp
