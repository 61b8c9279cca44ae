#pragma once

#include "gsp/common.hpp"
#include "gsp/index_set.hpp"
#include "gsp/localization.hpp"
#include "gsp/log.hpp"
#include "gsp/spectral.hpp"

#include <cmath>

namespace gsp {

/// Sample locations S and band F together with the Slepian basis of
/// (B_F, D_S) and the recovery margin 1 - sigma_max(B Dbar).
template <typename Scalar> struct SamplingScheme {
  VertexSet vertex_set;
  FrequencySet frequency_set;
  SlepianBasis<Scalar> slepian;
  Scalar sigma_max_bdc = 1;
  Scalar condition_margin = 0;

  Index bandwidth() const noexcept { return frequency_set.size(); }

  bool recoverable(const Tolerances &tol = Tolerances{}) const {
    return condition_margin > Scalar(tol.recovery);
  }

  /// sigma_i^2, i < |F|, the concentrations entering reconstruction.
  auto band_concentrations() const {
    return slepian.concentrations.head(bandwidth());
  }
};

template <typename Scalar>
SamplingScheme<Scalar> build_scheme(const SpectralBasis<Scalar> &basis,
                                    const VertexSet &s, const FrequencySet &f,
                                    const Tolerances &tol = Tolerances{}) {
  const Index n = basis.size();
  s.require_universe(n);
  f.require_universe(n);
  const Projector<Scalar> band = band_projector(basis, f, tol);
  const Projector<Scalar> vertex = vertex_projector<Scalar>(n, s);

  SamplingScheme<Scalar> scheme;
  scheme.vertex_set = s;
  scheme.frequency_set = f;
  scheme.slepian = slepian_basis(band, vertex, tol);
  scheme.sigma_max_bdc = sigma_max(band, complement(vertex));
  scheme.condition_margin = Scalar(1) - scheme.sigma_max_bdc;

  if (scheme.recoverable(tol)) {
    if (s.size() < f.size())
      throw NumericalError("inconsistent scheme: margin " +
                           std::to_string(static_cast<double>(scheme.condition_margin)) +
                           " certified with |S| < |F|");
    if (scheme.condition_margin < Scalar(tol.near_singular_margin))
      logger().warn("sampling scheme is near-singular: margin {:.3e}, "
                    "smallest sigma^2 {:.3e}",
                    static_cast<double>(scheme.condition_margin),
                    static_cast<double>(scheme.band_concentrations().minCoeff()));
  }
  return scheme;
}

/// |S| x |F| matrix whose column c is eigenvector f[c] sampled on S.
template <typename Scalar>
Matrix<Scalar> g_matrix(const SpectralBasis<Scalar> &basis, const VertexSet &s,
                        const FrequencySet &f) {
  s.require_universe(basis.size());
  f.require_universe(basis.size());
  Matrix<Scalar> g(s.size(), f.size());
  for (Index r = 0; r < s.size(); ++r)
    for (Index c = 0; c < f.size(); ++c)
      g(r, c) = basis.eigenvectors(s[r], f[c]);
  return g;
}

namespace detail {

template <typename Scalar>
void require_recoverable(const SamplingScheme<Scalar> &scheme,
                         const Tolerances &tol) {
  if (!scheme.recoverable(tol))
    throw SamplingConditionError(static_cast<double>(scheme.sigma_max_bdc));
  const auto lam = scheme.band_concentrations();
  for (Index i = 0; i < lam.size(); ++i)
    if (lam(i) < Scalar(tol.ill_conditioned))
      throw NumericalError("ill-conditioned sampling scheme: sigma_" +
                           std::to_string(i + 1) + "^2 = " +
                           std::to_string(static_cast<double>(lam(i))));
}

} // namespace detail

/// Band-limited reconstruction sum_i (1/sigma_i^2) <D f, psi_i> psi_i over
/// the |F| most concentrated Slepian vectors. Entries of `sampled` outside
/// S are ignored.
template <typename Scalar, typename Derived>
Vector<Scalar> reconstruct(const SamplingScheme<Scalar> &scheme,
                           const Eigen::MatrixBase<Derived> &sampled,
                           const Tolerances &tol = Tolerances{}) {
  const Index n = scheme.slepian.size();
  if (sampled.size() != n)
    throw InputError("reconstruct: signal has " + std::to_string(sampled.size()) +
                     " entries, graph has " + std::to_string(n));
  detail::require_recoverable(scheme, tol);
  Vector<Scalar> masked = Vector<Scalar>::Zero(n);
  for (Index i : scheme.vertex_set)
    masked(i) = sampled(i);
  const Index k = scheme.bandwidth();
  const auto psi = scheme.slepian.vectors.leftCols(k);
  const Vector<Scalar> coeffs =
      (psi.transpose() * masked).cwiseQuotient(scheme.band_concentrations());
  return psi * coeffs;
}

/// Expected squared error under white noise: noise_var * sum_i 1/sigma_i^2.
template <typename Scalar>
Scalar analytic_mse(const SamplingScheme<Scalar> &scheme, Scalar noise_var,
                    const Tolerances &tol = Tolerances{}) {
  if (!(noise_var >= Scalar(0)))
    throw InputError("noise variance must be nonnegative");
  detail::require_recoverable(scheme, tol);
  return noise_var * scheme.band_concentrations().cwiseInverse().sum();
}

/// Expected squared error for arbitrary noise covariance C:
/// sum_i psi_i^T D C D psi_i / sigma_i^4.
template <typename Scalar, typename Derived>
Scalar general_mse(const SamplingScheme<Scalar> &scheme,
                   const Eigen::MatrixBase<Derived> &noise_cov,
                   const Tolerances &tol = Tolerances{}) {
  const Index n = scheme.slepian.size();
  if (noise_cov.rows() != n || noise_cov.cols() != n)
    throw InputError("general_mse: covariance must be " + std::to_string(n) +
                     " x " + std::to_string(n));
  const Matrix<Scalar> cov = noise_cov;
  const Scalar scale = std::max(Scalar(1), cov.cwiseAbs().maxCoeff());
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > Scalar(tol.psd) * scale)
    throw InputError("general_mse: covariance is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> eig(cov, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -Scalar(tol.psd) * scale)
    throw InputError("general_mse: covariance is not positive semidefinite");
  detail::require_recoverable(scheme, tol);

  const Index k = scheme.bandwidth();
  const Vector<Scalar> mask = scheme.vertex_set.template indicator<Scalar>();
  Scalar total = 0;
  for (Index i = 0; i < k; ++i) {
    const Vector<Scalar> dpsi = mask.cwiseProduct(scheme.slepian.vectors.col(i));
    const Scalar lam = scheme.slepian.concentrations(i);
    total += dpsi.dot(cov * dpsi) / (lam * lam);
  }
  return total;
}

} // namespace gsp
