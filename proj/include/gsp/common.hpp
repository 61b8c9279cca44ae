#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace gsp {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (files, sets, dimensions, configs).
class InputError : public Error {
public:
  using Error::Error;
};

/// Numerical failure or a violated mathematical condition.
class NumericalError : public Error {
public:
  using Error::Error;
};

/// Recovery condition ||B Dbar||_2 < 1 does not hold for a sampling scheme.
class SamplingConditionError : public NumericalError {
public:
  explicit SamplingConditionError(double sigma_bdc);
  double sigma_max_bdc() const noexcept { return sigma_; }

private:
  double sigma_;
};

/// A retry or enumeration budget was exhausted.
class BudgetExceededError : public InputError {
public:
  using InputError::InputError;
};

/// Numerical thresholds shared by every module.
struct Tolerances {
  double symmetry = 1e-10;          // max |L - L^T| accepted by eigendecompose
  double eigenvalue_floor = 1e-9;   // Laplacian eigenvalues >= -floor are clamped to 0
  double concentration_clamp = 1e-10;
  double concentration_warn = 1e-8; // clamp overshoot above this is reported
  double positive_concentration = 1e-9;
  double recovery = 1e-8;           // margin must exceed this to reconstruct
  double near_singular_margin = 1e-4;
  double ill_conditioned = 1e-12;   // smallest usable sigma_i^2 in reconstruction
  double localization = 1e-8;
  double angle = 1e-12;
  double rank = 1e-12;              // eigenvalues of Gram matrices above this are nonzero
  double psd = 1e-10;
  double degenerate_cluster = 1e-9; // Laplacian eigenvalues closer than this are tied
  double tie_relative = 1e-13;      // relative gap below which selection scores tie

  static Tolerances standard() { return {}; }
  static Tolerances strict() {
    Tolerances t;
    t.symmetry = 1e-12;
    t.psd = 1e-12;
    t.concentration_warn = 1e-10;
    return t;
  }
  static Tolerances from_profile(const std::string &name);
};

} // namespace gsp
