#pragma once

#include "gsp/common.hpp"
#include "gsp/index_set.hpp"
#include "gsp/spectral.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gsp {

enum class Strategy { random, min_pinv, max_vol, max_fro, max_sig_min, exhaustive };

inline constexpr std::array<Strategy, 6> kAllStrategies = {
    Strategy::random,  Strategy::min_pinv,    Strategy::max_vol,
    Strategy::max_fro, Strategy::max_sig_min, Strategy::exhaustive};

/// Stable CLI identifier, e.g. "max-vol".
std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view name);
bool is_greedy(Strategy s);

inline constexpr double kExhaustiveBudget = 1e7;

struct SelectionRequest {
  const SpectralBasis<double> &basis;
  FrequencySet frequency_set;
  Index m = 1;
  Strategy strategy = Strategy::max_vol;
  std::uint64_t seed = 0;
};

struct SelectionResult {
  VertexSet vertex_set;
  /// Per-round objective of greedy strategies; empty otherwise.
  std::vector<double> objective_trace;
  /// Analytic MSE at unit noise variance, +inf if not recoverable.
  double mse = 0;
};

/// Analytic MSE at unit noise for (S, F), +inf when S does not satisfy the
/// sampling condition.
double unit_noise_mse(const SpectralBasis<double> &basis, const VertexSet &s,
                      const FrequencySet &f, const Tolerances &tol = Tolerances{});

SelectionResult select_random(const SelectionRequest &req,
                              const Tolerances &tol = Tolerances{});

/// Greedy minimisation of sum_i 1/sigma_i^2 over the selected columns of
/// U_F^T. While fewer than |F| columns are selected the score is
/// lexicographic: rank first, then the sum over nonzero sigma.
SelectionResult select_min_pinv(const SelectionRequest &req,
                                const Tolerances &tol = Tolerances{});

/// Greedy maximisation of the Gram (pseudo-)determinant of the selected
/// columns, ranked by rank first.
SelectionResult select_max_vol(const SelectionRequest &req,
                               const Tolerances &tol = Tolerances{});

/// The m columns of U_F^T with the largest norms.
SelectionResult select_max_fro(const SelectionRequest &req,
                               const Tolerances &tol = Tolerances{});

/// Greedy maximisation of the smallest nonzero singular value, ranked by
/// rank first.
SelectionResult select_max_sig_min(const SelectionRequest &req,
                                   const Tolerances &tol = Tolerances{});

/// Global minimiser of the unit-noise MSE over all m-subsets.
/// Throws BudgetExceededError when binomial(n, m) > kExhaustiveBudget.
SelectionResult select_exhaustive(const SelectionRequest &req,
                                  const Tolerances &tol = Tolerances{});

SelectionResult select(const SelectionRequest &req,
                       const Tolerances &tol = Tolerances{});

} // namespace gsp
