#pragma once

#include "gsp/common.hpp"
#include "gsp/graph.hpp"
#include "gsp/index_set.hpp"
#include "gsp/sampling.hpp"
#include "gsp/spectral.hpp"
#include "gsp/strategies.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace gsp {

inline constexpr const char *kVersion = "1.0.0";

/// Monte Carlo protocol: per trial draw a graph, take the lowest
/// `bandwidth` Laplacian frequencies as the band, and for every strategy
/// and sample budget select S, then compare analytic and empirical MSE.
struct ExperimentConfig {
  /// Geometric template; its seed is replaced per trial.
  GeometricGraphConfig graph;
  /// Fixed-graph mode: when set, every trial uses this graph.
  std::optional<Graph<double>> fixed_graph;
  /// Source path of fixed_graph, echoed in outputs.
  std::string graph_file;
  Index bandwidth = 5;
  std::vector<Index> sample_budgets{5, 6, 7, 8, 9, 10};
  std::vector<Strategy> strategies{kAllStrategies.begin(), kAllStrategies.end()};
  double noise_var = 1e-2;
  Index trials = 500;
  Index noise_draws_per_trial = 1;
  std::uint64_t base_seed = 0;

  Index vertex_count() const {
    return fixed_graph ? fixed_graph->size() : graph.n;
  }
  void validate() const;

  friend bool operator==(const ExperimentConfig &, const ExperimentConfig &) = default;
};

struct StrategyStats {
  Strategy strategy = Strategy::random;
  Index m = 0;
  Index trials_used = 0;
  Index nonrecoverable = 0;
  double mse_analytic_mean = 0;
  double mse_empirical_mean = 0;
  /// Sample standard deviation of the per-trial empirical MSE over sqrt(trials_used).
  double standard_error = 0;

  friend bool operator==(const StrategyStats &, const StrategyStats &) = default;
};

struct ExperimentResult {
  ExperimentConfig config;
  /// One row per (strategy, m), strategies outer, budgets inner, in config order.
  std::vector<StrategyStats> rows;
  std::string version = kVersion;
  double wall_clock_seconds = 0;

  const StrategyStats &at(Strategy s, Index m) const;
};

struct RunOptions {
  /// Worker threads for trials; results do not depend on it.
  unsigned threads = 1;
};

/// Seed of trial t: base_seed xor splitmix64(t).
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial);

/// Unit-norm band-limited signal: standard normal GFT coefficients on F.
Vector<double> generate_bandlimited_signal(const SpectralBasis<double> &basis,
                                           const FrequencySet &f,
                                           std::uint64_t seed);

/// D (s + n) with n i.i.d. N(0, noise_var).
Vector<double> noisy_observe(const Vector<double> &signal, const VertexSet &s,
                             double noise_var, std::mt19937_64 &rng);
Vector<double> noisy_observe(const Vector<double> &signal, const VertexSet &s,
                             double noise_var, std::uint64_t seed);

/// Mean of ||reconstruct(D(s + n)) - s||^2 over `draws` noise draws.
double empirical_mse(const SamplingScheme<double> &scheme,
                     const Vector<double> &signal, double noise_var,
                     Index draws, std::uint64_t seed,
                     const Tolerances &tol = Tolerances{});

ExperimentResult run_experiment(const ExperimentConfig &cfg,
                                const RunOptions &opts = RunOptions{},
                                const Tolerances &tol = Tolerances{});

/// Parses an experiment config; `graph_file` is resolved against base_dir.
ExperimentConfig parse_experiment_config(const nlohmann::json &j,
                                         const std::filesystem::path &base_dir = {});
nlohmann::json config_to_json(const ExperimentConfig &cfg);

/// strategy,m,trials_used,nonrecoverable,mse_analytic_mean,mse_empirical_mean,stderr
std::string results_csv(const ExperimentResult &r);
/// Config echo and version.
std::string results_json(const ExperimentResult &r);

} // namespace gsp
