#include "gsp/experiments.hpp"
#include "gsp/io.hpp"
#include "gsp/log.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

namespace gsp {

using nlohmann::json;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                     std::uint64_t c = 0) {
  std::uint64_t h = splitmix64(seed ^ splitmix64(a));
  h = splitmix64(h ^ splitmix64(b + 0x51ed27ULL));
  return splitmix64(h ^ splitmix64(c + 0x2545f491ULL));
}

enum Stream : std::uint64_t { kSignal = 1, kRandomSelection = 2, kNoise = 3 };

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0;
  double comp_ = 0;
};

struct Instance {
  bool recoverable = false;
  double analytic = 0;
  double empirical = 0;
};

using TrialOutcome = std::vector<Instance>; // strategies outer, budgets inner

TrialOutcome run_trial(const ExperimentConfig &cfg, Index t, const Tolerances &tol) {
  const std::size_t cells = cfg.strategies.size() * cfg.sample_budgets.size();
  TrialOutcome out(cells);
  const std::uint64_t seed = trial_seed(cfg.base_seed, static_cast<std::uint64_t>(t));

  Graph<double> g;
  SpectralBasis<double> basis;
  try {
    if (cfg.fixed_graph) {
      g = *cfg.fixed_graph;
    } else {
      GeometricGraphConfig gc = cfg.graph;
      gc.seed = seed;
      g = random_geometric(gc);
    }
    basis = eigendecompose(laplacian(g), tol);
  } catch (const Error &e) {
    logger().warn("trial {}: {}", t, e.what());
    return out;
  }

  const FrequencySet band = FrequencySet::first(cfg.bandwidth, basis.size());
  const Vector<double> signal =
      generate_bandlimited_signal(basis, band, derive(seed, kSignal));

  std::size_t cell = 0;
  for (std::size_t si = 0; si < cfg.strategies.size(); ++si) {
    for (Index m : cfg.sample_budgets) {
      Instance &inst = out[cell++];
      try {
        const SelectionRequest req{basis, band, m, cfg.strategies[si],
                                   derive(seed, kRandomSelection,
                                          static_cast<std::uint64_t>(m))};
        const SelectionResult sel = select(req, tol);
        const auto scheme = build_scheme(basis, sel.vertex_set, band, tol);
        if (!scheme.recoverable(tol))
          continue;
        inst.analytic = analytic_mse(scheme, cfg.noise_var, tol);
        inst.empirical = empirical_mse(
            scheme, signal, cfg.noise_var, cfg.noise_draws_per_trial,
            derive(seed, kNoise, si, static_cast<std::uint64_t>(m)), tol);
        inst.recoverable = std::isfinite(inst.analytic) && std::isfinite(inst.empirical);
      } catch (const Error &e) {
        logger().debug("trial {} {} m={}: {}", t, to_string(cfg.strategies[si]), m,
                       e.what());
        inst = Instance{};
      }
    }
  }
  return out;
}

} // namespace

void ExperimentConfig::validate() const {
  const Index n = vertex_count();
  if (!fixed_graph) {
    if (graph.n < 2)
      throw InputError("experiment: graph n must be >= 2");
    if (!(graph.radius > 0.0))
      throw InputError("experiment: graph radius must be positive");
  }
  if (bandwidth < 1 || bandwidth > n)
    throw InputError("experiment: bandwidth must lie in [1, n]");
  if (sample_budgets.empty())
    throw InputError("experiment: no sample budgets");
  for (Index m : sample_budgets)
    if (m < 1 || m > n)
      throw InputError("experiment: sample budget " + std::to_string(m) +
                       " outside [1, " + std::to_string(n) + "]");
  if (strategies.empty())
    throw InputError("experiment: no strategies");
  if (!(noise_var > 0.0))
    throw InputError("experiment: noise_var must be positive");
  if (trials < 1)
    throw InputError("experiment: trials must be >= 1");
  if (noise_draws_per_trial < 1)
    throw InputError("experiment: noise_draws_per_trial must be >= 1");
}

const StrategyStats &ExperimentResult::at(Strategy s, Index m) const {
  for (const auto &row : rows)
    if (row.strategy == s && row.m == m)
      return row;
  throw InputError("no result row for " + std::string(to_string(s)) + " m=" +
                   std::to_string(m));
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial) {
  return base_seed ^ splitmix64(trial);
}

Vector<double> generate_bandlimited_signal(const SpectralBasis<double> &basis,
                                           const FrequencySet &f,
                                           std::uint64_t seed) {
  f.require_universe(basis.size());
  if (f.empty())
    throw InputError("cannot draw a band-limited signal on an empty band");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector<double> coeffs = Vector<double>::Zero(basis.size());
  for (Index k : f)
    coeffs(k) = normal(rng);
  Vector<double> s = igft(basis, coeffs);
  return s / s.norm();
}

Vector<double> noisy_observe(const Vector<double> &signal, const VertexSet &s,
                             double noise_var, std::mt19937_64 &rng) {
  s.require_universe(signal.size());
  if (!(noise_var >= 0.0))
    throw InputError("noise variance must be nonnegative");
  Vector<double> noise = Vector<double>::Zero(signal.size());
  if (noise_var > 0.0) {
    std::normal_distribution<double> normal(0.0, std::sqrt(noise_var));
    for (Index i = 0; i < noise.size(); ++i)
      noise(i) = normal(rng);
  }
  Vector<double> r = Vector<double>::Zero(signal.size());
  for (Index i : s)
    r(i) = signal(i) + noise(i);
  return r;
}

Vector<double> noisy_observe(const Vector<double> &signal, const VertexSet &s,
                             double noise_var, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return noisy_observe(signal, s, noise_var, rng);
}

double empirical_mse(const SamplingScheme<double> &scheme,
                     const Vector<double> &signal, double noise_var, Index draws,
                     std::uint64_t seed, const Tolerances &tol) {
  if (draws < 1)
    throw InputError("empirical_mse needs at least one draw");
  std::mt19937_64 rng(seed);
  CompensatedSum total;
  for (Index d = 0; d < draws; ++d) {
    const Vector<double> r = noisy_observe(signal, scheme.vertex_set, noise_var, rng);
    total.add((reconstruct(scheme, r, tol) - signal).squaredNorm());
  }
  return total.value() / static_cast<double>(draws);
}

ExperimentResult run_experiment(const ExperimentConfig &cfg, const RunOptions &opts,
                                const Tolerances &tol) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto trials = static_cast<std::size_t>(cfg.trials);
  std::vector<TrialOutcome> outcomes(trials);

  const unsigned workers =
      std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(trials)));
  if (workers == 1) {
    for (std::size_t t = 0; t < trials; ++t)
      outcomes[t] = run_trial(cfg, static_cast<Index>(t), tol);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < trials; t = next++)
          outcomes[t] = run_trial(cfg, static_cast<Index>(t), tol);
      });
    }
    for (auto &th : pool)
      th.join();
  }

  ExperimentResult result;
  result.config = cfg;
  std::size_t cell = 0;
  for (Strategy strategy : cfg.strategies) {
    for (Index m : cfg.sample_budgets) {
      StrategyStats row;
      row.strategy = strategy;
      row.m = m;
      CompensatedSum analytic, empirical;
      std::vector<double> values;
      for (const auto &trial : outcomes) {
        const Instance &inst = trial[cell];
        if (!inst.recoverable) {
          ++row.nonrecoverable;
          continue;
        }
        analytic.add(inst.analytic);
        empirical.add(inst.empirical);
        values.push_back(inst.empirical);
      }
      row.trials_used = static_cast<Index>(values.size());
      if (row.trials_used == 0) {
        row.mse_analytic_mean = std::numeric_limits<double>::quiet_NaN();
        row.mse_empirical_mean = std::numeric_limits<double>::quiet_NaN();
        row.standard_error = std::numeric_limits<double>::quiet_NaN();
      } else {
        const double count = static_cast<double>(row.trials_used);
        row.mse_analytic_mean = analytic.value() / count;
        row.mse_empirical_mean = empirical.value() / count;
        if (row.trials_used > 1) {
          CompensatedSum sq;
          for (double v : values)
            sq.add((v - row.mse_empirical_mean) * (v - row.mse_empirical_mean));
          row.standard_error = std::sqrt(sq.value() / (count - 1.0)) / std::sqrt(count);
        }
      }
      result.rows.push_back(row);
      ++cell;
    }
  }
  result.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  logger().info("experiment finished in {:.2f} s", result.wall_clock_seconds);
  return result;
}

ExperimentConfig parse_experiment_config(const json &j,
                                         const std::filesystem::path &base_dir) {
  if (!j.is_object())
    throw InputError("experiment config must be a JSON object");
  ExperimentConfig cfg;
  try {
    if (j.contains("graph_file")) {
      cfg.graph_file = j.at("graph_file").get<std::string>();
      std::filesystem::path p(cfg.graph_file);
      if (p.is_relative())
        p = base_dir / p;
      cfg.fixed_graph = read_graph_json(p);
    }
    if (j.contains("graph")) {
      const json &g = j.at("graph");
      cfg.graph.n = g.value("n", cfg.graph.n);
      cfg.graph.radius = g.value("radius", cfg.graph.radius);
      cfg.graph.seed = g.value("seed", cfg.graph.seed);
      cfg.graph.require_connected = g.value("require_connected", cfg.graph.require_connected);
    }
    cfg.bandwidth = j.value("bandwidth", cfg.bandwidth);
    if (j.contains("sample_budgets"))
      cfg.sample_budgets = j.at("sample_budgets").get<std::vector<Index>>();
    if (j.contains("strategies")) {
      cfg.strategies.clear();
      for (const auto &s : j.at("strategies"))
        cfg.strategies.push_back(parse_strategy(s.get<std::string>()));
    }
    cfg.noise_var = j.value("noise_var", cfg.noise_var);
    cfg.trials = j.value("trials", cfg.trials);
    cfg.noise_draws_per_trial = j.value("noise_draws_per_trial", cfg.noise_draws_per_trial);
    cfg.base_seed = j.value("base_seed", cfg.base_seed);
  } catch (const json::exception &e) {
    throw InputError(std::string("experiment config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

json config_to_json(const ExperimentConfig &cfg) {
  json j;
  if (cfg.fixed_graph) {
    j["graph_file"] = cfg.graph_file;
  } else {
    j["graph"] = {{"n", cfg.graph.n},
                  {"radius", cfg.graph.radius},
                  {"seed", cfg.graph.seed},
                  {"require_connected", cfg.graph.require_connected}};
  }
  j["bandwidth"] = cfg.bandwidth;
  j["sample_budgets"] = cfg.sample_budgets;
  json names = json::array();
  for (Strategy s : cfg.strategies)
    names.push_back(std::string(to_string(s)));
  j["strategies"] = std::move(names);
  j["noise_var"] = cfg.noise_var;
  j["trials"] = cfg.trials;
  j["noise_draws_per_trial"] = cfg.noise_draws_per_trial;
  j["base_seed"] = cfg.base_seed;
  return j;
}

std::string results_csv(const ExperimentResult &r) {
  std::string out =
      "strategy,m,trials_used,nonrecoverable,mse_analytic_mean,mse_empirical_mean,stderr\n";
  for (const auto &row : r.rows) {
    out += std::string(to_string(row.strategy)) + ',' + std::to_string(row.m) + ',' +
           std::to_string(row.trials_used) + ',' + std::to_string(row.nonrecoverable) +
           ',' + format_double(row.mse_analytic_mean) + ',' +
           format_double(row.mse_empirical_mean) + ',' +
           format_double(row.standard_error) + '\n';
  }
  return out;
}

std::string results_json(const ExperimentResult &r) {
  json j;
  j["version"] = r.version;
  j["config"] = config_to_json(r.config);
  j["columns"] = {"strategy", "m", "trials_used", "nonrecoverable",
                  "mse_analytic_mean", "mse_empirical_mean", "stderr"};
  return j.dump(2) + "\n";
}

} // namespace gsp
