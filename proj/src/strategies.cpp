#include "gsp/strategies.hpp"
#include "gsp/sampling.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace gsp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate(const SelectionRequest &req) {
  const Index n = req.basis.size();
  req.frequency_set.require_universe(n);
  if (req.m < 1 || req.m > n)
    throw InputError("sample budget " + std::to_string(req.m) +
                     " outside [1, " + std::to_string(n) + "]");
}

/// |F| x n matrix whose columns are the candidate sample vectors.
Matrix<double> band_rows(const SelectionRequest &req) {
  const auto &f = req.frequency_set;
  Matrix<double> rows(f.size(), req.basis.size());
  for (Index k = 0; k < f.size(); ++k)
    rows.row(k) = req.basis.eigenvectors.col(f[k]).transpose();
  return rows;
}

SelectionResult finish(const SelectionRequest &req, std::vector<Index> chosen,
                       std::vector<double> trace, const Tolerances &tol) {
  SelectionResult out;
  out.vertex_set = VertexSet(req.basis.size(), std::move(chosen));
  out.objective_trace = std::move(trace);
  out.mse = unit_noise_mse(req.basis, out.vertex_set, req.frequency_set, tol);
  return out;
}

/// Nonzero squared singular values (ascending) of the column subset.
Vector<double> squared_singular_values(const Matrix<double> &cols,
                                       const Tolerances &tol) {
  if (cols.rows() == 0 || cols.cols() == 0)
    return Vector<double>();
  const Matrix<double> gram = cols.rows() <= cols.cols()
                                  ? Matrix<double>(cols * cols.transpose())
                                  : Matrix<double>(cols.transpose() * cols);
  Eigen::SelfAdjointEigenSolver<Matrix<double>> eig(gram, Eigen::EigenvaluesOnly);
  const Vector<double> &all = eig.eigenvalues();
  Index first = 0;
  while (first < all.size() && all(first) <= tol.rank)
    ++first;
  return all.tail(all.size() - first);
}

struct Score {
  Index rank = -1;
  double value = -kInf; // larger is better
};

bool better(const Score &a, const Score &b, const Tolerances &tol) {
  if (a.rank != b.rank)
    return a.rank > b.rank;
  const double scale = std::max(std::abs(a.value), std::abs(b.value));
  return a.value > b.value + tol.tie_relative * scale;
}

/// Generic greedy loop. `score` maps the nonzero sigma^2 of a candidate
/// column set to a value to maximise; `report` maps it to the trace entry.
template <typename ScoreFn, typename ReportFn>
SelectionResult run_greedy(const SelectionRequest &req, const Tolerances &tol,
                           ScoreFn score, ReportFn report) {
  validate(req);
  const Matrix<double> rows = band_rows(req);
  const Index n = rows.cols();
  std::vector<Index> chosen;
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  std::vector<double> trace;
  Matrix<double> cols(rows.rows(), 0);

  while (static_cast<Index>(chosen.size()) < req.m) {
    Index best = -1;
    Score best_score;
    double best_report = 0;
    Matrix<double> trial(rows.rows(), cols.cols() + 1);
    trial.leftCols(cols.cols()) = cols;
    for (Index j = 0; j < n; ++j) {
      if (taken[static_cast<std::size_t>(j)])
        continue;
      trial.col(cols.cols()) = rows.col(j);
      const Vector<double> sq = squared_singular_values(trial, tol);
      const Score s{sq.size(), score(sq)};
      if (best < 0 || better(s, best_score, tol)) {
        best = j;
        best_score = s;
        best_report = report(sq);
      }
    }
    taken[static_cast<std::size_t>(best)] = true;
    chosen.push_back(best);
    cols = trial;
    cols.col(cols.cols() - 1) = rows.col(best);
    trace.push_back(best_report);
  }
  return finish(req, std::move(chosen), std::move(trace), tol);
}

double inverse_sum(const Vector<double> &sq) { return sq.cwiseInverse().sum(); }

double pseudo_determinant(const Vector<double> &sq) {
  return sq.size() == 0 ? 0.0 : sq.prod();
}

double smallest_singular(const Vector<double> &sq) {
  return sq.size() == 0 ? 0.0 : std::sqrt(sq(0));
}

double binomial(Index n, Index k) {
  double r = 1;
  for (Index i = 1; i <= k; ++i)
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

} // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
  case Strategy::random: return "random";
  case Strategy::min_pinv: return "min-pinv";
  case Strategy::max_vol: return "max-vol";
  case Strategy::max_fro: return "max-fro";
  case Strategy::max_sig_min: return "max-sig-min";
  case Strategy::exhaustive: return "exhaustive";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view name) {
  for (Strategy s : kAllStrategies)
    if (to_string(s) == name)
      return s;
  throw InputError("unknown strategy '" + std::string(name) +
                   "' (expected random, min-pinv, max-vol, max-fro, "
                   "max-sig-min or exhaustive)");
}

bool is_greedy(Strategy s) {
  return s == Strategy::min_pinv || s == Strategy::max_vol ||
         s == Strategy::max_fro || s == Strategy::max_sig_min;
}

double unit_noise_mse(const SpectralBasis<double> &basis, const VertexSet &s,
                      const FrequencySet &f, const Tolerances &tol) {
  const auto scheme = build_scheme(basis, s, f, tol);
  if (!scheme.recoverable(tol))
    return kInf;
  const auto lam = scheme.band_concentrations();
  if (lam.size() > 0 && lam.minCoeff() < tol.ill_conditioned)
    return kInf;
  return analytic_mse(scheme, 1.0, tol);
}

SelectionResult select_random(const SelectionRequest &req, const Tolerances &tol) {
  validate(req);
  const Index n = req.basis.size();
  std::vector<Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Index{0});
  std::mt19937_64 rng(req.seed);
  for (Index k = 0; k < req.m; ++k) {
    std::uniform_int_distribution<Index> pick(k, n - 1);
    std::swap(pool[static_cast<std::size_t>(k)],
              pool[static_cast<std::size_t>(pick(rng))]);
  }
  pool.resize(static_cast<std::size_t>(req.m));
  return finish(req, std::move(pool), {}, tol);
}

SelectionResult select_min_pinv(const SelectionRequest &req, const Tolerances &tol) {
  return run_greedy(
      req, tol, [](const Vector<double> &sq) { return -inverse_sum(sq); },
      inverse_sum);
}

SelectionResult select_max_vol(const SelectionRequest &req, const Tolerances &tol) {
  return run_greedy(req, tol, pseudo_determinant, pseudo_determinant);
}

SelectionResult select_max_sig_min(const SelectionRequest &req,
                                   const Tolerances &tol) {
  return run_greedy(req, tol, smallest_singular, smallest_singular);
}

SelectionResult select_max_fro(const SelectionRequest &req, const Tolerances &tol) {
  validate(req);
  const Vector<double> norms = band_rows(req).colwise().squaredNorm().transpose();
  const Index n = norms.size();
  const double top = n > 0 ? norms.maxCoeff() : 0.0;
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  std::vector<Index> chosen;
  std::vector<double> trace;
  double running = 0;
  for (Index round = 0; round < req.m; ++round) {
    Index best = -1;
    for (Index j = 0; j < n; ++j) {
      if (taken[static_cast<std::size_t>(j)])
        continue;
      if (best < 0 || norms(j) > norms(best) + tol.tie_relative * top)
        best = j;
    }
    taken[static_cast<std::size_t>(best)] = true;
    chosen.push_back(best);
    running += norms(best);
    trace.push_back(running);
  }
  return finish(req, std::move(chosen), std::move(trace), tol);
}

SelectionResult select_exhaustive(const SelectionRequest &req, const Tolerances &tol) {
  validate(req);
  const Index n = req.basis.size();
  const Index m = req.m;
  const Index k = req.frequency_set.size();
  const double count = binomial(n, m);
  if (count > kExhaustiveBudget)
    throw BudgetExceededError("exhaustive search over " + std::to_string(count) +
                              " subsets exceeds the budget of 1e7");

  const Matrix<double> rows = band_rows(req);
  std::vector<Index> current(static_cast<std::size_t>(m));
  std::vector<Index> best(static_cast<std::size_t>(m));
  std::iota(best.begin(), best.end(), Index{0});
  double best_score = kInf;

  if (m >= k) {
    // Depth-first over combinations in lexicographic order with the k x k
    // Gram matrix U_F^T D_S U_F accumulated along the path.
    std::vector<Matrix<double>> gram(static_cast<std::size_t>(m + 1),
                                     Matrix<double>::Zero(k, k));
    Eigen::LLT<Matrix<double>> llt(k);
    Matrix<double> inv_factor(k, k);

    auto leaf_score = [&](const Matrix<double> &g) {
      if (k == 0)
        return 0.0;
      llt.compute(g);
      if (llt.info() != Eigen::Success)
        return kInf;
      inv_factor.setIdentity();
      llt.matrixL().solveInPlace(inv_factor);
      return inv_factor.squaredNorm();
    };
    auto certified = [&](const Matrix<double> &g) {
      if (k == 0)
        return true;
      Eigen::SelfAdjointEigenSolver<Matrix<double>> eig(g, Eigen::EigenvaluesOnly);
      const double lam_min = eig.eigenvalues()(0);
      const double margin = 1.0 - std::sqrt(std::max(0.0, 1.0 - lam_min));
      return margin > tol.recovery && lam_min >= tol.ill_conditioned;
    };

    auto descend = [&](auto &&self, Index depth, Index start) -> void {
      if (depth == m) {
        const Matrix<double> &g = gram[static_cast<std::size_t>(depth)];
        const double s = leaf_score(g);
        if (s < best_score - tol.tie_relative * std::abs(s) && certified(g)) {
          best_score = s;
          best = current;
        }
        return;
      }
      for (Index j = start; j <= n - (m - depth); ++j) {
        current[static_cast<std::size_t>(depth)] = j;
        auto &next = gram[static_cast<std::size_t>(depth + 1)];
        next = gram[static_cast<std::size_t>(depth)];
        next.noalias() += rows.col(j) * rows.col(j).transpose();
        self(self, depth + 1, j + 1);
      }
    };
    descend(descend, 0, 0);
  }
  return finish(req, std::move(best), {}, tol);
}

SelectionResult select(const SelectionRequest &req, const Tolerances &tol) {
  switch (req.strategy) {
  case Strategy::random: return select_random(req, tol);
  case Strategy::min_pinv: return select_min_pinv(req, tol);
  case Strategy::max_vol: return select_max_vol(req, tol);
  case Strategy::max_fro: return select_max_fro(req, tol);
  case Strategy::max_sig_min: return select_max_sig_min(req, tol);
  case Strategy::exhaustive: return select_exhaustive(req, tol);
  }
  throw InputError("unknown strategy");
}

} // namespace gsp
