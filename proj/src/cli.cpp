#include "gsp/cli.hpp"
#include "gsp/experiments.hpp"
#include "gsp/graph.hpp"
#include "gsp/io.hpp"
#include "gsp/localization.hpp"
#include "gsp/sampling.hpp"
#include "gsp/spectral.hpp"
#include "gsp/strategies.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <utility>
#include <vector>

namespace gsp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::string graph;
  std::string vertex_set;
  std::string freq_set;
  std::string strategy = "max-vol";
  Index samples = 0;
  std::string config;
  std::string signal;
  std::string out;
  Index grid = 512;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::string tolerance_profile = "default";
};

using Outputs = std::vector<std::pair<std::string, std::string>>;

struct Loaded {
  Graph<double> graph;
  SpectralBasis<double> basis;
};

Loaded load(const Options &o, const Tolerances &tol) {
  if (o.graph.empty())
    throw InputError("--graph is required");
  Loaded l{read_graph_json(o.graph), {}};
  l.basis = eigendecompose(laplacian(l.graph), tol);
  return l;
}

VertexSet vertex_set(const Options &o, Index n) {
  return VertexSet(n, parse_index_list(o.vertex_set));
}

FrequencySet freq_set(const Options &o, Index n) {
  return FrequencySet(n, parse_index_list(o.freq_set));
}

Outputs cmd_spectrum(const Options &o, const Tolerances &tol) {
  const Loaded l = load(o, tol);
  return {{"eigenvalues.csv", format_csv(l.basis.eigenvalues)},
          {"eigenvectors.csv", format_csv(l.basis.eigenvectors)}};
}

Outputs cmd_slepian(const Options &o, const Tolerances &tol) {
  const Loaded l = load(o, tol);
  const Index n = l.basis.size();
  const auto band = band_projector(l.basis, freq_set(o, n), tol);
  const auto vertex = vertex_projector<double>(n, vertex_set(o, n));
  const auto sl = slepian_basis(band, vertex, tol);
  return {{"slepian_vectors.csv", format_csv(sl.vectors)},
          {"concentrations.csv", format_csv(sl.concentrations)}};
}

Outputs cmd_region(const Options &o, const Tolerances &tol) {
  if (o.grid < 1)
    throw InputError("--grid must be >= 1");
  const Loaded l = load(o, tol);
  const Index n = l.basis.size();
  const auto band = band_projector(l.basis, freq_set(o, n), tol);
  const auto vertex = vertex_projector<double>(n, vertex_set(o, n));
  const auto profile = uncertainty_profile(band, vertex);

  std::string csv = "alpha,beta_upper_right,beta_upper_left,beta_lower_right,beta_lower_left\n";
  for (Index k = 0; k < o.grid; ++k) {
    const double alpha =
        o.grid == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(o.grid - 1);
    const auto b = region_boundary(profile, alpha);
    csv += format_double(alpha) + ',' + format_double(b.upper_right) + ',' +
           format_double(b.upper_left) + ',' + format_double(b.lower_right) + ',' +
           format_double(b.lower_left) + '\n';
  }

  json side;
  side["sigma_max"] = {{"bd", profile.s_bd},
                       {"bdc", profile.s_bdc},
                       {"bcd", profile.s_bcd},
                       {"bcdc", profile.s_bcdc}};
  const auto sl = slepian_basis(band, vertex, tol);
  if (std::sqrt(sl.concentrations(0)) > tol.positive_concentration) {
    const Vector<double> f = max_concentration_vector(sl, vertex, tol);
    side["max_concentration"] = {{"alpha", (vertex.matrix * f).norm()},
                                 {"beta", (band.matrix * f).norm()}};
  } else {
    side["max_concentration"] = nullptr;
  }
  return {{"region.csv", csv}, {"region.json", side.dump(2) + "\n"}};
}

Outputs cmd_select(const Options &o, const Tolerances &tol) {
  const Loaded l = load(o, tol);
  const Index n = l.basis.size();
  const Strategy strategy = parse_strategy(o.strategy);
  const SelectionRequest req{l.basis, freq_set(o, n), o.samples, strategy, o.seed};
  const SelectionResult sel = select(req, tol);
  const auto scheme = build_scheme(l.basis, sel.vertex_set, req.frequency_set, tol);

  json j;
  j["vertex_set"] = to_json(sel.vertex_set);
  j["strategy"] = std::string(to_string(strategy));
  if (strategy == Strategy::max_sig_min)
    j["note"] = "reimplementation";
  j["frequency_set"] = to_json(req.frequency_set);
  j["margin"] = scheme.condition_margin;
  j["recoverable"] = std::isfinite(sel.mse);
  j["mse"] = std::isfinite(sel.mse) ? json(sel.mse) : json(nullptr);
  j["objective_trace"] = sel.objective_trace;
  return {{"selection.json", j.dump(2) + "\n"}};
}

Outputs cmd_reconstruct(const Options &o, const Tolerances &tol) {
  if (o.signal.empty())
    throw InputError("--signal is required");
  const Loaded l = load(o, tol);
  const Index n = l.basis.size();
  const Vector<double> sampled = read_csv_vector(o.signal);
  const auto scheme = build_scheme(l.basis, vertex_set(o, n), freq_set(o, n), tol);
  const Vector<double> rec = reconstruct(scheme, sampled, tol);
  return {{"reconstructed.csv", format_csv(rec)},
          {"scheme.json", scheme_to_json(scheme).dump(2) + "\n"}};
}

Outputs cmd_experiment(const Options &o, const Tolerances &tol) {
  if (o.config.empty())
    throw InputError("--config is required");
  json j;
  try {
    j = json::parse(read_text_file(o.config));
  } catch (const json::parse_error &e) {
    throw InputError(std::string("experiment config: ") + e.what());
  }
  const ExperimentConfig cfg =
      parse_experiment_config(j, fs::path(o.config).parent_path());
  const ExperimentResult r = run_experiment(cfg, RunOptions{o.threads}, tol);
  return {{"results.csv", results_csv(r)}, {"results.json", results_json(r)}};
}

void write_outputs(const fs::path &dir, const Outputs &outputs) {
  fs::create_directories(dir);
  for (const auto &[name, content] : outputs)
    write_file_atomic(dir / name, content);
}

} // namespace

int run(int argc, const char *const *argv) {
  Options o;
  CLI::App app{"Graph signal sampling, localization and uncertainty tools"};
  app.require_subcommand(1);
  app.add_option("--seed", o.seed, "Seed for randomised strategies");
  app.add_option("--tolerance-profile", o.tolerance_profile, "default or strict")
      ->check(CLI::IsMember({"default", "strict"}));

  auto graph_opts = [&](CLI::App *sub) {
    sub->add_option("--graph", o.graph, "Graph JSON file")->required();
    sub->add_option("--out", o.out, "Output directory")->required();
  };
  auto sets = [&](CLI::App *sub, bool vertices) {
    sub->add_option("--freq-set", o.freq_set, "Frequency indices, e.g. 0,1,2")->required();
    if (vertices)
      sub->add_option("--vertex-set", o.vertex_set, "Vertex indices, e.g. 0,4")->required();
  };

  auto *spectrum = app.add_subcommand("spectrum", "Laplacian eigenvalues and eigenvectors");
  graph_opts(spectrum);
  auto *slepian = app.add_subcommand("slepian", "Maximally concentrated basis for (S, F)");
  graph_opts(slepian);
  sets(slepian, true);
  auto *region = app.add_subcommand("region", "Uncertainty region boundary curves");
  graph_opts(region);
  sets(region, true);
  region->add_option("--grid", o.grid, "Number of alpha samples");
  auto *sel = app.add_subcommand("select", "Choose a sampling set");
  graph_opts(sel);
  sets(sel, false);
  sel->add_option("--strategy", o.strategy,
                  "random|min-pinv|max-vol|max-fro|max-sig-min|exhaustive");
  sel->add_option("--samples", o.samples, "Number of samples M")->required();
  sel->add_option("--seed", o.seed, "Seed for the random strategy");
  auto *rec = app.add_subcommand("reconstruct", "Recover a band-limited signal from samples");
  graph_opts(rec);
  sets(rec, true);
  rec->add_option("--signal", o.signal, "CSV of the sampled signal")->required();
  auto *exp = app.add_subcommand("experiment", "Monte Carlo MSE experiment");
  exp->add_option("--config", o.config, "Experiment config JSON")->required();
  exp->add_option("--out", o.out, "Output directory")->required();
  exp->add_option("--threads", o.threads, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    const Tolerances tol = Tolerances::from_profile(o.tolerance_profile);
    Outputs outputs;
    if (spectrum->parsed())
      outputs = cmd_spectrum(o, tol);
    else if (slepian->parsed())
      outputs = cmd_slepian(o, tol);
    else if (region->parsed())
      outputs = cmd_region(o, tol);
    else if (sel->parsed())
      outputs = cmd_select(o, tol);
    else if (rec->parsed())
      outputs = cmd_reconstruct(o, tol);
    else
      outputs = cmd_experiment(o, tol);
    write_outputs(o.out, outputs);
    return kSuccess;
  } catch (const InputError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const fs::filesystem_error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

} // namespace gsp::cli
