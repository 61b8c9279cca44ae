#pragma once

#include "gsp/common.hpp"
#include "gsp/graph.hpp"
#include "gsp/index_set.hpp"
#include "gsp/sampling.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace gsp {

/// Parses {"n": <int>, "edges": [[i, j, w], ...]} with 0-based i < j and
/// w > 0. Throws InputError naming the offending field or position.
Graph<double> parse_graph_json(std::string_view text);
Graph<double> read_graph_json(const std::filesystem::path &path);

/// Inverse of parse_graph_json; edges sorted by (i, j).
std::string format_graph_json(const Graph<double> &g);

/// Row-major CSV with 17 significant digits per value.
std::string format_csv(const Matrix<double> &m);
/// One value per line.
std::string format_csv(const Vector<double> &v);

/// Reads a vector from CSV text; values may be separated by commas,
/// whitespace or newlines.
Vector<double> parse_csv_vector(std::string_view text);
Vector<double> read_csv_vector(const std::filesystem::path &path);

/// Comma-separated integer list such as "0,1,2"; empty string is the
/// empty set.
std::vector<Index> parse_index_list(std::string_view text);

template <typename Tag> nlohmann::json to_json(const IndexSet<Tag> &s) {
  return nlohmann::json(s.members());
}

template <typename Tag>
IndexSet<Tag> index_set_from_json(const nlohmann::json &j, Index universe) {
  if (!j.is_array())
    throw InputError(std::string(Tag::name) + " set must be a JSON array");
  std::vector<Index> members;
  for (const auto &v : j) {
    if (!v.is_number_integer())
      throw InputError(std::string(Tag::name) + " set entries must be integers");
    members.push_back(v.get<Index>());
  }
  return IndexSet<Tag>(universe, std::move(members));
}

/// {vertex_set, frequency_set, margin, sigma_sq}
nlohmann::json scheme_to_json(const SamplingScheme<double> &scheme);

std::string read_text_file(const std::filesystem::path &path);

/// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::filesystem::path &path, std::string_view content);

std::string format_double(double v);

} // namespace gsp
