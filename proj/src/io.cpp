#include "gsp/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace gsp {

using nlohmann::json;

namespace {

Index require_index(const json &v, const std::string &where) {
  if (!v.is_number_integer())
    throw InputError(where + " must be an integer");
  return v.get<Index>();
}

} // namespace

Graph<double> parse_graph_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw InputError(std::string("graph JSON: ") + e.what());
  }
  if (!doc.is_object())
    throw InputError("graph JSON: top level must be an object");
  if (!doc.contains("n"))
    throw InputError("graph JSON: missing field \"n\"");
  if (!doc.contains("edges"))
    throw InputError("graph JSON: missing field \"edges\"");
  const Index n = require_index(doc["n"], "graph JSON: field \"n\"");
  if (n < 1)
    throw InputError("graph JSON: field \"n\" must be positive");
  const json &edges = doc["edges"];
  if (!edges.is_array())
    throw InputError("graph JSON: field \"edges\" must be an array");

  std::vector<Edge<double>> list;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string where = "graph JSON: edges[" + std::to_string(k) + "]";
    const json &e = edges[k];
    if (!e.is_array() || e.size() != 3)
      throw InputError(where + " must be [i, j, w]");
    const Index i = require_index(e[0], where + "[0]");
    const Index j = require_index(e[1], where + "[1]");
    if (!e[2].is_number())
      throw InputError(where + "[2] must be a number");
    const double w = e[2].get<double>();
    if (i == j)
      throw InputError(where + ": self-loop at vertex " + std::to_string(i));
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw InputError(where + ": vertex index out of range [0, " +
                       std::to_string(n) + ")");
    if (i > j)
      throw InputError(where + ": edges must be listed with i < j");
    if (!(w > 0.0))
      throw InputError(where + ": weight must be positive");
    list.push_back({i, j, w});
  }
  try {
    return Graph<double>::from_edges(n, list);
  } catch (const InputError &e) {
    throw InputError(std::string("graph JSON: ") + e.what());
  }
}

Graph<double> read_graph_json(const std::filesystem::path &path) {
  return parse_graph_json(read_text_file(path));
}

std::string format_graph_json(const Graph<double> &g) {
  json edges = json::array();
  for (const auto &e : g.edges())
    edges.push_back(json::array({e.i, e.j, e.weight}));
  json doc;
  doc["n"] = g.size();
  doc["edges"] = std::move(edges);
  return doc.dump() + "\n";
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_csv(const Matrix<double> &m) {
  std::string out;
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c > 0)
        out += ',';
      out += format_double(m(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string format_csv(const Vector<double> &v) {
  return format_csv(Matrix<double>(v));
}

Vector<double> parse_csv_vector(std::string_view text) {
  std::vector<double> values;
  std::string token;
  std::size_t line = 1;
  auto flush = [&] {
    if (token.empty())
      return;
    char *end = nullptr;
    errno = 0;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0' || errno == ERANGE)
      throw InputError("CSV line " + std::to_string(line) + ": '" + token +
                       "' is not a number");
    values.push_back(v);
    token.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
      flush();
      if (ch == '\n')
        ++line;
    } else {
      token += ch;
    }
  }
  flush();
  return Eigen::Map<const Vector<double>>(values.data(),
                                          static_cast<Index>(values.size()));
}

Vector<double> read_csv_vector(const std::filesystem::path &path) {
  return parse_csv_vector(read_text_file(path));
}

std::vector<Index> parse_index_list(std::string_view text) {
  std::vector<Index> out;
  std::string token;
  auto flush = [&] {
    if (token.empty())
      return;
    char *end = nullptr;
    const long long v = std::strtoll(token.c_str(), &end, 10);
    if (end == token.c_str() || *end != '\0')
      throw InputError("'" + token + "' is not an index");
    out.push_back(static_cast<Index>(v));
    token.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == ' ')
      flush();
    else
      token += ch;
  }
  flush();
  return out;
}

json scheme_to_json(const SamplingScheme<double> &scheme) {
  json j;
  j["vertex_set"] = to_json(scheme.vertex_set);
  j["frequency_set"] = to_json(scheme.frequency_set);
  j["margin"] = scheme.condition_margin;
  const auto lam = scheme.band_concentrations();
  j["sigma_sq"] = std::vector<double>(lam.data(), lam.data() + lam.size());
  return j;
}

std::string read_text_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path &path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw InputError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
      throw InputError("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

} // namespace gsp
