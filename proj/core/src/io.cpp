#include "starloop/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "starloop/errors.hpp"

namespace starloop {
namespace {

using nlohmann::json;

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

double parse_double(std::string_view token, std::size_t line_no) {
  double value = 0.0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line_no) + ": weight '" + std::string(token) + "' is not a number");
  return value;
}

json vector_array(const Vector& v) {
  json arr = json::array();
  for (double x : v) arr.push_back(x);
  return arr;
}

json star_list(const std::vector<Star>& stars) {
  json arr = json::array();
  for (const auto& s : stars) arr.push_back(to_json(s));
  return arr;
}

json containment_json(const ContainmentReport& c) {
  return {{"contained", c.contained}, {"max_gap", c.max_gap}, {"threshold", c.threshold}};
}

}  // namespace

std::optional<GraphFormat> parse_graph_format(std::string_view name) noexcept {
  if (name == "edgelist") return GraphFormat::edgelist;
  if (name == "json") return GraphFormat::json;
  return std::nullopt;
}

GraphFormat detect_graph_format(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".json" ? GraphFormat::json : GraphFormat::edgelist;
}

WeightedGraph parse_edge_list(std::istream& in) {
  std::vector<LabeledEdge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_whitespace(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.size() != 3)
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected 'u v w', got " +
                                             std::to_string(tokens.size()) + " fields");
    edges.push_back({std::string(tokens[0]), std::string(tokens[1]), parse_double(tokens[2], line_no)});
  }
  return build_graph(edges);
}

WeightedGraph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  for (const auto& e : g.edges()) out << g.label(e.u) << ' ' << g.label(e.v) << ' ' << format_number(e.w) << '\n';
}

json graph_to_json(const WeightedGraph& g) {
  json nodes = json::array();
  for (const auto& label : g.labels()) nodes.push_back({{"id", label}});
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({{"u", g.label(e.u)}, {"v", g.label(e.v)}, {"w", e.w}});
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

WeightedGraph graph_from_json(const json& j) {
  try {
    std::vector<std::string> nodes;
    if (j.contains("nodes"))
      for (const auto& n : j.at("nodes")) nodes.push_back(n.at("id").get<std::string>());
    std::vector<LabeledEdge> edges;
    for (const auto& e : j.at("edges"))
      edges.push_back({e.at("u").get<std::string>(), e.at("v").get<std::string>(), e.at("w").get<double>()});
    return build_graph(edges, nodes);
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::ParseError, std::string("malformed graph JSON: ") + ex.what());
  }
}

WeightedGraph read_graph(const std::filesystem::path& path, std::optional<GraphFormat> format) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path.string() + "'");
  if (format.value_or(detect_graph_format(path)) == GraphFormat::edgelist) return parse_edge_list(in);
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::ParseError, "'" + path.string() + "' is not valid JSON: " + ex.what());
  }
  return graph_from_json(j);
}

json to_json(const Spectrum& s) {
  json vectors = json::array();
  for (const auto& v : s.vectors) vectors.push_back(vector_array(v));
  return {{"values", vector_array(s.values)}, {"vectors", std::move(vectors)}, {"source", to_string(s.source)}};
}

json to_json(const Star& star) {
  return {{"v1", star.v1},
          {"v2", star.v2},
          {"s", star.s},
          {"looped", star.looped},
          {"a", star.internal_weight},
          {"loop", star.loop_weight},
          {"b", vector_array(star.edge_weight_to_v2)}};
}

json to_json(const CertificateReport& report) {
  json predictions = json::array();
  for (const auto& p : report.predictions) {
    predictions.push_back({{"value", p.value},
                           {"required", p.required},
                           {"observed", p.observed},
                           {"pass", p.pass},
                           {"max_residual", p.max_residual},
                           {"stars", star_list(p.stars)}});
  }
  return {{"kind", to_string(report.kind)},
          {"predictions", std::move(predictions)},
          {"variance_notes", report.variance_notes},
          {"tolerances",
           {{"residual", report.options.residual_tol},
            {"cluster", report.options.cluster_tol},
            {"match", report.options.match_tol},
            {"weight", report.options.weight_tol}}},
          {"pass", report.pass()}};
}

json to_json(const DeloopResult& result) {
  json provenance = json::object();
  for (std::size_t v = 0; v < result.provenance.size(); ++v) {
    json copies = json::array();
    for (VertexId c : result.provenance[v]) copies.push_back(result.graph.label(c));
    // Original vertices keep their labels in the output graph.
    provenance[result.graph.label(v)] = std::move(copies);
  }
  const Matrix k = result.lifting.entries();
  json entries = json::array();
  for (std::size_t r = 0; r < k.rows(); ++r) {
    json row = json::array();
    for (double x : k.row(r)) row.push_back(x);
    entries.push_back(std::move(row));
  }
  return {{"mode", to_string(result.mode)},
          {"q", result.q},
          {"graph", graph_to_json(result.graph)},
          {"provenance", std::move(provenance)},
          {"lifting", {{"normalization", to_string(result.lifting.normalization())}, {"entries", std::move(entries)}}}};
}

DeloopResult deloop_result_from_json(const json& j) {
  try {
    DeloopResult result;
    const auto mode = parse_scaling_mode(j.at("mode").get<std::string>());
    if (!mode) throw Error(ErrorKind::ParseError, "unknown scaling mode '" + j.at("mode").get<std::string>() + "'");
    result.mode = *mode;
    result.q = j.at("q").get<std::size_t>();
    result.graph = graph_from_json(j.at("graph"));

    const auto& lifting = j.at("lifting");
    const auto norm_name = lifting.at("normalization").get<std::string>();
    if (norm_name != "orthonormal" && norm_name != "replication")
      throw Error(ErrorKind::ParseError, "unknown lifting normalization '" + norm_name + "'");
    const auto& rows = lifting.at("entries");
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix k(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw Error(ErrorKind::ParseError, "lifting rows differ in length");
      for (std::size_t c = 0; c < cols; ++c) k(r, c) = rows[r][c].get<double>();
    }
    result.lifting = LiftingMatrix::from_entries(
        k, norm_name == "orthonormal" ? Normalization::orthonormal : Normalization::replication);
    if (result.lifting.large_order() != result.graph.order())
      throw Error(ErrorKind::DimensionError, "lifting rows do not match the graph order");

    result.provenance.assign(result.lifting.small_order(), {});
    const auto& p = result.lifting.partition();
    for (VertexId u = 0; u < p.size(); ++u) result.provenance[p[u]].push_back(u);
    for (const auto& copies : result.provenance) result.loops_removed += copies.size() > 1 ? 1 : 0;
    return result;
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::ParseError, std::string("malformed deloop result JSON: ") + ex.what());
  }
}

json to_json(const VerificationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json item = {{"domain", to_string(c.domain)},
                 {"containment", containment_json(c.containment)},
                 {"identity_error", c.identity_error},
                 {"max_lift_residual", c.max_lift_residual},
                 {"interlacing", {{"interlaces", c.interlacing.interlaces}, {"tight", c.interlacing.tight}}},
                 {"small_spectrum", vector_array(c.small_spectrum.values)},
                 {"large_spectrum", vector_array(c.large_spectrum.values)},
                 {"pass", c.pass}};
    if (c.orthonormality_error) item["orthonormality_error"] = *c.orthonormality_error;
    checks.push_back(std::move(item));
  }
  return {{"mode", to_string(report.mode)}, {"checks", std::move(checks)}, {"pass", report.pass}};
}

std::string format_number(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace starloop
