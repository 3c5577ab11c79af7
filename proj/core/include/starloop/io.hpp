#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "starloop/certificates.hpp"
#include "starloop/graph.hpp"
#include "starloop/loop_removal.hpp"
#include "starloop/spectra.hpp"
#include "starloop/stars.hpp"

namespace starloop {

enum class GraphFormat { edgelist, json };

std::optional<GraphFormat> parse_graph_format(std::string_view name) noexcept;
/// ".json" (any case) is JSON, everything else an edge list.
GraphFormat detect_graph_format(const std::filesystem::path& path);

/// "u v w" per line, whitespace separated; u == v is a loop. Lines whose
/// first non-blank character is '#' and blank lines are skipped.
WeightedGraph parse_edge_list(std::istream& in);
WeightedGraph parse_edge_list(std::string_view text);
void write_edge_list(std::ostream& out, const WeightedGraph& g);

nlohmann::json graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const nlohmann::json& j);

WeightedGraph read_graph(const std::filesystem::path& path, std::optional<GraphFormat> format = std::nullopt);

nlohmann::json to_json(const Spectrum& s);
nlohmann::json to_json(const Star& star);
nlohmann::json to_json(const CertificateReport& report);
nlohmann::json to_json(const DeloopResult& result);
nlohmann::json to_json(const VerificationReport& report);

/// Inverse of to_json(const DeloopResult&).
DeloopResult deloop_result_from_json(const nlohmann::json& j);

/// Shortest decimal that reads back to the same double.
std::string format_number(double x);

}  // namespace starloop
