#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "starloop/certificates.hpp"
#include "starloop/errors.hpp"
#include "starloop/stars.hpp"

namespace starloop::cli {
namespace {

using nlohmann::json;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidWeight:
    case ErrorKind::DuplicateEdge:
    case ErrorKind::InvalidArgument:
      return kInputError;
    case ErrorKind::NumericalError:
      return kCheckFailed;
    default:
      return kIncompatible;
  }
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (e.kind() == ErrorKind::LoopsNotSupported) err << "hint: run `starloop deloop` to obtain a loopless graph\n";
    return exit_code_for(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

void emit(const CliConfig& config, const std::string& content, std::ostream& out) {
  if (config.output)
    write_atomically(*config.output, content);
  else
    out << content;
}

std::string num(double x) {
  // Snap Jacobi round-off so text reports stay readable and diff-stable.
  if (std::abs(x) < 1e-13) x = 0.0;
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

std::string vertex_list(const WeightedGraph& g, const std::vector<VertexId>& vs) {
  std::string s = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? " " : "") + g.label(vs[i]);
  return s + "]";
}

std::string star_line(const WeightedGraph& g, const Star& star) {
  const auto m = star_metrics(star);
  std::ostringstream os;
  os << "m=" << star.m() << " k=" << star.k() << " s=" << star.s << " looped=" << (star.looped ? "yes" : "no")
     << " deg=" << m.degree << " w=" << num(m.weight) << " a=" << num(m.central_weight_edge)
     << " loop=" << num(m.loop_weight) << " v1=" << vertex_list(g, star.v1) << " v2=" << vertex_list(g, star.v2);
  return os.str();
}

void write_verification_text(std::ostream& os, const VerificationReport& report, const char* prefix) {
  const bool literal = report.mode == ScalingMode::literal;
  for (const auto& c : report.checks) {
    os << prefix << "domain: " << to_string(c.domain) << '\n';
    os << prefix << "  containment: " << (c.containment.contained ? "PASS" : "FAIL")
       << (literal && !c.containment.contained ? " (expected for paper_literal)" : "")
       << " max_gap=" << num(c.containment.max_gap) << '\n';
    if (c.orthonormality_error)
      os << prefix << "  orthonormality: " << num(*c.orthonormality_error) << '\n';
    os << prefix << "  identity_error: " << num(c.identity_error) << '\n';
    os << prefix << "  max_lift_residual: " << num(c.max_lift_residual) << '\n';
    os << prefix << "  interlacing: " << (c.interlacing.interlaces ? "PASS" : "FAIL")
       << (c.interlacing.tight ? " (tight)" : "") << '\n';
  }
  os << prefix << "verification: " << (report.pass ? "PASS" : "FAIL") << '\n';
}

VerifyOptions verify_options(const CliConfig& config) {
  VerifyOptions o;
  o.containment = config.tol_contain;
  o.residual = std::max(o.residual, config.tol_residual);
  o.interlacing = config.tol_contain;
  return o;
}

int verification_exit(const VerificationReport& report) {
  if (report.mode == ScalingMode::literal) return kSuccess;
  return report.pass ? kSuccess : kCheckFailed;
}

}  // namespace

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorKind::ParseError, "cannot write '" + tmp.string() + "'");
    f << content;
    if (!f.flush()) throw Error(ErrorKind::ParseError, "failed writing '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

int cmd_spectrum(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto g = read_graph(config.input, config.format);
    const auto s = graph_spectrum(g, config.kind);
    const auto clusters = cluster_multiplicities(s, config.tol_cluster);
    std::ostringstream os;
    if (config.json) {
      json j = to_json(s);
      json cl = json::array();
      for (const auto& c : clusters.clusters) cl.push_back({{"value", c.value}, {"multiplicity", c.multiplicity}});
      j["clusters"] = std::move(cl);
      os << j.dump(2) << '\n';
    } else {
      os << "kind: " << to_string(config.kind) << '\n' << "order: " << s.order() << '\n' << "eigenvalues:\n";
      for (double v : s.values) os << "  " << num(v) << '\n';
      os << "multiplicities:\n";
      for (const auto& c : clusters.clusters) os << "  " << num(c.value) << " x" << c.multiplicity << '\n';
    }
    emit(config, os.str(), out);
    return static_cast<int>(kSuccess);
  });
}

int cmd_stars(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto g = read_graph(config.input, config.format);
    const auto stars = find_stars(g);
    std::ostringstream os;
    if (config.json) {
      json arr = json::array();
      for (const auto& s : stars) {
        json j = to_json(s);
        const auto m = star_metrics(s);
        j["degree"] = m.degree;
        j["weight"] = m.weight;
        arr.push_back(std::move(j));
      }
      os << json{{"stars", std::move(arr)}}.dump(2) << '\n';
    } else {
      os << stars.size() << (stars.size() == 1 ? " star" : " stars") << '\n';
      for (const auto& s : stars) os << star_line(g, s) << '\n';
    }
    emit(config, os.str(), out);
    return static_cast<int>(kSuccess);
  });
}

int cmd_certify(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto g = read_graph(config.input, config.format);
    CertifyOptions options;
    options.residual_tol = config.tol_residual;
    options.cluster_tol = config.tol_cluster;
    options.match_tol = config.tol_contain;
    const auto report = certify(g, config.kind, options);
    std::ostringstream os;
    if (config.json) {
      os << to_json(report).dump(2) << '\n';
    } else {
      os << "certificate: " << to_string(report.kind) << '\n';
      if (report.predictions.empty()) os << "no stars found (vacuous pass)\n";
      for (const auto& p : report.predictions) {
        os << "prediction " << num(p.value) << " x" << p.required << " observed " << p.observed
           << " max_residual " << num(p.max_residual) << ' ' << (p.pass ? "PASS" : "FAIL") << '\n';
        for (const auto& s : p.stars) os << "  " << star_line(g, s) << '\n';
      }
      for (const auto& note : report.variance_notes) os << "note: " << note << '\n';
      os << "result: " << (report.pass() ? "PASS" : "FAIL") << '\n';
    }
    emit(config, os.str(), out);
    return static_cast<int>(report.pass() ? kSuccess : kCheckFailed);
  });
}

int cmd_deloop(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto g = read_graph(config.input, config.format);
    const auto result = deloop(g, config.q, config.mode);
    std::optional<VerificationReport> report;
    if (config.verify) report = verify_removal(g, result, verify_options(config));

    std::ostringstream os;
    if (config.json) {
      json j = to_json(result);
      if (!g.has_loops()) j["note"] = "no loops found";
      if (report) j["verification"] = to_json(*report);
      os << j.dump(2) << '\n';
    } else {
      os << "# mode: " << to_string(result.mode) << " q: " << result.q << " loops removed: " << result.loops_removed
         << '\n';
      if (!g.has_loops()) os << "# no loops found\n";
      write_edge_list(os, result.graph);
      if (report) write_verification_text(os, *report, "# ");
    }
    emit(config, os.str(), out);
    return report ? verification_exit(*report) : static_cast<int>(kSuccess);
  });
}

int cmd_verify(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto g = read_graph(config.input, config.format);
    DeloopResult result;
    if (config.result) {
      std::ifstream in(*config.result);
      if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + config.result->string() + "'");
      json j;
      try {
        in >> j;
      } catch (const json::exception& ex) {
        throw Error(ErrorKind::ParseError, std::string("deloop result is not valid JSON: ") + ex.what());
      }
      result = deloop_result_from_json(j);
    } else {
      result = deloop(g, config.q, config.mode);
    }
    const auto report = verify_removal(g, result, verify_options(config));
    std::ostringstream os;
    if (config.json)
      os << to_json(report).dump(2) << '\n';
    else
      write_verification_text(os, report, "");
    emit(config, os.str(), out);
    return verification_exit(report);
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Star detection, eigenvalue certificates and spectrum-preserving loop removal"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig config;
  std::string format_name;
  std::string kind_name = "adjacency";
  std::string mode_name = "adjacency_exact";
  std::string output;
  std::string result;

  app.add_option("--input", config.input, "Graph file (edge list or JSON)")->required();
  app.add_option("--format", format_name, "edgelist|json (default: by extension)")
      ->check(CLI::IsMember({"edgelist", "json"}));
  app.add_option("--kind", kind_name, "adjacency|laplacian|signless|normalized_laplacian|transition")
      ->check(CLI::IsMember({"adjacency", "laplacian", "signless", "signless_laplacian", "normalized_laplacian",
                             "normalized", "transition"}));
  app.add_option("--mode", mode_name, "adjacency_exact|transition_exact|paper_literal")
      ->check(CLI::IsMember({"adjacency_exact", "transition_exact", "paper_literal"}));
  app.add_option("--q", config.q, "Copies added per looped vertex")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
  app.add_option("--tol-residual", config.tol_residual)->check(CLI::PositiveNumber);
  app.add_option("--tol-cluster", config.tol_cluster)->check(CLI::PositiveNumber);
  app.add_option("--tol-contain", config.tol_contain)->check(CLI::PositiveNumber);
  app.add_flag("--json", config.json, "Emit JSON instead of text");
  app.add_option("--output", output, "Write the report here instead of standard output");
  app.add_flag("--verify", config.verify, "Verify the spectral claims after delooping");

  app.add_subcommand("spectrum", "Eigenvalues and multiplicities of a graph matrix");
  app.add_subcommand("stars", "List maximal (m,k,s)-stars");
  app.add_subcommand("certify", "Check predicted eigenvalue multiplicities");
  app.add_subcommand("deloop", "Replace looped vertices by cliques");
  auto* verify = app.add_subcommand("verify", "Verify a loop removal");
  verify->add_option("--result", result, "Saved deloop result JSON (default: deloop now)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  config.command = app.get_subcommands().front()->get_name();
  if (!format_name.empty()) config.format = parse_graph_format(format_name);
  config.kind = *parse_matrix_kind(kind_name);
  config.mode = *parse_scaling_mode(mode_name);
  if (!output.empty()) config.output = output;
  if (!result.empty()) config.result = result;

  if (config.command == "spectrum") return cmd_spectrum(config, out, err);
  if (config.command == "stars") return cmd_stars(config, out, err);
  if (config.command == "certify") return cmd_certify(config, out, err);
  if (config.command == "deloop") return cmd_deloop(config, out, err);
  return cmd_verify(config, out, err);
}

}  // namespace starloop::cli
