#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "starloop/io.hpp"
#include "starloop/loop_removal.hpp"
#include "starloop/spectra.hpp"

namespace starloop::cli {

enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,
  kInputError = 2,
  kIncompatible = 3,
};

struct CliConfig {
  std::string command;
  std::filesystem::path input;
  std::optional<GraphFormat> format;
  MatrixKind kind = MatrixKind::adjacency;
  ScalingMode mode = ScalingMode::adjacency_exact;
  std::size_t q = 1;
  double tol_residual = tolerance::residual;
  double tol_cluster = tolerance::cluster;
  double tol_contain = tolerance::containment;
  bool json = false;
  std::optional<std::filesystem::path> output;
  bool verify = false;
  std::optional<std::filesystem::path> result;  // `verify` only: a saved deloop result
};

int cmd_spectrum(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_stars(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_certify(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_deloop(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv, dispatches, and maps library errors onto the exit-code contract.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes via a temporary sibling file and rename.
void write_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace starloop::cli
