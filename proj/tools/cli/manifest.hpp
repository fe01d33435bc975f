#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "curenet/rational.hpp"

namespace curenet::cli {

enum class RunKind { Simulate, IntegralityGap };

/// One `[run]` block. Values stay textual until the run is executed so that
/// generator and policy errors surface with the block's line number.
struct RunSpec {
  std::size_t line = 0;  ///< line of the `[run]` header
  std::string name;
  RunKind kind = RunKind::Simulate;

  // simulate
  std::string graph;  ///< generator spec ("star:31") or "file:PATH"
  std::string init = "all";
  std::string policy = "cure";
  std::vector<Rational> budgets;
  std::size_t replicas = 1;
  std::optional<std::uint64_t> seed;
  std::optional<double> time_cap;
  std::optional<Rational> alpha;
  std::string balanced_cut = "auto";
  std::string adversary = "uniform";
  std::string groups;  ///< inline indices or "file:PATH"
  std::vector<std::size_t> checkpoints;
  Rational gamma{1};
  bool idle_waiting = false;

  // integrality-gap
  std::size_t edges = 0;
  Rational threshold;
};

struct Manifest {
  std::optional<std::string> out_dir;
  std::size_t threads = 0;
  std::vector<RunSpec> runs;
};

/// Flat `key = value` lines, '#' comments, repeated `[run]` blocks. Keys
/// before the first block are global. Throws ParseError with line and column.
Manifest parse_manifest(std::istream& in);
Manifest parse_manifest_file(const std::filesystem::path& path);

struct ManifestResult {
  std::size_t runs = 0;
  std::size_t violations = 0;
};

/// Executes every run and writes runs.csv, gap.csv and extinction.svg into
/// `out_dir`. Relative graph/group file paths resolve against `base_dir`.
ManifestResult run_manifest(const Manifest& manifest, const std::filesystem::path& out_dir,
                            const std::filesystem::path& base_dir);

}  // namespace curenet::cli
