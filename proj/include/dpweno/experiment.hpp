#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpweno/diagnostics.hpp"
#include "dpweno/grid.hpp"
#include "dpweno/time_integration.hpp"

namespace dpweno {

enum class Equation { Dp, MuDp };

std::string to_string(Equation eq);
Equation equation_from_string(const std::string& name);

/// Semi-discrete operator of one equation on one grid, with the auxiliary field for output.
struct Solver {
  Rhs rhs;
  std::function<StateField(const StateField&)> auxiliary;
};

Solver make_solver(Equation eq, const WenoConfig& cfg, const UniformGrid& grid);

enum class ReferenceKind {
  Exact,     // closed form or particle ODE
  SelfFine,  // MR-WENO7 on 4n points, restricted
  SelfPair,  // same scheme on 2n points, restricted
  None,
};

std::string to_string(ReferenceKind kind);
ReferenceKind reference_from_string(const std::string& name);

struct RunConfig {
  std::string name;
  Equation equation = Equation::Dp;
  Scheme scheme = Scheme::Weno5Simple;
  double x_min = 0.0;
  double x_max = 1.0;
  std::vector<int> n{160};
  GridLayout layout = GridLayout::Nodes;
  double t_end = 1.0;
  std::vector<double> snapshots;  // extra output times; t_end is always written
  double cfl = 0.3;
  DtMode dt_mode = DtMode::Linear;
  std::string ic;
  std::map<std::string, std::vector<double>> ic_params;
  std::optional<std::array<double, 3>> weights_simple;
  std::map<int, std::vector<double>> weights_mr;  // row r -> gamma_{r,1..r}
  ReferenceKind reference = ReferenceKind::None;
  std::string output_dir;  // relative to the output root; defaults to name

  bool operator==(const RunConfig&) const = default;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  WenoConfig weno() const;
  /// Parameter value with a default; throws if a present key has the wrong length.
  double param(const std::string& key, double fallback) const;
  std::vector<double> params(const std::string& key) const;
};

/// Flat "key = value" text, '#' comments, comma-separated lists.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& cfg);

/// Built-in experiments.
std::vector<RunConfig> experiment_catalog();
std::optional<RunConfig> find_experiment(const std::string& name);

/// Names of the initial conditions understood by initial_field.
std::vector<std::string> known_initial_conditions();

struct RunOptions {
  std::filesystem::path output_root = "output";
  std::filesystem::path profile_cache;  // empty: <output_root>/cache/mu_profile.bin
  bool write_files = true;
};

/// Initial data of the configured problem on a grid.
StateField initial_field(const RunConfig& cfg, const UniformGrid& grid, const RunOptions& opts = {});
/// Exact solution at time t when the initial condition has one.
std::optional<StateField> exact_field(const RunConfig& cfg, const UniformGrid& grid, double t);

struct GridRun {
  int n = 0;
  long steps = 0;
  double seconds = 0.0;
  double conserved_initial = 0.0;  // dx * sum u
  double conserved_final = 0.0;
  std::vector<double> times;
  std::vector<StateField> snapshots;
  std::vector<StateField> auxiliary;  // q at each snapshot
  std::optional<ErrorNorms> error;  // at t_end against the reference

  double conservation_drift() const;
};

struct RunResult {
  RunConfig config;
  std::vector<GridRun> runs;
  std::vector<ErrorReport> table;  // convergence mode only
  std::filesystem::path directory;
};

/// Runs every n of the config and writes snapshot CSVs and metadata.json.
RunResult run(const RunConfig& cfg, const RunOptions& opts = {});
/// As run, plus convergence.csv with L1/Linf errors and orders at t_end.
RunResult run_convergence(const RunConfig& cfg, const RunOptions& opts = {});

}  // namespace dpweno
