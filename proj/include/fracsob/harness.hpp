#pragma once

// Experiment configuration, result tables, the command implementations behind the CLI
// and the acceptance runner.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fracsob::harness {

struct ExperimentConfig {
  std::string command = "pinsker";
  double beta = 1.0;
  double L = 1.0;
  double n = 1e6;
  std::vector<double> n_list = {1e3, 1e4, 1e5};
  std::size_t reps = 400;
  std::string density = "gaussian";
  double fill = 0.5;
  double eps = 0.01;
  std::string variance = "2A";
  std::size_t trials = 10000;
  std::vector<double> A_list = {10, 20, 40};
  double A = 4.0;
  std::size_t budget = 1000;
  std::uint64_t seed = 20240611;
  unsigned workers = 0;
  std::size_t grid_points = 0;  // 0 selects the command default
  double padding = 4.0;
  std::string suite = "primary";
  int criterion = 0;            // 0 runs the whole suite
  std::string out;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Keys in serialization order, with their type tags.
std::vector<std::pair<std::string, std::string>> config_keys();

/// Lines of the form `key:type = value`; doubles carry 17 significant digits.
std::string serialize(const ExperimentConfig& config);
/// Parse over `base`; unknown keys, type mismatches and malformed values are parse errors.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});
/// Set one field from its string form (CLI flags and environment use this path).
void set_field(ExperimentConfig& config, std::string_view key, std::string_view value);
/// Apply FRACSOB_<KEY> variables (key upper-cased) through `getenv`.
void apply_environment(ExperimentConfig& config,
                       const std::function<const char*(const char*)>& getenv);

/// FNV-1a 64 over the serialized config, excluding `out` and `workers`.
std::uint64_t config_hash(const ExperimentConfig& config);

/// Named real columns with deterministic row order and `#` metadata lines.
class ResultTable {
 public:
  ResultTable() = default;
  explicit ResultTable(std::vector<std::string> columns);

  void add_row(std::vector<double> row);
  void set_meta(const std::string& key, const std::string& value);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& meta() const noexcept { return meta_; }
  std::vector<double> column(const std::string& name) const;
  double at(std::size_t row, const std::string& name) const;

  void write(std::ostream& out) const;
  /// Header and rows only, for determinism comparisons.
  std::string body() const;
  static ResultTable read(std::istream& in);

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::pair<std::string, std::string>> meta_;
};

struct CommandOutput {
  ResultTable table;
  std::string summary;
  int exit_code = 0;
};

/// Adds config, config hash, seed, version and timestamp lines to `table`.
void stamp_metadata(ResultTable& table, const ExperimentConfig& config);

CommandOutput run_pinsker(const ExperimentConfig& config);
CommandOutput run_kernel(const ExperimentConfig& config);
CommandOutput run_risk(const ExperimentConfig& config);
CommandOutput run_lower_bound(const ExperimentConfig& config);
CommandOutput run_theorem2(const ExperimentConfig& config);
CommandOutput run_accept(const ExperimentConfig& config, std::ostream& log);

/// Dispatch on config.command.
CommandOutput execute(const ExperimentConfig& config, std::ostream& log);
/// Dispatch and write the table to config.out (or `out` when empty).
int run_command(const ExperimentConfig& config, std::ostream& out, std::ostream& log);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

std::vector<int> criterion_ids();
CriterionResult run_criterion(int id, const ExperimentConfig& base);
/// One `PASS|FAIL` line per criterion.
std::string format_result(const CriterionResult& r);

}  // namespace fracsob::harness
