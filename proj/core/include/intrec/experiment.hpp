#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "intrec/constraint_set.hpp"
#include "intrec/instance.hpp"
#include "intrec/matrix.hpp"

namespace intrec {

/// Unbiased integer in [0, bound) from a 64-bit Mersenne twister, by
/// rejection; identical across standard libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// I.i.d. fair-coin 0/1 entries; all-zero rows are resampled.
RationalMatrix random_binary_matrix(std::size_t m, std::size_t n, std::uint64_t seed);

enum class ExperimentKind {
  /// Solve P0 or P1 for b = A x̃ at each sparsity level.
  Recovery,
  /// Goodness sweep over s with the binary, unit-box or C(l,u) model.
  Goodness,
  /// P0 and P1 over the integral set and its continuous relaxation.
  Comparison,
};

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string& text);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::Recovery;
  /// File-sourced matrix; a random binary rows×cols matrix otherwise.
  std::optional<RationalMatrix> matrix;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> grid;
  /// Signal set; must be bounded for generation.
  std::optional<ConstraintSet> set;
  Objective objective = Objective::L0;
  bool uniqueness_check = false;
  /// Seconds per job; zero or negative disables the limit.
  double time_limit = 3600;
  /// Omit wall times so that output is byte-stable.
  bool deterministic = false;
  /// Goodness: binary search for the largest good s instead of a sweep.
  bool binary_search = false;

  /// Throws PreconditionError on an invalid spec.
  void validate() const;
  [[nodiscard]] RationalMatrix measurement_matrix() const;
  [[nodiscard]] ConstraintSet signal_set() const;
};

struct GeneratedInstance {
  RecoveryInstance instance;
  IntVector xtilde;
};

/// Support uniform over size-s subsets; values uniform over the nonzero
/// admissible values of X on the support. Seeded per (seed, s).
GeneratedInstance gen_instance(const ExperimentSpec& spec, std::size_t s);
GeneratedInstance gen_instance(const ExperimentSpec& spec, const RationalMatrix& a, std::size_t s);

struct ResultRow {
  std::size_t s = 0;
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Rational> value_l0;
  std::optional<Rational> value_l1;
  std::optional<bool> recovered;
  std::optional<bool> unique;
  double seconds = 0;
  std::size_t nodes = 0;
};

struct GoodnessRow {
  std::size_t s = 0;
  /// "good", "not-good" or "unknown".
  std::string verdict;
  std::optional<Rational> best_objective;
  double seconds = 0;
  std::size_t nodes = 0;
};

struct SolveCell {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Rational> l0;
  std::optional<Rational> l1;
  double seconds = 0;
};

struct ComparisonRow {
  std::size_t s = 0;
  SolveCell p0_int;
  SolveCell p0_real;
  SolveCell p1_int;
  SolveCell p1_real;
};

std::vector<ResultRow> run_recovery(const ExperimentSpec& spec);
std::vector<GoodnessRow> run_goodness(const ExperimentSpec& spec);
std::vector<ComparisonRow> run_comparison(const ExperimentSpec& spec);

/// A rendered result table.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::map<std::string, std::string> meta;

  [[nodiscard]] std::string to_csv() const;
  [[nodiscard]] std::string to_json() const;
};

Table run_experiment(const ExperimentSpec& spec);

enum class ResultsTable { I, II, III };
enum class Scale { Desk, Full };

ResultsTable parse_results_table(const std::string& text);
Scale parse_scale(const std::string& text);

/// The preset experiment behind a table: desk scale uses small seeded
/// matrices; full scale uses the original sizes and grids.
ExperimentSpec reproduction_spec(ResultsTable table, Scale scale);

/// Runs the preset and renders it in the column layout of the table.
Table reproduce(ResultsTable table, Scale scale, const ExperimentSpec* overrides = nullptr);

}  // namespace intrec
