#include "intrec/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <json.hpp>
#include <limits>
#include <numeric>
#include <sstream>

#include "intrec/conditions.hpp"
#include "intrec/errors.hpp"
#include "intrec/formulations.hpp"
#include "intrec/milp.hpp"
#include "intrec/support.hpp"

namespace intrec {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t row_seed(std::uint64_t seed, std::size_t s) {
  // splitmix64 finaliser over (seed, s)
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(s) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

MilpOptions job_options(const ExperimentSpec& spec) {
  MilpOptions options;
  options.simplex.pricing = Pricing::Dantzig;
  options.time_limit = spec.time_limit;
  return options;
}

double remaining(const ExperimentSpec& spec, Clock::time_point start) {
  if (spec.time_limit <= 0) {
    return 0;
  }
  return std::max(spec.time_limit - seconds_since(start), 1e-3);
}

std::string format_seconds(double seconds, bool deterministic) {
  if (deterministic) {
    return "-";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", seconds);
  return buf;
}

std::string format_optional(const std::optional<Rational>& value) {
  return value ? to_string(*value) : "-";
}

std::string format_flag(const std::optional<bool>& value) {
  if (!value) {
    return "-";
  }
  return *value ? "true" : "false";
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) {
    return cell;
  }
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  return out + "\"";
}

void verify_point(const RecoveryInstance& instance, const RationalVector& x) {
  if (!instance.is_feasible(x)) {
    throw PreconditionError("solver returned a point violating Ax = b or x in X");
  }
}

SolveCell solve_cell(const RecoveryInstance& instance, const ExperimentSpec& spec) {
  SolveCell cell;
  const auto start = Clock::now();
  const auto rm =
      instance.objective == Objective::L0 ? build_p0(instance) : build_p1(instance);
  const auto result = solve_milp(rm.model, job_options(spec));
  cell.seconds = seconds_since(start);
  cell.status = result.status;
  if (result.solution) {
    const auto x = rm.signal(*result.solution);
    verify_point(instance, x);
    cell.l0 = Rational(static_cast<long>(l0_norm(x)));
    cell.l1 = l1_norm(x);
  }
  return cell;
}

std::vector<std::size_t> sorted_grid(const ExperimentSpec& spec) {
  auto grid = spec.grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

bool is_unit_box(const ConstraintSet& x) {
  if (x.kind() != ConstraintSet::Kind::BoxReals || !x.is_nonnegative()) {
    return false;
  }
  const auto u = x.upper_vector();
  return std::all_of(u.begin(), u.end(), [](const Integer& v) { return v == 1; });
}

GoodnessRow goodness_row(const RationalMatrix& a, const ConstraintSet& x, std::size_t s,
                         const ExperimentSpec& spec) {
  GoodnessRow row;
  row.s = s;
  const auto start = Clock::now();
  auto options = job_options(spec);
  options.cutoff = Rational(0);
  const auto classify = [&](const SolveResult& result, bool maximise) {
    row.nodes = result.nodes_explored;
    if (result.value) {
      row.best_objective = maximise ? *result.value : Rational(0);
    }
    const bool positive = result.value && *result.value > 0;
    if (result.status == SolveStatus::Optimal && !positive) {
      row.verdict = "good";
    } else if (positive) {
      row.verdict = "not-good";
    } else {
      row.verdict = "unknown";
    }
  };
  if (x.is_binary()) {
    classify(solve_milp(build_goodness_binary(a, s), options), true);
  } else if (is_unit_box(x)) {
    classify(solve_milp(build_goodness_unit_box(a, s), options), true);
  } else if (x.is_integral() && x.is_bounded()) {
    options.cutoff.reset();
    const auto result =
        solve_milp(build_goodness_general(a, s, x.lower_vector(), x.upper_vector()), options);
    row.nodes = result.nodes_explored;
    if (result.status == SolveStatus::Infeasible) {
      row.verdict = "good";
      row.best_objective = Rational(0);
    } else if (result.solution) {
      row.verdict = "not-good";
      RationalVector z(result.solution->begin(), result.solution->begin() + a.cols());
      row.best_objective = l1_norm(z);
    } else {
      row.verdict = "unknown";
    }
  } else {
    CheckOptions check;
    check.milp = options;
    const auto verdict = is_s_good_l0(a, s, x, check);
    row.verdict = verdict.label();
    if (verdict.conclusive) {
      row.best_objective =
          verdict.good ? Rational(0) : Rational(l1_norm(*verdict.witness));
    }
  }
  row.seconds = seconds_since(start);
  return row;
}

nlohmann::ordered_json meta_json(const std::map<std::string, std::string>& meta) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta) {
    j[k] = v;
  }
  return j;
}

std::string join_grid(const std::vector<std::size_t>& grid) {
  std::string out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out += (i ? " " : "") + std::to_string(grid[i]);
  }
  return out;
}

Table base_table(const ExperimentSpec& spec) {
  Table t;
  t.meta["experiment"] = to_string(spec.kind);
  if (spec.matrix) {
    t.meta["matrix"] = "file " + std::to_string(spec.matrix->rows()) + "x" +
                       std::to_string(spec.matrix->cols());
  } else {
    t.meta["matrix"] = "random-binary " + std::to_string(spec.rows) + "x" +
                       std::to_string(spec.cols);
  }
  t.meta["seed"] = std::to_string(spec.seed);
  t.meta["set"] = spec.signal_set().describe();
  t.meta["objective"] = to_string(spec.objective);
  t.meta["grid"] = join_grid(sorted_grid(spec));
  t.meta["signal_values"] = "uniform over nonzero admissible values on a uniform size-s support";
  t.meta["time_limit_s"] = format_seconds(spec.time_limit, false);
  return t;
}

}  // namespace

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) {
    throw PreconditionError("uniform_below: empty range");
  }
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw = rng();
  while (draw >= limit) {
    draw = rng();
  }
  return draw % bound;
}

RationalMatrix random_binary_matrix(std::size_t m, std::size_t n, std::uint64_t seed) {
  if (m == 0 || n == 0) {
    throw PreconditionError("random matrix needs positive dimensions");
  }
  std::mt19937_64 rng(seed);
  RationalMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    bool nonzero = false;
    while (!nonzero) {
      for (std::size_t j = 0; j < n; ++j) {
        const bool bit = (rng() >> 63) != 0;
        a(i, j) = bit ? 1 : 0;
        nonzero = nonzero || bit;
      }
    }
  }
  return a;
}

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Recovery:
      return "recovery";
    case ExperimentKind::Goodness:
      return "goodness";
    case ExperimentKind::Comparison:
      return "comparison";
  }
  return "?";
}

ExperimentKind parse_experiment_kind(const std::string& text) {
  if (text == "recovery") {
    return ExperimentKind::Recovery;
  }
  if (text == "goodness") {
    return ExperimentKind::Goodness;
  }
  if (text == "comparison") {
    return ExperimentKind::Comparison;
  }
  throw ParseError("unknown experiment '" + text + "' (expected recovery, goodness or comparison)");
}

void ExperimentSpec::validate() const {
  const std::size_t n = matrix ? matrix->cols() : cols;
  if (!matrix && (rows == 0 || cols == 0)) {
    throw PreconditionError("random matrix source needs positive rows and columns");
  }
  if (matrix) {
    require_nonempty(*matrix, "experiment");
  }
  if (grid.empty()) {
    throw PreconditionError("sparsity grid is empty");
  }
  for (auto s : grid) {
    if (s > n) {
      throw PreconditionError("sparsity " + std::to_string(s) + " exceeds n = " +
                              std::to_string(n));
    }
  }
  if (set && set->dimension() != n) {
    throw DimensionError("constraint set dimension does not match the matrix");
  }
  if (kind != ExperimentKind::Goodness && !signal_set().is_bounded()) {
    throw MissingBounds("signal generation needs a bounded constraint set");
  }
  if (kind == ExperimentKind::Comparison && !signal_set().is_integral()) {
    throw PreconditionError("comparison experiment needs an integral box");
  }
}

RationalMatrix ExperimentSpec::measurement_matrix() const {
  return matrix ? *matrix : random_binary_matrix(rows, cols, seed);
}

ConstraintSet ExperimentSpec::signal_set() const {
  return set ? *set : ConstraintSet::binary(matrix ? matrix->cols() : cols);
}

GeneratedInstance gen_instance(const ExperimentSpec& spec, std::size_t s) {
  return gen_instance(spec, spec.measurement_matrix(), s);
}

GeneratedInstance gen_instance(const ExperimentSpec& spec, const RationalMatrix& a,
                               std::size_t s) {
  const std::size_t n = a.cols();
  if (s > n) {
    throw PreconditionError("sparsity exceeds n");
  }
  const auto x = spec.signal_set();
  if (!x.is_bounded()) {
    throw MissingBounds("signal generation needs a bounded constraint set");
  }
  std::mt19937_64 rng(row_seed(spec.seed, s));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = 0; i < s; ++i) {
    std::swap(order[i], order[i + uniform_below(rng, n - i)]);
  }
  std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(s));
  IntVector xt(n, Integer(0));
  for (std::size_t k = 0; k < s; ++k) {
    const std::size_t i = order[k];
    const Integer lo = *x.lower(i);
    const Integer hi = *x.upper(i);
    // nonzero integers in [lo, hi]: -|lo|..-1 then 1..hi
    const Integer count = hi - lo;
    const Integer pick(static_cast<unsigned long>(uniform_below(rng, count.get_ui())));
    xt[i] = pick < -lo ? Integer(lo + pick) : Integer(pick - (-lo) + 1);
  }
  RecoveryInstance instance(a, multiply(a, xt), x, spec.objective);
  return {std::move(instance), std::move(xt)};
}

std::vector<ResultRow> run_recovery(const ExperimentSpec& spec) {
  spec.validate();
  const auto a = spec.measurement_matrix();
  std::vector<ResultRow> rows;
  for (auto s : sorted_grid(spec)) {
    const auto gen = gen_instance(spec, a, s);
    ResultRow row;
    row.s = s;
    const auto start = Clock::now();
    const auto rm = spec.objective == Objective::L0 ? build_p0(gen.instance)
                                                    : build_p1(gen.instance);
    const auto result = solve_milp(rm.model, job_options(spec));
    row.seconds = seconds_since(start);
    row.status = result.status;
    row.nodes = result.nodes_explored;
    if (result.solution) {
      const auto x = rm.signal(*result.solution);
      verify_point(gen.instance, x);
      row.value_l0 = Rational(static_cast<long>(l0_norm(x)));
      row.value_l1 = l1_norm(x);
      if (result.status == SolveStatus::Optimal) {
        row.recovered = spec.objective == Objective::L0
                            ? *row.value_l0 == Rational(static_cast<long>(l0_norm(gen.xtilde)))
                            : x == to_rational(gen.xtilde);
      }
      if (spec.uniqueness_check && result.status == SolveStatus::Optimal) {
        auto options = job_options(spec);
        options.time_limit = remaining(spec, start);
        row.unique = is_unique_optimum(rm.model, *result.solution, rm.signal_variables(), options);
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<GoodnessRow> run_goodness(const ExperimentSpec& spec) {
  spec.validate();
  const auto a = spec.measurement_matrix();
  const auto x = spec.signal_set();
  const auto grid = sorted_grid(spec);
  std::vector<GoodnessRow> rows;
  if (!spec.binary_search) {
    for (auto s : grid) {
      rows.push_back(goodness_row(a, x, s, spec));
    }
    return rows;
  }
  // goodness at s implies goodness at every smaller s
  std::size_t lo = 0;
  std::size_t hi = grid.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    auto row = goodness_row(a, x, grid[mid], spec);
    const std::string verdict = row.verdict;
    rows.push_back(std::move(row));
    if (verdict == "good") {
      lo = mid + 1;
    } else if (verdict == "not-good") {
      hi = mid;
    } else {
      break;
    }
  }
  std::sort(rows.begin(), rows.end(),
            [](const GoodnessRow& p, const GoodnessRow& q) { return p.s < q.s; });
  return rows;
}

std::vector<ComparisonRow> run_comparison(const ExperimentSpec& spec) {
  spec.validate();
  const auto a = spec.measurement_matrix();
  const auto x = spec.signal_set();
  const auto relaxed = ConstraintSet::box_reals(x.lower_vector(), x.upper_vector());
  std::vector<ComparisonRow> rows;
  for (auto s : sorted_grid(spec)) {
    const auto gen = gen_instance(spec, a, s);
    const auto& b = gen.instance.b;
    ComparisonRow row;
    row.s = s;
    row.p0_int = solve_cell(RecoveryInstance(a, b, x, Objective::L0), spec);
    row.p0_real = solve_cell(RecoveryInstance(a, b, relaxed, Objective::L0), spec);
    row.p1_int = solve_cell(RecoveryInstance(a, b, x, Objective::L1), spec);
    row.p1_real = solve_cell(RecoveryInstance(a, b, relaxed, Objective::L1), spec);
    rows.push_back(row);
  }
  return rows;
}

std::string Table::to_csv() const {
  std::ostringstream out;
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << (i ? "," : "") << csv_escape(cells[i]);
    }
    out << '\n';
  };
  line(header);
  for (const auto& row : rows) {
    line(row);
  }
  return out.str();
}

std::string Table::to_json() const {
  nlohmann::ordered_json j;
  j["meta"] = meta_json(meta);
  j["columns"] = header;
  auto body = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json r;
    for (std::size_t i = 0; i < header.size() && i < row.size(); ++i) {
      r[header[i]] = row[i];
    }
    body.push_back(r);
  }
  j["rows"] = body;
  return j.dump(2) + "\n";
}

Table run_experiment(const ExperimentSpec& spec) {
  auto t = base_table(spec);
  const bool det = spec.deterministic;
  switch (spec.kind) {
    case ExperimentKind::Recovery:
      t.header = {"s", "status", "value_l0", "value_l1", "recovered", "unique", "time_s", "nodes"};
      for (const auto& r : run_recovery(spec)) {
        t.rows.push_back({std::to_string(r.s), to_string(r.status), format_optional(r.value_l0),
                          format_optional(r.value_l1), format_flag(r.recovered),
                          format_flag(r.unique), format_seconds(r.seconds, det),
                          std::to_string(r.nodes)});
      }
      break;
    case ExperimentKind::Goodness:
      t.header = {"s", "verdict", "best_objective", "time_s", "nodes"};
      for (const auto& r : run_goodness(spec)) {
        t.rows.push_back({std::to_string(r.s), r.verdict, format_optional(r.best_objective),
                          format_seconds(r.seconds, det), std::to_string(r.nodes)});
      }
      break;
    case ExperimentKind::Comparison:
      t.header = {"s",           "p0_int_l0",   "p0_int_l1",   "p0_int_time_s",
                  "p0_real_l0",  "p0_real_l1",  "p0_real_time_s", "p1_int_l0",
                  "p1_int_l1",   "p1_int_time_s", "p1_real_l0", "p1_real_l1",
                  "p1_real_time_s"};
      for (const auto& r : run_comparison(spec)) {
        std::vector<std::string> cells{std::to_string(r.s)};
        for (const auto* c : {&r.p0_int, &r.p0_real, &r.p1_int, &r.p1_real}) {
          cells.push_back(format_optional(c->l0));
          cells.push_back(format_optional(c->l1));
          cells.push_back(format_seconds(c->seconds, det));
        }
        t.rows.push_back(std::move(cells));
      }
      break;
  }
  return t;
}

ResultsTable parse_results_table(const std::string& text) {
  if (text == "I" || text == "1") {
    return ResultsTable::I;
  }
  if (text == "II" || text == "2") {
    return ResultsTable::II;
  }
  if (text == "III" || text == "3") {
    return ResultsTable::III;
  }
  throw ParseError("unknown table '" + text + "' (expected I, II or III)");
}

Scale parse_scale(const std::string& text) {
  if (text == "desk") {
    return Scale::Desk;
  }
  if (text == "full") {
    return Scale::Full;
  }
  throw ParseError("unknown scale '" + text + "' (expected desk or full)");
}

ExperimentSpec reproduction_spec(ResultsTable table, Scale scale) {
  ExperimentSpec spec;
  const bool desk = scale == Scale::Desk;
  const auto range = [](std::size_t from, std::size_t to, std::size_t step) {
    std::vector<std::size_t> g;
    for (std::size_t s = from; s <= to; s += step) {
      g.push_back(s);
    }
    return g;
  };
  switch (table) {
    case ResultsTable::I:
      spec.kind = ExperimentKind::Goodness;
      spec.rows = desk ? 12 : 32;
      spec.cols = desk ? 24 : 64;
      spec.seed = 1;
      spec.grid = desk ? range(1, 12, 1) : range(10, 18, 1);
      break;
    case ResultsTable::II:
      spec.kind = ExperimentKind::Recovery;
      spec.rows = desk ? 64 : 512;
      spec.cols = desk ? 128 : 1024;
      spec.seed = 2;
      spec.grid = desk ? range(5, 60, 5) : range(25, 1000, 25);
      if (!desk) {
        spec.grid.push_back(1024);
      }
      spec.uniqueness_check = true;
      break;
    case ResultsTable::III:
      spec.kind = ExperimentKind::Comparison;
      spec.rows = desk ? 16 : 32;
      spec.cols = desk ? 32 : 64;
      spec.seed = 3;
      spec.grid = desk ? range(2, 32, 2) : range(12, 64, 4);
      spec.set = ConstraintSet::uniform_box(spec.cols, 0, 2);
      break;
  }
  return spec;
}

Table reproduce(ResultsTable table, Scale scale, const ExperimentSpec* overrides) {
  const ExperimentSpec spec = overrides ? *overrides : reproduction_spec(table, scale);
  auto t = base_table(spec);
  t.meta["table"] = table == ResultsTable::I ? "I" : table == ResultsTable::II ? "II" : "III";
  t.meta["scale"] = scale == Scale::Desk ? "desk" : "full";
  const bool det = spec.deterministic;
  switch (table) {
    case ResultsTable::I:
      t.header = {"s", "best_objective", "time_s"};
      for (const auto& r : run_goodness(spec)) {
        const std::string value =
            r.verdict == "unknown" ? "inconclusive" : format_optional(r.best_objective);
        t.rows.push_back({std::to_string(r.s), value, format_seconds(r.seconds, det)});
      }
      break;
    case ResultsTable::II:
      t.header = {"s", "value", "time_s", "unique"};
      for (const auto& r : run_recovery(spec)) {
        const std::string value = r.status == SolveStatus::Optimal
                                      ? format_optional(r.value_l0)
                                      : "inconclusive";
        t.rows.push_back({std::to_string(r.s), value, format_seconds(r.seconds, det),
                          format_flag(r.unique)});
      }
      break;
    case ResultsTable::III: {
      t.header = {"s",           "p0_int_l0",  "p0_int_time_s", "p0_real_l0", "p0_real_time_s",
                  "p1_int_l0",   "p1_int_l1",  "p1_int_time_s", "p1_real_l0", "p1_real_l1"};
      const auto cell = [](const SolveCell& c, const std::optional<Rational>& v) {
        return c.status == SolveStatus::Optimal ? format_optional(v) : std::string("inconclusive");
      };
      for (const auto& r : run_comparison(spec)) {
        t.rows.push_back({std::to_string(r.s), cell(r.p0_int, r.p0_int.l0),
                          format_seconds(r.p0_int.seconds, det), cell(r.p0_real, r.p0_real.l0),
                          format_seconds(r.p0_real.seconds, det), cell(r.p1_int, r.p1_int.l0),
                          cell(r.p1_int, r.p1_int.l1), format_seconds(r.p1_int.seconds, det),
                          cell(r.p1_real, r.p1_real.l0), cell(r.p1_real, r.p1_real.l1)});
      }
      break;
    }
  }
  return t;
}

}  // namespace intrec
