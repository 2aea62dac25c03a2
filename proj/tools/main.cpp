#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "intrec/conditions.hpp"
#include "intrec/errors.hpp"
#include "intrec/experiment.hpp"
#include "intrec/formulations.hpp"
#include "intrec/io.hpp"
#include "intrec/linalg.hpp"
#include "intrec/milp.hpp"
#include "intrec/oracle.hpp"
#include "intrec/support.hpp"

using namespace intrec;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kLimit = 3;

struct Options {
  std::string matrix;
  std::string rhs;
  std::string set;
  std::string lower;
  std::string upper;
  std::string objective = "l0";
  std::size_t sparsity = 0;
  std::size_t order = 0;
  std::uint64_t seed = 0;
  double time_limit = 3600;
  std::string method = "auto";
  std::string format = "json";
  bool deterministic = false;
  std::string output;

  // solve
  bool unique = false;
  // check-nsp
  std::string variant = "nsp";
  std::string support;
  // check-individual
  std::string point;
  // delta-ary
  std::string value;
  // gen / run
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string grid;
  std::string experiment = "recovery";
  bool binary_search = false;
  // reproduce
  std::string table = "II";
  std::string scale = "desk";
};

RationalMatrix need_matrix(const Options& o) {
  if (o.matrix.empty()) {
    throw PreconditionError("--matrix is required");
  }
  return load_matrix(o.matrix);
}

RationalVector vector_arg(const std::string& text, std::size_t n, const char* what) {
  RationalVector v = std::filesystem::is_regular_file(text) ? load_vector(text) : parse_vector(text);
  if (v.size() == 1 && n != 1) {
    v.assign(n, v.front());
  }
  if (v.size() != n) {
    throw DimensionError(std::string(what) + " has length " + std::to_string(v.size()) +
                         ", expected " + std::to_string(n));
  }
  return v;
}

ConstraintSet set_arg(const Options& o, std::size_t n) {
  std::optional<RationalVector> lower;
  std::optional<RationalVector> upper;
  if (!o.lower.empty()) {
    lower = vector_arg(o.lower, n, "--lower");
  }
  if (!o.upper.empty()) {
    upper = vector_arg(o.upper, n, "--upper");
  }
  if (o.set == "binary") {
    return ConstraintSet::binary(n);
  }
  const std::string kind = o.set.empty() ? "Z+" : o.set;
  return ConstraintSet::from_rational_bounds(parse_set_kind(kind), n, lower, upper);
}

std::vector<std::size_t> list_arg(const std::string& text) {
  // "1,2,5" or "from:to" or "from:to:step"
  std::vector<std::size_t> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::size_t> parts;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ':')) {
      parts.push_back(std::stoul(item));
    }
    if (parts.size() < 2 || parts.size() > 3 || (parts.size() == 3 && parts[2] == 0)) {
      throw ParseError("range must be from:to or from:to:step");
    }
    const std::size_t step = parts.size() == 3 ? parts[2] : 1;
    for (std::size_t s = parts[0]; s <= parts[1]; s += step) {
      out.push_back(s);
    }
    return out;
  }
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) {
      out.push_back(std::stoul(item));
    }
  }
  return out;
}

Support support_arg(const std::string& text, std::size_t n) {
  std::vector<std::size_t> indices;
  for (auto i : list_arg(text)) {
    if (i == 0 || i > n) {
      throw PreconditionError("support index " + std::to_string(i) + " out of range 1.." +
                              std::to_string(n));
    }
    indices.push_back(i - 1);
  }
  return Support(indices);
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
  } else {
    write_file(o.output, text);
  }
}

std::string strings_of(const RationalVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += (i ? " " : "") + to_string(v[i]);
  }
  return out;
}

json json_vector(const RationalVector& v) {
  json j = json::array();
  for (const auto& x : v) {
    j.push_back(to_string(x));
  }
  return j;
}

json json_matrix(const IntegerMatrix& a) {
  json j = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < a.cols(); ++k) {
      row.push_back(to_string(a(i, k)));
    }
    j.push_back(row);
  }
  return j;
}

int verdict_exit(const GoodnessVerdict& v) {
  if (!v.conclusive) {
    return kLimit;
  }
  return v.good ? kOk : kNegative;
}

std::string verdict_csv(const GoodnessVerdict& v) {
  std::string out = "verdict,route,witness,support,partner\n";
  out += v.label() + "," + v.route + ",";
  out += v.witness ? strings_of(to_rational(*v.witness)) : "-";
  out += ",";
  out += v.support ? "\"" + v.support->to_string() + "\"" : "-";
  out += ",";
  out += v.partner ? strings_of(to_rational(*v.partner)) : "-";
  return out + "\n";
}

int emit_verdict(const Options& o, const GoodnessVerdict& v) {
  emit(o, o.format == "csv" ? verdict_csv(v) : verdict_to_json(v) + "\n");
  return verdict_exit(v);
}

int emit_flag(const Options& o, const std::string& key, bool value) {
  if (o.format == "csv") {
    emit(o, key + "\n" + (value ? "true" : "false") + "\n");
  } else {
    json j;
    j[key] = value;
    emit(o, j.dump(2) + "\n");
  }
  return value ? kOk : kNegative;
}

int emit_solve(const Options& o, const SolveResult& r, std::optional<std::size_t> count) {
  if (o.format == "csv") {
    std::string out = "status,value,solution,unique,nodes\n";
    out += to_string(r.status) + "," + (r.value ? to_string(*r.value) : "-") + "," +
           (r.solution ? strings_of(*r.solution) : "-") + "," +
           (r.unique ? (*r.unique ? "true" : "false") : "-") + "," +
           std::to_string(r.nodes_explored) + "\n";
    emit(o, out);
  } else {
    json j;
    j["status"] = to_string(r.status);
    j["value"] = r.value ? json(to_string(*r.value)) : json(nullptr);
    j["solution"] = r.solution ? json_vector(*r.solution) : json(nullptr);
    j["unique"] = r.unique ? json(*r.unique) : json(nullptr);
    j["nodes"] = r.nodes_explored;
    if (count) {
      j["optimal_count"] = *count;
    }
    emit(o, j.dump(2) + "\n");
  }
  return r.status == SolveStatus::LimitReached ? kLimit : kOk;
}

MilpOptions milp_options(const Options& o) {
  MilpOptions m;
  m.time_limit = o.time_limit;
  return m;
}

CheckOptions check_options(const Options& o) {
  CheckOptions c;
  c.method = parse_method(o.method);
  c.milp = milp_options(o);
  return c;
}

RecoveryInstance instance_arg(const Options& o) {
  auto a = need_matrix(o);
  if (o.rhs.empty()) {
    throw PreconditionError("--rhs is required");
  }
  auto b = vector_arg(o.rhs, a.rows(), "--rhs");
  auto x = set_arg(o, a.cols());
  return RecoveryInstance(std::move(a), std::move(b), std::move(x), parse_objective(o.objective));
}

int cmd_oracle_solve(const Options& o, const RecoveryInstance& inst) {
  EnumerationBudget budget;
  OracleResult r;
  if (inst.x.is_integral()) {
    r = brute_solve(inst, budget);
  } else if (inst.objective == Objective::L0 && !inst.x.is_bounded()) {
    r = brute_solve_continuous_l0(inst, budget);
  } else {
    throw Unsupported("the oracle solves bounded integral sets and continuous l0 over R or R+");
  }
  return emit_solve(o, r.result,
                    r.infinite_optima ? std::nullopt : std::optional<std::size_t>(r.optimal_count));
}

int cmd_solve(const Options& o) {
  const auto inst = instance_arg(o);
  if (parse_method(o.method) == Method::Oracle) {
    return cmd_oracle_solve(o, inst);
  }
  FormulationOptions fo;
  fo.derive_bounds = true;
  const auto rm = inst.objective == Objective::L0 ? build_p0(inst, fo) : build_p1(inst, fo);
  const auto opts = milp_options(o);
  auto r = solve_milp(rm.model, opts);
  if (r.solution) {
    const auto x = rm.signal(*r.solution);
    if (!inst.is_feasible(x)) {
      throw PreconditionError("solver returned an infeasible point");
    }
    if (o.unique && r.status == SolveStatus::Optimal) {
      r.unique = is_unique_optimum(rm.model, *r.solution, rm.signal_variables(), opts);
    }
    r.solution = x;
  }
  return emit_solve(o, r, std::nullopt);
}


int cmd_check_goodness(const Options& o) {
  const auto a = need_matrix(o);
  const auto x = set_arg(o, a.cols());
  const auto opts = check_options(o);
  const auto v = parse_objective(o.objective) == Objective::L0
                     ? is_s_good_l0(a, o.sparsity, x, opts)
                     : is_s_good_l1(a, o.sparsity, x, opts);
  return emit_verdict(o, v);
}

int cmd_check_nsp(const Options& o) {
  const auto a = need_matrix(o);
  const std::size_t n = a.cols();
  std::optional<Support> support;
  if (!o.support.empty()) {
    support = support_arg(o.support, n);
  }
  EnumerationBudget budget;
  if (o.variant == "split-nsp+") {
    const auto x = set_arg(o, n);
    return emit_verdict(
        o, split_nsp_plus_check(a, x.lower_vector(), x.upper_vector(), support, o.order, budget));
  }
  NspVariant variant;
  if (o.variant == "nsp") {
    variant = NspVariant::Nsp;
  } else if (o.variant == "nsp+") {
    variant = NspVariant::NspPlus;
  } else {
    throw ParseError("unknown variant '" + o.variant + "' (expected nsp, nsp+ or split-nsp+)");
  }
  auto v = set_arg(o, n);
  const auto query = support ? NspQuery::for_support(variant, std::move(v), *support)
                             : NspQuery::of_order(variant, std::move(v), o.order);
  return emit_verdict(o, nsp_check(a, query, budget));
}

int cmd_check_individual(const Options& o) {
  const auto a = need_matrix(o);
  if (o.point.empty()) {
    throw PreconditionError("--point is required");
  }
  const auto xhat = vector_arg(o.point, a.cols(), "--point");
  const auto x = set_arg(o, a.cols());
  return emit_verdict(o, indiv_recoverable(xhat, a, x, check_options(o)));
}

int cmd_spark(const Options& o) {
  const auto a = need_matrix(o);
  const auto value = spark(a, std::max<std::size_t>(kDefaultColumnGate, a.cols()));
  const std::string text = value ? std::to_string(*value) : "inf";
  if (o.format == "csv") {
    emit(o, "spark\n" + text + "\n");
  } else {
    json j;
    j["spark"] = value ? json(*value) : json("inf");
    emit(o, j.dump(2) + "\n");
  }
  return kOk;
}

int cmd_hnf(const Options& o) {
  const auto a = need_matrix(o);
  const auto h = hermite_normal_form(a);
  json j;
  j["rank"] = h.rank;
  j["h"] = json_matrix(h.h);
  j["u"] = json_matrix(h.u);
  json kernel = json::array();
  for (std::size_t c = h.rank; c < h.u.cols(); ++c) {
    json col = json::array();
    for (std::size_t i = 0; i < h.u.rows(); ++i) {
      col.push_back(to_string(h.u(i, c)));
    }
    kernel.push_back(col);
  }
  j["kernel_basis"] = kernel;
  if (o.format == "csv") {
    emit(o, matrix_to_csv(to_rational(h.h)));
  } else {
    emit(o, j.dump(2) + "\n");
  }
  return kOk;
}

int cmd_delta_ary(const Options& o) {
  if (o.upper.empty()) {
    throw PreconditionError("--upper is required");
  }
  const auto u = to_integer(parse_vector(std::filesystem::is_regular_file(o.upper)
                                             ? read_file(o.upper)
                                             : o.upper));
  const auto a = delta_ary_matrix(u);
  if (o.value.empty()) {
    emit(o, o.format == "csv" ? matrix_to_csv(a) : matrix_to_json(a) + "\n");
    return kOk;
  }
  const auto x = delta_ary_decode(a, parse_rational(o.value), u);
  const auto xr = to_rational(x);
  if (o.format == "csv") {
    emit(o, "x\n" + strings_of(xr) + "\n");
  } else {
    json j;
    j["x"] = json_vector(xr);
    emit(o, j.dump(2) + "\n");
  }
  return kOk;
}

ExperimentSpec spec_arg(const Options& o) {
  ExperimentSpec spec;
  spec.kind = parse_experiment_kind(o.experiment);
  if (!o.matrix.empty()) {
    spec.matrix = load_matrix(o.matrix);
  } else {
    spec.rows = o.rows;
    spec.cols = o.cols;
  }
  const std::size_t n = spec.matrix ? spec.matrix->cols() : spec.cols;
  spec.seed = o.seed;
  spec.grid = o.grid.empty() ? std::vector<std::size_t>{o.sparsity} : list_arg(o.grid);
  spec.objective = parse_objective(o.objective);
  spec.uniqueness_check = o.unique;
  spec.time_limit = o.time_limit;
  spec.deterministic = o.deterministic;
  spec.binary_search = o.binary_search;
  if (!o.set.empty() && o.set != "binary") {
    spec.set = set_arg(o, n);
  }
  return spec;
}

std::string render(const Options& o, const Table& t) {
  return o.format == "csv" ? t.to_csv() : t.to_json();
}

int cmd_gen(const Options& o) {
  const auto spec = spec_arg(o);
  spec.validate();
  const auto gen = gen_instance(spec, o.sparsity);
  json j;
  j["seed"] = std::to_string(spec.seed);
  j["s"] = o.sparsity;
  j["matrix"] = json::parse(matrix_to_json(gen.instance.a));
  j["rhs"] = json_vector(gen.instance.b);
  j["xtilde"] = json_vector(to_rational(gen.xtilde));
  j["set"] = gen.instance.x.describe();
  emit(o, j.dump(2) + "\n");
  return kOk;
}

int cmd_run(const Options& o) {
  const auto t = run_experiment(spec_arg(o));
  emit(o, render(o, t));
  return kOk;
}

int cmd_reproduce(const Options& o, bool seed_given, bool limit_given) {
  const auto table = parse_results_table(o.table);
  const auto scale = parse_scale(o.scale);
  auto spec = reproduction_spec(table, scale);
  if (seed_given) {
    spec.seed = o.seed;
  }
  if (limit_given) {
    spec.time_limit = o.time_limit;
  }
  if (!o.grid.empty()) {
    spec.grid = list_arg(o.grid);
  }
  spec.deterministic = o.deterministic;
  if (scale == Scale::Full) {
    std::cerr << "warning: full-scale instances are hard to solve; expect very long runtimes\n";
  }
  emit(o, render(o, reproduce(table, scale, &spec)));
  return kOk;
}

int cmd_oracle(const Options& o) {
  if (!o.rhs.empty()) {
    return cmd_oracle_solve(o, instance_arg(o));
  }
  const auto a = need_matrix(o);
  const auto x = set_arg(o, a.cols());
  const auto v = parse_objective(o.objective) == Objective::L0
                     ? brute_goodness(a, o.sparsity, x)
                     : brute_goodness_l1(a, o.sparsity, x);
  return emit_verdict(o, v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact sparse recovery of integer-valued signals"};
  app.require_subcommand(1);
  Options o;

  const auto add_matrix = [&](CLI::App* c) { c->add_option("--matrix", o.matrix, "Matrix file (JSON or CSV)"); };
  const auto add_set = [&](CLI::App* c) {
    c->add_option("--set", o.set,
                  "Signal set: Z, Z+, box, symbox, nnbox, Rbox, R+, R or binary "
                  "(default Z+; binary for experiments)");
    c->add_option("--lower", o.lower, "Lower bounds: file, list or scalar");
    c->add_option("--upper", o.upper, "Upper bounds: file, list or scalar");
  };
  const auto add_common = [&](CLI::App* c) {
    c->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    c->add_option("--output,-o", o.output, "Write output to this file");
    c->add_option("--time-limit", o.time_limit, "Seconds per solve")->capture_default_str();
    c->add_flag("--deterministic", o.deterministic, "Byte-stable output (no wall times)");
  };
  const auto add_method = [&](CLI::App* c) {
    c->add_option("--method", o.method, "auto, oracle, milp, spark or lp")->capture_default_str();
  };

  auto* solve = app.add_subcommand("solve", "Solve P0 or P1 over X");
  add_matrix(solve);
  add_set(solve);
  add_common(solve);
  add_method(solve);
  solve->add_option("--rhs", o.rhs, "Right-hand side: file or list");
  solve->add_option("--objective", o.objective, "l0 or l1")->capture_default_str();
  solve->add_flag("--unique", o.unique, "Also decide whether the optimum is unique");

  auto* good = app.add_subcommand("check-goodness", "Decide (s,X,0)- or (s,X,1)-goodness");
  add_matrix(good);
  add_set(good);
  add_common(good);
  add_method(good);
  good->add_option("--sparsity,-s", o.sparsity, "Sparsity level s")->required();
  good->add_option("--objective", o.objective, "l0 or l1")->capture_default_str();

  auto* nsp = app.add_subcommand("check-nsp", "Nullspace property over V");
  add_matrix(nsp);
  add_set(nsp);
  add_common(nsp);
  nsp->add_option("--variant", o.variant, "nsp, nsp+ or split-nsp+")->capture_default_str();
  nsp->add_option("--order", o.order, "Check every support of size at most this");
  nsp->add_option("--support", o.support, "One support, 1-based list");

  auto* indiv = app.add_subcommand("check-individual", "Is x̂ the unique P1 minimiser");
  add_matrix(indiv);
  add_set(indiv);
  add_common(indiv);
  add_method(indiv);
  indiv->add_option("--point", o.point, "x̂: file or list")->required();

  auto* sp = app.add_subcommand("spark", "Smallest number of dependent columns");
  add_matrix(sp);
  add_common(sp);

  auto* uni = app.add_subcommand("unimodular", "Every basis has determinant ±1");
  add_matrix(uni);
  add_common(uni);
  auto* tu = app.add_subcommand("tu", "Every square submatrix has determinant 0 or ±1");
  add_matrix(tu);
  add_common(tu);
  auto* hnf = app.add_subcommand("hnf", "Hermite normal form and integral kernel basis");
  add_matrix(hnf);
  add_common(hnf);

  auto* delta = app.add_subcommand("delta-ary", "δ-ary matrix, or decode a right-hand side");
  add_common(delta);
  delta->add_option("--upper", o.upper, "Upper bounds: file or list")->required();
  delta->add_option("--value", o.value, "Right-hand side to decode");

  const auto add_experiment = [&](CLI::App* c) {
    add_matrix(c);
    add_set(c);
    add_common(c);
    c->add_option("--rows,-m", o.rows, "Rows of the random binary matrix");
    c->add_option("--cols,-n", o.cols, "Columns of the random binary matrix");
    c->add_option("--seed", o.seed, "Random seed");
    c->add_option("--objective", o.objective, "l0 or l1")->capture_default_str();
  };
  auto* gen = app.add_subcommand("gen", "Generate a seeded instance and its generating signal");
  add_experiment(gen);
  gen->add_option("--sparsity,-s", o.sparsity, "Sparsity level s")->required();

  auto* run = app.add_subcommand("run", "Run an experiment over a sparsity grid");
  add_experiment(run);
  run->add_option("--experiment", o.experiment, "recovery, goodness or comparison")
      ->capture_default_str();
  run->add_option("--grid", o.grid, "Sparsity grid: list or from:to[:step]");
  run->add_option("--sparsity,-s", o.sparsity, "Single sparsity level");
  run->add_flag("--unique", o.unique, "Check uniqueness of each optimum");
  run->add_flag("--binary-search", o.binary_search, "Goodness: bisect for the threshold");

  auto* rep = app.add_subcommand("reproduce", "Rerun a results table");
  add_common(rep);
  rep->add_option("--table", o.table, "I, II or III")->capture_default_str();
  rep->add_option("--scale", o.scale, "desk or full")->capture_default_str();
  auto* rep_seed = rep->add_option("--seed", o.seed, "Override the preset seed");
  rep->add_option("--grid", o.grid, "Override the sparsity grid");

  auto* orc = app.add_subcommand("oracle", "Brute-force solve or goodness check");
  add_matrix(orc);
  add_set(orc);
  add_common(orc);
  orc->add_option("--rhs", o.rhs, "Solve for this right-hand side");
  orc->add_option("--sparsity,-s", o.sparsity, "Goodness level s");
  orc->add_option("--objective", o.objective, "l0 or l1")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return cmd_solve(o);
    if (*good) return cmd_check_goodness(o);
    if (*nsp) return cmd_check_nsp(o);
    if (*indiv) return cmd_check_individual(o);
    if (*sp) return cmd_spark(o);
    if (*uni) return emit_flag(o, "unimodular", is_unimodular(need_matrix(o), 64));
    if (*tu) return emit_flag(o, "totally_unimodular", is_totally_unimodular(need_matrix(o), 64));
    if (*hnf) return cmd_hnf(o);
    if (*delta) return cmd_delta_ary(o);
    if (*gen) return cmd_gen(o);
    if (*run) return cmd_run(o);
    if (*rep) return cmd_reproduce(o, rep_seed->count() > 0, rep->get_option("--time-limit")->count() > 0);
    if (*orc) return cmd_oracle(o);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kLimit;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
