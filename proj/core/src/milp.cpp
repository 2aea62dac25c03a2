#include "intrec/milp.hpp"

#include <chrono>
#include <set>

#include "intrec/errors.hpp"

namespace intrec {

namespace {

struct Node {
  BoundVectors bounds;
  Rational bound;  // parent LP value, minimisation sense
  std::size_t depth = 0;
  std::size_t id = 0;
  std::shared_ptr<const Tableau> warm;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) {
      return a.bound < b.bound;
    }
    if (a.depth != b.depth) {
      return a.depth > b.depth;
    }
    return a.id < b.id;
  }
};

// True when every integer point of the model has an integral objective.
bool integral_objective(const LpModel& model) {
  for (std::size_t j = 0; j < model.num_vars(); ++j) {
    const auto& c = model.objective[j];
    if (sgn(c) == 0) {
      continue;
    }
    if (!model.integer[j] || c.get_den() != 1) {
      return false;
    }
  }
  return true;
}

Rational half_distance(const Rational& v) {
  Rational frac = v - Rational(floor_of(v));
  return abs(frac - Rational(1, 2));
}

}  // namespace

SolveResult solve_milp(const LpModel& model, const MilpOptions& options) {
  model.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = model.num_vars();
  BoundVectors root{model.lower, model.upper};
  for (std::size_t j = 0; j < n; ++j) {
    if (!model.integer[j]) {
      continue;
    }
    if (!root.lower[j] || !root.upper[j]) {
      throw UnboundedIntegral("integral variable '" + model.names[j] +
                              "' needs finite lower and upper bounds");
    }
    root.lower[j] = Rational(ceil_of(*root.lower[j]));
    root.upper[j] = Rational(floor_of(*root.upper[j]));
  }

  const bool maximize = model.sense == Sense::Maximize;
  const bool round_bounds = integral_objective(model);
  auto key_of = [&](const Rational& v) { return maximize ? Rational(-v) : v; };
  // Smallest objective (min sense) an integer point under this LP bound can reach.
  auto effective = [&](const Rational& key) {
    return round_bounds ? Rational(ceil_of(key)) : key;
  };
  std::optional<Rational> cutoff_key;
  if (options.cutoff) {
    cutoff_key = key_of(*options.cutoff);
  }

  const SimplexEngine engine(model, options.simplex);
  SolveResult res;
  std::optional<Rational> incumbent_key;
  std::optional<RationalVector> incumbent;
  std::shared_ptr<const Tableau> root_tableau;

  std::set<Node, NodeOrder> open;
  std::size_t next_id = 0;
  open.insert(Node{root, Rational(0), 0, next_id++, nullptr});
  bool root_done = false;
  bool stopped = false;
  bool limit_hit = false;

  while (!open.empty()) {
    if (options.time_limit > 0) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      if (elapsed.count() > options.time_limit) {
        limit_hit = true;
        break;
      }
    }
    if (options.node_limit > 0 && res.nodes_explored >= options.node_limit) {
      limit_hit = true;
      break;
    }
    Node node = std::move(open.extract(open.begin()).value());
    if (root_done && incumbent_key && effective(node.bound) >= *incumbent_key) {
      continue;
    }
    ++res.nodes_explored;
    const LpOutcome lp = engine.solve(node.bounds, node.warm);
    res.lp_iterations += lp.iterations;
    if (!root_done) {
      root_done = true;
      if (lp.status == SolveStatus::Unbounded) {
        res.status = SolveStatus::Unbounded;
        return res;
      }
      root_tableau = lp.tableau;
    }
    if (lp.status != SolveStatus::Optimal) {
      continue;
    }
    const Rational key = key_of(lp.value);
    if (incumbent_key && effective(key) >= *incumbent_key) {
      continue;
    }

    std::size_t branch = n;
    Rational best_distance;
    for (std::size_t j = 0; j < n; ++j) {
      if (!model.integer[j] || lp.x[j].get_den() == 1) {
        continue;
      }
      const Rational dist = half_distance(lp.x[j]);
      if (branch == n || dist < best_distance) {
        branch = j;
        best_distance = dist;
      }
    }
    if (branch == n) {
      incumbent_key = key;
      incumbent = lp.x;
      if (cutoff_key && key < *cutoff_key) {
        stopped = true;
        break;
      }
      continue;
    }

    const auto& warm = open.size() < options.warm_frontier_limit ? lp.tableau : root_tableau;
    Node down{node.bounds, key, node.depth + 1, next_id++, warm};
    down.bounds.upper[branch] = Rational(floor_of(lp.x[branch]));
    Node up{std::move(node.bounds), key, node.depth + 1, next_id++, warm};
    up.bounds.lower[branch] = Rational(ceil_of(lp.x[branch]));
    open.insert(std::move(down));
    open.insert(std::move(up));
  }

  if (incumbent) {
    res.value = maximize ? Rational(-*incumbent_key) : *incumbent_key;
    res.solution = std::move(incumbent);
  }
  if (stopped) {
    res.status = SolveStatus::Feasible;
  } else if (limit_hit) {
    res.status = SolveStatus::LimitReached;
    if (!open.empty()) {
      const Rational b = open.begin()->bound;
      res.bound = maximize ? Rational(-b) : b;
    }
  } else {
    res.status = incumbent ? SolveStatus::Optimal : SolveStatus::Infeasible;
  }
  return res;
}

}  // namespace intrec
