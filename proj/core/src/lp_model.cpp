#include "intrec/lp_model.hpp"

#include <map>
#include <sstream>

#include "intrec/errors.hpp"

namespace intrec {

std::size_t LpModel::add_variable(std::string name, std::optional<Rational> lo,
                                  std::optional<Rational> hi, bool is_integer, Rational cost) {
  const std::size_t idx = objective.size();
  if (name.empty()) {
    name = "x" + std::to_string(idx + 1);
  }
  objective.push_back(std::move(cost));
  lower.push_back(std::move(lo));
  upper.push_back(std::move(hi));
  integer.push_back(is_integer);
  names.push_back(std::move(name));
  for (auto& row : rows) {
    row.coeffs.emplace_back(0);
  }
  return idx;
}

std::size_t LpModel::add_binary(std::string name, Rational cost) {
  return add_variable(std::move(name), Rational(0), Rational(1), true, std::move(cost));
}

void LpModel::add_row(const std::vector<std::pair<std::size_t, Rational>>& terms,
                      Relation relation, Rational rhs, std::string name) {
  RationalVector coeffs(num_vars());
  for (const auto& [j, c] : terms) {
    if (j >= num_vars()) {
      throw DimensionError("row term refers to unknown variable " + std::to_string(j + 1));
    }
    coeffs[j] += c;
  }
  add_dense_row(std::move(coeffs), relation, std::move(rhs), std::move(name));
}

void LpModel::add_dense_row(RationalVector coeffs, Relation relation, Rational rhs,
                            std::string name) {
  if (coeffs.size() != num_vars()) {
    throw DimensionError("row has " + std::to_string(coeffs.size()) + " coefficients, model has " +
                         std::to_string(num_vars()) + " variables");
  }
  if (name.empty()) {
    name = "r" + std::to_string(rows.size() + 1);
  }
  rows.push_back({std::move(coeffs), relation, std::move(rhs), std::move(name)});
}

bool LpModel::has_integers() const {
  for (bool b : integer) {
    if (b) {
      return true;
    }
  }
  return false;
}

void LpModel::validate() const {
  const std::size_t n = num_vars();
  if (lower.size() != n || upper.size() != n || integer.size() != n || names.size() != n) {
    throw DimensionError("model variable arrays have inconsistent lengths");
  }
  for (const auto& row : rows) {
    if (row.coeffs.size() != n) {
      throw DimensionError("row '" + row.name + "' has wrong length");
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (lower[j] && upper[j] && *lower[j] > *upper[j]) {
      throw PreconditionError("variable '" + names[j] + "' has lower bound above upper bound");
    }
  }
}

Rational LpModel::objective_value(const RationalVector& x) const {
  Rational acc = 0;
  for (std::size_t j = 0; j < num_vars(); ++j) {
    if (sgn(objective[j]) != 0) {
      acc += objective[j] * x[j];
    }
  }
  return acc;
}

bool LpModel::is_feasible(const RationalVector& x) const {
  if (x.size() != num_vars()) {
    return false;
  }
  for (std::size_t j = 0; j < num_vars(); ++j) {
    if ((lower[j] && x[j] < *lower[j]) || (upper[j] && x[j] > *upper[j])) {
      return false;
    }
    if (integer[j] && x[j].get_den() != 1) {
      return false;
    }
  }
  for (const auto& row : rows) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < num_vars(); ++j) {
      if (sgn(row.coeffs[j]) != 0) {
        lhs += row.coeffs[j] * x[j];
      }
    }
    switch (row.relation) {
      case Relation::LessEqual:
        if (lhs > row.rhs) {
          return false;
        }
        break;
      case Relation::GreaterEqual:
        if (lhs < row.rhs) {
          return false;
        }
        break;
      case Relation::Equal:
        if (lhs != row.rhs) {
          return false;
        }
        break;
    }
  }
  return true;
}

LpModel LpModel::relaxation() const {
  LpModel out = *this;
  out.integer.assign(num_vars(), false);
  return out;
}

namespace {

void write_terms(std::ostringstream& out, const RationalVector& coeffs,
                 const std::vector<std::string>& names) {
  bool any = false;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (sgn(coeffs[j]) == 0) {
      continue;
    }
    out << (sgn(coeffs[j]) < 0 ? " - " : " + ") << to_string(Rational(abs(coeffs[j]))) << ' '
        << names[j];
    any = true;
  }
  if (!any) {
    out << " 0";
  }
}

const char* relation_token(Relation r) {
  switch (r) {
    case Relation::LessEqual:
      return "<=";
    case Relation::GreaterEqual:
      return ">=";
    case Relation::Equal:
      return "=";
  }
  return "=";
}

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) {
    out.push_back(tok);
  }
  return out;
}

struct LpReader {
  LpModel model;
  std::map<std::string, std::size_t> index;

  std::size_t var(const std::string& name) {
    auto it = index.find(name);
    if (it != index.end()) {
      return it->second;
    }
    const auto j = model.add_variable(name, Rational(0), std::nullopt, false);
    index.emplace(name, j);
    return j;
  }

  // Parses "+ 2 x - 1/2 y" (or a lone "0") into coefficient pairs.
  std::vector<std::pair<std::size_t, Rational>> terms(const std::vector<std::string>& toks,
                                                      std::size_t begin, std::size_t end) {
    std::vector<std::pair<std::size_t, Rational>> out;
    std::size_t k = begin;
    if (end - begin == 1 && toks[k] == "0") {
      return out;
    }
    while (k < end) {
      if (k + 2 >= end) {
        throw ParseError("malformed linear expression near '" + toks[k] + "'");
      }
      int sign = 1;
      if (toks[k] == "-") {
        sign = -1;
      } else if (toks[k] != "+") {
        throw ParseError("expected '+' or '-' in linear expression, got '" + toks[k] + "'");
      }
      Rational c = parse_rational(toks[k + 1]);
      out.emplace_back(var(toks[k + 2]), sign * c);
      k += 3;
    }
    return out;
  }
};

std::optional<Rational> parse_bound(const std::string& tok) {
  if (tok == "-inf" || tok == "+inf" || tok == "inf") {
    return std::nullopt;
  }
  return parse_rational(tok);
}

}  // namespace

std::string to_lp_text(const LpModel& model) {
  model.validate();
  std::ostringstream out;
  out << "variables\n";
  for (const auto& name : model.names) {
    out << ' ' << name << '\n';
  }
  out << (model.sense == Sense::Minimize ? "minimize" : "maximize") << "\n obj:";
  write_terms(out, model.objective, model.names);
  out << "\nsubject to\n";
  for (const auto& row : model.rows) {
    out << ' ' << row.name << ':';
    write_terms(out, row.coeffs, model.names);
    out << ' ' << relation_token(row.relation) << ' ' << to_string(row.rhs) << '\n';
  }
  out << "bounds\n";
  for (std::size_t j = 0; j < model.num_vars(); ++j) {
    out << ' ' << (model.lower[j] ? to_string(*model.lower[j]) : "-inf") << " <= "
        << model.names[j] << " <= " << (model.upper[j] ? to_string(*model.upper[j]) : "+inf")
        << '\n';
  }
  out << "integer\n";
  for (std::size_t j = 0; j < model.num_vars(); ++j) {
    if (model.integer[j]) {
      out << ' ' << model.names[j] << '\n';
    }
  }
  out << "end\n";
  return out.str();
}

LpModel parse_lp_text(std::string_view text) {
  LpReader reader;
  enum class Section { None, Variables, Objective, Rows, Bounds, Integer, End } section = Section::None;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty() || toks[0][0] == '\\') {
      continue;
    }
    try {
      if (toks[0] == "variables") {
        section = Section::Variables;
        continue;
      }
      if (toks[0] == "minimize" || toks[0] == "maximize") {
        reader.model.sense = toks[0] == "minimize" ? Sense::Minimize : Sense::Maximize;
        section = Section::Objective;
        continue;
      }
      if (toks[0] == "subject" && toks.size() == 2 && toks[1] == "to") {
        section = Section::Rows;
        continue;
      }
      if (toks[0] == "bounds") {
        section = Section::Bounds;
        continue;
      }
      if (toks[0] == "integer") {
        section = Section::Integer;
        continue;
      }
      if (toks[0] == "end") {
        section = Section::End;
        continue;
      }
      switch (section) {
        case Section::Variables:
          for (const auto& t : toks) {
            reader.var(t);
          }
          break;
        case Section::Objective: {
          if (toks[0] != "obj:") {
            throw ParseError("objective line must start with 'obj:'");
          }
          for (const auto& [j, c] : reader.terms(toks, 1, toks.size())) {
            reader.model.objective[j] += c;
          }
          break;
        }
        case Section::Rows: {
          if (toks.size() < 4 || toks[0].back() != ':') {
            throw ParseError("row must look like 'name: terms <= rhs'");
          }
          const std::string& rel = toks[toks.size() - 2];
          Relation relation = Relation::Equal;
          if (rel == "<=") {
            relation = Relation::LessEqual;
          } else if (rel == ">=") {
            relation = Relation::GreaterEqual;
          } else if (rel != "=") {
            throw ParseError("unknown relation '" + rel + "'");
          }
          auto terms = reader.terms(toks, 1, toks.size() - 2);
          reader.model.add_row(terms, relation, parse_rational(toks.back()),
                               toks[0].substr(0, toks[0].size() - 1));
          break;
        }
        case Section::Bounds: {
          if (toks.size() != 5 || toks[1] != "<=" || toks[3] != "<=") {
            throw ParseError("bound must look like 'lo <= name <= hi'");
          }
          const auto j = reader.var(toks[2]);
          reader.model.lower[j] = parse_bound(toks[0]);
          reader.model.upper[j] = parse_bound(toks[4]);
          break;
        }
        case Section::Integer:
          for (const auto& t : toks) {
            reader.model.integer[reader.var(t)] = true;
          }
          break;
        case Section::None:
        case Section::End:
          throw ParseError("unexpected content outside a section");
      }
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  reader.model.validate();
  return std::move(reader.model);
}

}  // namespace intrec
