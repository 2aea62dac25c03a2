#include "intrec/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "intrec/errors.hpp"

namespace intrec {

using nlohmann::json;

namespace {

Rational entry_from_json(const json& value) {
  if (value.is_string()) {
    return parse_rational(value.get<std::string>());
  }
  if (value.is_number_integer()) {
    return Rational(value.dump());
  }
  throw ParseError("matrix entries must be strings \"p/q\" or integers, got " + value.dump());
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) {
      return out;
    }
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

RationalMatrix parse_matrix_json(std::string_view text) {
  json doc = parse_json(text);
  if (doc.is_array()) {
    doc = json{{"entries", std::move(doc)}};
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
    throw ParseError("matrix JSON needs an \"entries\" array");
  }
  const auto& rows = doc["entries"];
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows[0].size();
  if (doc.contains("m") && doc["m"].get<std::size_t>() != m) {
    throw DimensionError("matrix JSON: \"m\" does not match the number of rows");
  }
  if (doc.contains("n") && doc["n"].get<std::size_t>() != n) {
    throw DimensionError("matrix JSON: \"n\" does not match the row length");
  }
  RationalMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) {
      throw DimensionError("matrix JSON: row " + std::to_string(i + 1) + " has wrong length");
    }
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = entry_from_json(rows[i][j]);
    }
  }
  require_nonempty(a, "matrix JSON");
  return a;
}

std::string matrix_to_json(const RationalMatrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (const auto& v : a.row(i)) {
      row.push_back(to_string(v));
    }
    rows.push_back(std::move(row));
  }
  json doc;
  doc["m"] = a.rows();
  doc["n"] = a.cols();
  doc["entries"] = std::move(rows);
  return doc.dump() + "\n";
}

RationalMatrix parse_matrix_csv(std::string_view text) {
  std::vector<RationalVector> rows;
  for (auto line : split(text, '\n')) {
    line = trim(line);
    if (line.empty() || line.front() == '#') {
      continue;
    }
    RationalVector row;
    for (auto cell : split(line, ',')) {
      row.push_back(parse_rational(cell));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw DimensionError("matrix CSV: row " + std::to_string(rows.size() + 1) +
                           " has wrong length");
    }
    rows.push_back(std::move(row));
  }
  RationalMatrix a(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      a(i, j) = rows[i][j];
    }
  }
  require_nonempty(a, "matrix CSV");
  return a;
}

std::string matrix_to_csv(const RationalMatrix& a) {
  std::string out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j > 0) {
        out += ',';
      }
      out += to_string(a(i, j));
    }
    out += '\n';
  }
  return out;
}

RationalVector parse_vector(std::string_view text) {
  const auto body = trim(text);
  RationalVector out;
  if (!body.empty() && (body.front() == '[' || body.front() == '{')) {
    json doc = parse_json(body);
    if (doc.is_object()) {
      if (!doc.contains("entries")) {
        throw ParseError("vector JSON needs an \"entries\" array");
      }
      doc = doc["entries"];
    }
    if (!doc.is_array()) {
      throw ParseError("vector JSON must be an array");
    }
    for (const auto& v : doc) {
      out.push_back(entry_from_json(v));
    }
    return out;
  }
  for (auto line : split(body, '\n')) {
    line = trim(line);
    if (line.empty() || line.front() == '#') {
      continue;
    }
    for (auto cell : split(line, ',')) {
      out.push_back(parse_rational(cell));
    }
  }
  return out;
}

std::string vector_to_json(const RationalVector& v) {
  json arr = json::array();
  for (const auto& x : v) {
    arr.push_back(to_string(x));
  }
  return arr.dump();
}

RationalMatrix parse_matrix(std::string_view text) {
  const auto body = trim(text);
  if (!body.empty() && (body.front() == '{' || body.front() == '[')) {
    return parse_matrix_json(body);
  }
  return parse_matrix_csv(body);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write '" + path + "'");
  }
  out << contents;
}

RationalMatrix load_matrix(const std::string& path) { return parse_matrix(read_file(path)); }

RationalVector load_vector(const std::string& path) { return parse_vector(read_file(path)); }

}  // namespace intrec
