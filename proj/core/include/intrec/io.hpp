#pragma once

#include <string>
#include <string_view>

#include "intrec/matrix.hpp"
#include "intrec/rational.hpp"

namespace intrec {

/// JSON: {"m": 2, "n": 3, "entries": [["1","1/2","0"], ...]}. Entries may be
/// strings or JSON integers.
RationalMatrix parse_matrix_json(std::string_view text);
std::string matrix_to_json(const RationalMatrix& a);

/// CSV: one row per line, entries as rational strings. Blank lines and lines
/// starting with '#' are skipped.
RationalMatrix parse_matrix_csv(std::string_view text);
std::string matrix_to_csv(const RationalMatrix& a);

/// Vectors: a JSON array, {"n":…, "entries":[…]}, or CSV with entries
/// separated by commas and/or newlines.
RationalVector parse_vector(std::string_view text);
std::string vector_to_json(const RationalVector& v);

/// Picks the parser from the first non-blank character ('{' or '[' means JSON).
RationalMatrix parse_matrix(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

RationalMatrix load_matrix(const std::string& path);
RationalVector load_vector(const std::string& path);

}  // namespace intrec
