#pragma once

#include <iosfwd>
#include <string>

#include "seriesroot/dense_poly.hpp"
#include "seriesroot/jet.hpp"

namespace seriesroot::cli {

// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& data);

// Whole-file read; throws precondition_error on I/O failure.
std::string read_file(const std::string& path);

// Strict schema parsers.  A map document is
//   {"n": 2, "components": [[[[1,0],[2.0,0.0]], [[0,2],[1.0,0.0]]], ...]}
// (per component a list of [exponents, [re,im]] terms; duplicates sum), and a
// one-variable polynomial document is {"coeffs": [[re,im], ...]} ascending.
PolyMap<cplx> parse_map_text(const std::string& json_text);
DensePoly parse_poly_text(const std::string& json_text);

// Accepts either schema for one-variable commands; a map must have n = 1.
DensePoly parse_univariate_text(const std::string& json_text);

// Parses argv, runs one subcommand, writes a deterministic JSON report to
// `out` (alphabetical keys, pinned tolerances echoed).  Returns the process
// exit code: 0 success, 2 unusable input, 3 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace seriesroot::cli
