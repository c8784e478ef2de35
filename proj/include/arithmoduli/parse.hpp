#pragma once

#include <string_view>

#include "arithmoduli/intmat.hpp"
#include "arithmoduli/intpoly.hpp"

namespace arithmoduli {

/// Square integer matrix from text. Input starting with '[' is read as a
/// JSON array of rows; otherwise rows are separated by newlines or ';' and
/// entries by whitespace or ','. Lines starting with '#' are comments.
/// Integers too large for 64 bits may be given as JSON strings.
/// Throws ParseError with 1-based line and column.
IntMatrix parse_matrix(std::string_view text);

/// Ascending coefficient list, as a JSON array or whitespace/comma separated.
IntPoly parse_poly(std::string_view text);

}  // namespace arithmoduli
