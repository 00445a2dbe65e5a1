#pragma once

#include <string_view>
#include <vector>

#include "versal/poly.hpp"

namespace versal {

/// Parses a polynomial over `ring`.
///
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/')? factor)*      juxtaposition multiplies
///   factor := ('+' | '-') factor | atom ('^' integer)?
///   atom   := integer | identifier | '(' expr ')'
///
/// Identifiers must be ring variables. Division is only allowed by nonzero
/// constants, so `3/2*x` and `x/2` are fine. Throws ParseError.
Poly parse_poly(const RingPtr& ring, std::string_view text);

/// Parses a bracketed matrix "[a, b; c, d]" (rows separated by ';').
/// Returns rows of entries.
std::vector<std::vector<Poly>> parse_matrix(const RingPtr& ring, std::string_view text);

/// Splits a comma-separated identifier list, validating each name.
std::vector<std::string> parse_identifier_list(std::string_view text);

}  // namespace versal
