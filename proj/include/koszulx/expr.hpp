#pragma once

#include "koszulx/koszul.hpp"

#include <stdexcept>
#include <string>

namespace kx {

/// Parse failure with a 0-based position into the input text.
struct ParseError : std::runtime_error {
    size_t position;
    ParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

/// Grammar (whitespace insignificant):
///   expr   := term (('+'|'-') term)*
///   term   := [int '*'] factor ('*' factor)*
///   factor := 'e[' ints ']' | 'x[' ints ']' | 'a[' ints ']'
/// e[i,j,..] is e_i ^ e_j ^ ... (normalized by sorting, repeats give 0);
/// x[a1..an] needs exactly n exponents; a[i,j,..] is the blowup generator
/// and expands through the connecting map. Factors multiply with the twisted
/// product.
BigradedElement parse_element(int n, const std::string& text);

/// Canonical form; parse_element(n, print_element(x)) == x for elements with
/// integer coefficients.
std::string print_element(const BigradedElement& x);

}  // namespace kx
