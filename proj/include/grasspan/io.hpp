#ifndef GRASSPAN_IO_HPP
#define GRASSPAN_IO_HPP

#include <string>

#include "grasspan/grassmann.hpp"
#include "grasspan/poly.hpp"

namespace io {

// Syntax error with the offending position (0-based offset into the input).
struct ParseError : std::runtime_error {
  size_t position;
  ParseError(const std::string& what, size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
};

// expr := term (('+'|'-') term)* ; term := factor ('*' factor)* ;
// factor := atom ('^' NAT)? ; atom := VAR | INT | '(' expr ')' |
// '[' expr ',' expr ']' ; VAR := 'x' NAT. Whitespace-insensitive; '*' is
// mandatory between factors. Integers reduce mod p; a nonzero constant in
// nonunitary mode is an error.
freealg::Poly parse_poly(const std::string& text, uint32_t p, freealg::Mode mode);

// Same grammar with generators 'e' NAT instead of variables and no
// bracket atoms.
grassmann::GElem parse_gelem(const std::string& text, uint32_t p, int rank, freealg::Mode mode);

// Deterministic, re-parseable rendering in the canonical term order.
// Coefficients print as residues in [0, p); zero prints as "0".
std::string print_poly(const freealg::Poly& f);
std::string print_gelem(const grassmann::GElem& g);

// Single word as an expression ("x1^2*x3").
std::string print_word(const freealg::Word& w);

}  // namespace io

#endif
