#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "milnor/mixed_poly.h"
#include "milnor/real_poly.h"

namespace milnor {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  std::size_t position_;
};

// Mixed-polynomial grammar:
//   poly    := ['vars=' INT (';'|',')] term (('+'|'-') term)* [(';'|',') 'vars=' INT]
//   term    := [coeff] ['*'] factor (['*'] factor)*
//   coeff   := '(' complex ')' | rational ['i'] | 'i'
//   complex := rational | rational ('+'|'-') [rational] 'i' | ['-'] [rational] 'i'
//   factor  := ('z' INT ['~'] | 'conj(z' INT ')') ['^' INT]
// Repeated factors of one variable inside a term multiply out
// (z1 z1 z1~ is z1^2 z1~). Throws ParseError.
DiagonalMixedPolynomial parse_mixed(std::string_view text);

// '(' expr {',' expr} ')' 'vars' ident {',' ident}
// expr supports + - * ^INT, parentheses, division by constants and implicit
// multiplication ("2x", "x (y+1)"). Throws ParseError.
RealPolynomialMap parse_real_map(std::string_view text);

// True when the text carries a "vars" clause of the real-map grammar.
bool looks_like_real_map(std::string_view text);

// Canonical text that parse_mixed reads back to an equal polynomial.
std::string render(const DiagonalMixedPolynomial& psi);

}  // namespace milnor
