#ifndef LOCRES_PARSER_HPP
#define LOCRES_PARSER_HPP

#include "locres/linear_form.hpp"
#include "locres/multipoly.hpp"
#include "locres/scalar.hpp"

#include <string>
#include <vector>

namespace locres {

/// Polynomial text grammar: rational literals, the Gaussian unit `i`, the
/// transcendental `pi`, named variables, operators + - * ^ and parentheses.
/// Whitespace-insensitive; juxtaposition multiplies.  `names` fixes both the
/// admissible variables and their index order.
MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& names);

/// Default variable names psi1..psil.
std::vector<std::string> psi_names(std::size_t l);

/// Constant expression in the same grammar (no variables).
Scalar parse_scalar(const std::string& text);

/// Comma-separated rationals, e.g. "3,1/2,-2".
RatVec parse_rat_vec(const std::string& text);

/// Single linear form over e1..el (also accepts psi1..psil), e.g. "e1+2e2".
LinearForm parse_linear_form(const std::string& text, std::size_t l);

/// Comma-separated list of linear forms; l inferred from the largest index
/// when not supplied.
std::vector<LinearForm> parse_linear_form_list(const std::string& text, std::size_t l = 0);

} // namespace locres

#endif
