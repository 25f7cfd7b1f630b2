#pragma once

#include "keller/funcfield.hpp"
#include "keller/pipeline.hpp"
#include "keller/poly.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace keller {

// expr   := sfactor-led term (('+' | '-') term)*
// term   := sfactor (('*')? sfactor)*       juxtaposition multiplies
// sfactor:= '-' sfactor | power              "-x^2" is -(x^2)
// power  := atom ('^' NAT)?
// atom   := RATIONAL | VAR | '(' expr ')'
// RATIONAL := INT ('/' POSINT)?
extern const char* const kGrammar;

Polynomial parse_poly(std::string_view text, const VarContext& ctx);

// Canonical text: terms by descending lex with the last variable most
// significant, reduced rational coefficients, `^` for powers.
std::string to_string(const Polynomial& p);
std::string to_string(const RationalFunction& r);
std::string to_string(const FFPolynomial& p);

// Machine report; millis is null unless `timing` is set so that identical
// runs produce identical bytes.
std::string report_json(const ClassificationReport& report, bool timing = false);

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace keller
