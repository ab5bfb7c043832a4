#pragma once

#include <string>

#include "supcone/modelspec.hpp"

namespace supcone {

// Evaluates an expression over the named vectors of a model, on the
// exact backend. Grammar:
//
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := rational | 'inf' | name | '-' factor
//           | fn '(' expr (',' expr)* ')' | '(' expr ')'
//   fn     := min | max | abs | pos | neg
//
// Scalars broadcast to constant vectors. Subtraction and negation need a
// finite operand (only X is invertible); products with an infinite
// operand need both operands >= 0. Returns the result as a JSON string.
std::string eval_expr(const ModelSpec& m, const std::string& expr);

} // namespace supcone
