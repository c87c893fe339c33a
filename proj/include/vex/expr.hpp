#pragma once

#include <functional>
#include <string>

#include "vex/grid.hpp"

namespace vex {

/// Parses the closed-form expression mini-language used for exponent
/// functions and test functions in config files.
///
/// Grammar (usual precedence; '^' binds tightest, right-assoc):
///   expr  := term (('+'|'-') term)*
///   term  := unary (('*'|'/') unary)*
///   unary := '-' unary | power
///   power := atom ('^' unary)?
///   atom  := number | 'e' | 'pi' | 'inf' | 'x' | 'y' | 'r' | '|x|'
///          | 'log(' expr ')' | 'exp(' expr ')' | 'abs(' expr ')'
///          | 'sqrt(' expr ')' | 'min(' expr ',' expr ')'
///          | 'max(' expr ',' expr ')'
///          | 'ite(' expr cmp expr ',' expr ',' expr ')'   cmp in < <= > >=
///          | '(' expr ')'
///
/// 'x' and 'y' are the coordinates, 'r' and '|x|' the euclidean norm of the
/// point, 'inf' the value +infinity. 'ite' selects on a halfspace (or any
/// comparison of subexpressions). Errors report the character position.
std::function<double(const Point&)> parse_expr(const std::string& src);

}  // namespace vex
