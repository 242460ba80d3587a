#ifndef HEIS_SCALAR_PARSER_HPP
#define HEIS_SCALAR_PARSER_HPP

#include "heis/rational_function.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace heis {

struct ParseError : std::runtime_error {
    ParseError(const std::string &msg, size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    size_t position;
};

/// Parses the scalar grammar:
///   expr := term (('+'|'-') term)*
///   term := factor (('*'|'/') factor)*
///   factor := base ('^' uint)?
///   base := '(' expr ')' | rational | 'i' | name
/// Names must come from `allowed_indeterminates` (canonical Unicode
/// names); ASCII aliases "l" for λ and "m" for μ are accepted.
RationalFunction parse_scalar(const std::string &text,
                              const std::vector<std::string> &allowed_indeterminates);

/// canonicalize an indeterminate name (resolve ASCII aliases)
std::string canonical_var_name(const std::string &name);

} // namespace heis

#endif
