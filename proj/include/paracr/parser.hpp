#ifndef PARACR_PARSER_HPP
#define PARACR_PARSER_HPP

#include <string>

#include "paracr/series.hpp"

namespace paracr {

// Expands an arithmetic expression into a truncated series over `space`.
//
// Grammar:
//   expr   := ('+'|'-')? term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' nonneg-int)?
//   base   := integer | identifier | '(' expr ')'
//
// Products are always explicit ("x*a", never "xa"); division requires the
// divisor to be a unit. Integer literals combined with '/' give exact
// rational coefficients.
Series parse_expression(const std::string& text, SpacePtr space, int trunc);

enum class ModelSide { q_graph, p_graph, implicit_r };

// A parsed model file: dimensions, truncation, and the defining expression.
// Format: UTF-8, line-oriented `key = value`, '#' starts a comment. Keys:
// n, m, truncation, and exactly one of Q, P, R.
struct ModelFile {
    int n = 0;
    int m = 0;
    int trunc = 8;
    ModelSide side = ModelSide::q_graph;
    std::string expr;

    // The space the expression parses in (q_space / p_space / full_space).
    SpacePtr expr_space() const;
    Series parse() const { return parse_expression(expr, expr_space(), trunc); }
};

ModelFile parse_model_file(const std::string& contents);
ModelFile load_model_file(const std::string& path);

}  // namespace paracr

#endif
