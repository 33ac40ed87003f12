#pragma once

#include <string_view>

#include "ctlgames/syntax.hpp"

namespace ctlgames {

/// Parses a value or computation in the surface grammar (sugar retained).
/// Throws SyntaxError with line/column; machine-only constants (`%set(..)`,
/// `%get(..)`, `%throw(..)`, `%catch(..)`, `#`) are rejected.
TermPtr parse_term(std::string_view text);

TypePtr parse_type(std::string_view text);

/// parse_term followed by desugar.
TermPtr parse_program(std::string_view text);

}  // namespace ctlgames
