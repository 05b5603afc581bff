#pragma once

#include "mwk/mw.hpp"

namespace mwk {

// expr   := ['-'] term (("+"|"-") term)*
// term   := factor ("*" factor)*
// factor := integer | "eta" | "h" | "eps" | "[" element "]" | "(" expr ")" | factor "^" nat
// Whitespace insensitive. SyntaxError carries the byte offset; bad element
// literals raise UnknownLiteral.
MWElement parse_expression(const std::string& text, const FieldDescriptor& F);

} // namespace mwk
