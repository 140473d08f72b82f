#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pr/numeric.hpp"
#include "pr/polynomial.hpp"

namespace pr {

struct ParseOptions {
    bool laurent = false;  // accept negative exponents (x^-1)
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& message, std::size_t offset, std::size_t line,
               std::size_t col)
        : std::runtime_error(message + " at " + std::to_string(line) + ":" +
                             std::to_string(col) + " (byte " + std::to_string(offset) + ")"),
          offset(offset),
          line(line),
          col(col) {}

    std::size_t offset;  // byte offset into the source text
    std::size_t line;    // 1-based
    std::size_t col;     // 1-based
};

struct Equation {
    std::string lhs_text;
    std::string rhs_text;
    Polynomial normalized;  // lhs - rhs, fully expanded
    std::vector<std::string> variable_order;
    bool constant_term_present = false;
};

// Grammar:
//   equation := expr "=" expr
//   expr     := term (("+"|"-") term)*
//   term     := factor ("*" factor)*
//   factor   := ("+"|"-")* (integer | variable ["^" signed_int] | "(" expr ")")
//   variable := letter (letter|digit|"_")*
// Whitespace is insignificant; there is no implicit multiplication.
Equation parse_equation(const std::string& text, const ParseOptions& options = {});

// Single expression (no "="), same grammar and options.
Polynomial parse_polynomial(const std::string& text, const ParseOptions& options = {});

struct ProductForm {
    std::vector<std::string> variables;  // distinct, in order of appearance
    std::vector<Int> exponents;          // aligned with variables
};

// Tolerant probe for "x1^c1 * x2^c2 * ... = 1" (bare variables mean exponent 1,
// negative exponents allowed here without Laurent opt-in). Absent when the text
// is not literally of that shape.
std::optional<ProductForm> parse_product_form(const std::string& text);

std::string format_polynomial(const Polynomial& P);

}  // namespace pr
