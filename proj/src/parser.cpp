#include "pr/parser.hpp"

#include <cctype>
#include <cstdint>
#include <utility>

namespace pr {

namespace {

constexpr std::int64_t kExponentLimit = std::int64_t{1} << 31;

enum class TokenKind { Integer, Variable, Plus, Minus, Star, Caret, LParen, RParen, Equals, End };

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t offset;
};

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

[[noreturn]] void fail(const std::string& text, std::size_t offset, const std::string& message) {
    auto [line, col] = line_col(text, offset);
    throw ParseError(message, offset, line, col);
}

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            tokens.push_back({TokenKind::Integer, text.substr(start, i - start), start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                ++i;
            tokens.push_back({TokenKind::Variable, text.substr(start, i - start), start});
            continue;
        }
        TokenKind kind;
        switch (c) {
            case '+': kind = TokenKind::Plus; break;
            case '-': kind = TokenKind::Minus; break;
            case '*': kind = TokenKind::Star; break;
            case '^': kind = TokenKind::Caret; break;
            case '(': kind = TokenKind::LParen; break;
            case ')': kind = TokenKind::RParen; break;
            case '=': kind = TokenKind::Equals; break;
            default:
                fail(text, i, std::string("unexpected character '") + c + "'");
        }
        tokens.push_back({kind, text.substr(i, 1), i});
        ++i;
    }
    tokens.push_back({TokenKind::End, "", text.size()});
    return tokens;
}

class Parser {
public:
    Parser(const std::string& text, std::vector<Token> tokens,
           std::vector<std::string> variables, const ParseOptions& options)
        : text_(text),
          tokens_(std::move(tokens)),
          vars_(std::move(variables)),
          options_(options) {}

    Polynomial parse_expr() {
        Polynomial value = parse_term();
        while (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus) {
            bool negate = take().kind == TokenKind::Minus;
            Polynomial rhs = parse_term();
            value = negate ? value - rhs : value + rhs;
        }
        return value;
    }

    const Token& peek() const { return tokens_[pos_]; }
    const Token& take() { return tokens_[pos_++]; }

    void expect_end() {
        if (peek().kind != TokenKind::End)
            fail(text_, peek().offset, "unexpected trailing input");
    }

    void expect_equals() {
        if (peek().kind != TokenKind::Equals)
            fail(text_, peek().offset, "expected '='");
        take();
    }

private:
    Polynomial parse_term() {
        Polynomial value = parse_factor();
        while (peek().kind == TokenKind::Star) {
            take();
            value = value * parse_factor();
        }
        return value;
    }

    Polynomial parse_factor() {
        bool negate = false;
        while (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus) {
            if (take().kind == TokenKind::Minus) negate = !negate;
        }
        Polynomial value = parse_primary();
        return negate ? -value : value;
    }

    Polynomial parse_primary() {
        const Token& token = peek();
        switch (token.kind) {
            case TokenKind::Integer: {
                take();
                Polynomial value(vars_, options_.laurent);
                value.add_term(MultiIndex(vars_.size()), Int(token.text));
                return value;
            }
            case TokenKind::Variable: {
                take();
                std::int64_t exponent = 1;
                if (peek().kind == TokenKind::Caret) {
                    take();
                    exponent = parse_signed_exponent();
                }
                std::size_t position = var_index(token.text);
                Polynomial value(vars_, options_.laurent);
                if (exponent < 0 && !options_.laurent)
                    fail(text_, token.offset,
                         "negative exponent on '" + token.text +
                             "' requires the laurent option (--laurent)");
                MultiIndex index(vars_.size());
                index.exps[position] = exponent;
                value.add_term(index, 1);
                return value;
            }
            case TokenKind::LParen: {
                std::size_t open_offset = take().offset;
                Polynomial value = parse_expr();
                if (peek().kind != TokenKind::RParen)
                    fail(text_, peek().offset, "missing ')' for '(' opened earlier");
                (void)open_offset;
                take();
                return value;
            }
            case TokenKind::End:
                fail(text_, token.offset, "unexpected end of input (empty expression)");
            default:
                fail(text_, token.offset, "expected integer, variable, or '('");
        }
    }

    std::int64_t parse_signed_exponent() {
        bool negative = false;
        if (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus)
            negative = take().kind == TokenKind::Minus;
        const Token& token = peek();
        if (token.kind != TokenKind::Integer)
            fail(text_, token.offset, "expected integer exponent after '^'");
        take();
        Int magnitude(token.text);
        if (magnitude > kExponentLimit)
            fail(text_, token.offset, "exponent overflow (exceeds 2^31)");
        auto value = static_cast<std::int64_t>(magnitude);
        return negative ? -value : value;
    }

    std::size_t var_index(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return i;
        throw std::logic_error("variable missing from pre-scan: " + name);
    }

    const std::string& text_;
    std::vector<Token> tokens_;
    std::vector<std::string> vars_;
    const ParseOptions& options_;
    std::size_t pos_ = 0;
};

std::vector<std::string> collect_variables(const std::vector<Token>& tokens) {
    std::vector<std::string> vars;
    for (const auto& token : tokens) {
        if (token.kind != TokenKind::Variable) continue;
        bool seen = false;
        for (const auto& v : vars)
            if (v == token.text) {
                seen = true;
                break;
            }
        if (!seen) vars.push_back(token.text);
    }
    return vars;
}

}  // namespace

Equation parse_equation(const std::string& text, const ParseOptions& options) {
    std::vector<Token> tokens = lex(text);
    std::vector<std::string> vars = collect_variables(tokens);
    Parser parser(text, tokens, vars, options);

    Polynomial lhs = parser.parse_expr();
    std::size_t equals_offset = parser.peek().offset;
    parser.expect_equals();
    if (parser.peek().kind == TokenKind::End)
        fail(text, parser.peek().offset, "empty right-hand side");
    Polynomial rhs = parser.parse_expr();
    parser.expect_end();

    Equation equation;
    equation.lhs_text = text.substr(0, equals_offset);
    equation.rhs_text = text.substr(equals_offset + 1);
    equation.normalized = lhs - rhs;
    equation.variable_order = vars;
    equation.constant_term_present = equation.normalized.has_constant_term();
    return equation;
}

Polynomial parse_polynomial(const std::string& text, const ParseOptions& options) {
    std::vector<Token> tokens = lex(text);
    std::vector<std::string> vars = collect_variables(tokens);
    Parser parser(text, tokens, vars, options);
    Polynomial value = parser.parse_expr();
    parser.expect_end();
    return value;
}

std::optional<ProductForm> parse_product_form(const std::string& text) {
    std::vector<Token> tokens;
    try {
        tokens = lex(text);
    } catch (const ParseError&) {
        return std::nullopt;
    }

    ProductForm form;
    std::size_t pos = 0;
    auto at = [&](TokenKind kind) { return tokens[pos].kind == kind; };

    while (true) {
        if (!at(TokenKind::Variable)) return std::nullopt;
        std::string name = tokens[pos++].text;
        for (const auto& v : form.variables)
            if (v == name) return std::nullopt;  // repeated variable: not this shape
        Int exponent{1};
        if (at(TokenKind::Caret)) {
            ++pos;
            bool negative = false;
            if (at(TokenKind::Plus) || at(TokenKind::Minus))
                negative = tokens[pos++].kind == TokenKind::Minus;
            if (!at(TokenKind::Integer)) return std::nullopt;
            exponent = Int(tokens[pos++].text);
            if (negative) exponent = -exponent;
        }
        if (exponent == 0) return std::nullopt;
        form.variables.push_back(std::move(name));
        form.exponents.push_back(std::move(exponent));
        if (at(TokenKind::Star)) {
            ++pos;
            continue;
        }
        break;
    }
    if (!at(TokenKind::Equals)) return std::nullopt;
    ++pos;
    if (!at(TokenKind::Integer) || tokens[pos].text != "1") return std::nullopt;
    ++pos;
    if (!at(TokenKind::End)) return std::nullopt;
    return form;
}

std::string format_polynomial(const Polynomial& P) { return P.format(); }

}  // namespace pr
