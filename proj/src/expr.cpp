#include "mwk/expr.hpp"

#include <cctype>
#include <cstring>

namespace mwk {

namespace {

struct Parser {
    const std::string& s;
    const FieldDescriptor& F;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }

    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }

    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos;
        return true;
    }

    void expect(char c) {
        if (!accept(c)) throw SyntaxError(std::string("expected '") + c + "'", pos);
    }

    bool accept_word(const char* w) {
        skip_ws();
        size_t len = std::strlen(w);
        if (s.compare(pos, len, w) != 0) return false;
        // keywords must not run into an identifier tail
        size_t end = pos + len;
        if (end < s.size() && (std::isalnum((unsigned char)s[end]) || s[end] == '_')) return false;
        pos += len;
        return true;
    }

    std::int64_t parse_nat() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start) throw SyntaxError("expected a number", pos);
        return std::stoll(s.substr(start, pos - start));
    }

    MWElement parse_factor() {
        skip_ws();
        if (pos >= s.size()) throw SyntaxError("unexpected end of input", pos);
        MWElement base{F, {}};
        if (accept('(')) {
            base = parse_expr();
            expect(')');
        } else if (accept('[')) {
            size_t start = pos;
            while (pos < s.size() && s[pos] != ']') ++pos;
            if (pos >= s.size()) throw SyntaxError("unterminated symbol", start);
            std::string lit = s.substr(start, pos - start);
            ++pos;
            base = mw_symbol(parse_element(F, lit));
        } else if (accept_word("eta")) {
            base = mw_eta(F);
        } else if (accept_word("eps")) {
            base = mw_eps(F);
        } else if (accept_word("h")) {
            base = mw_h(F);
        } else if (std::isdigit((unsigned char)s[pos])) {
            base = mw_int(F, parse_nat());
        } else {
            throw SyntaxError("expected a factor", pos);
        }
        while (peek('^')) {
            ++pos;
            std::int64_t n = parse_nat();
            if (n > 64) throw SyntaxError("power too large", pos);
            base = mw_pow(base, (int)n);
        }
        return base;
    }

    MWElement parse_term() {
        MWElement e = parse_factor();
        while (peek('*')) {
            ++pos;
            e = mw_mul(e, parse_factor());
        }
        return e;
    }

    MWElement parse_expr() {
        bool negate = accept('-');
        MWElement e = parse_term();
        if (negate) e = mw_neg(e);
        while (true) {
            if (accept('+')) e = mw_add(e, parse_term());
            else if (accept('-')) e = mw_sub(e, parse_term());
            else break;
        }
        return e;
    }
};

} // namespace

MWElement parse_expression(const std::string& text, const FieldDescriptor& F) {
    if (text.empty()) throw SyntaxError("empty expression", 0);
    Parser p{text, F};
    MWElement e = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) throw SyntaxError("trailing input", p.pos);
    return normalize(e);
}

} // namespace mwk
