#include "koszulx/expr.hpp"

#include "koszulx/blowup.hpp"

#include <bit>
#include <cctype>

namespace kx {

namespace {

struct Parser {
    const std::string& text;
    size_t pos = 0;
    int n;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }

    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos;
        return true;
    }

    void expect(char c) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos);
    }

    bool at_int() {
        skip_ws();
        if (pos >= text.size()) return false;
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) return true;
        if ((c == '-' || c == '+') && pos + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[pos + 1])))
            return true;
        return false;
    }

    long long parse_int() {
        skip_ws();
        size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        size_t digits = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == digits) throw ParseError("expected an integer", start);
        return std::stoll(text.substr(start, pos - start));
    }

    std::vector<int> parse_int_list() {
        expect('[');
        std::vector<int> out;
        skip_ws();
        if (accept(']')) return out;
        out.push_back(static_cast<int>(parse_int()));
        while (accept(',')) out.push_back(static_cast<int>(parse_int()));
        expect(']');
        return out;
    }

    BigradedElement parse_factor() {
        skip_ws();
        if (pos >= text.size()) throw ParseError("expected a factor", pos);
        char c = text[pos];
        size_t at = pos;
        if (c == 'e') {
            ++pos;
            std::vector<int> idx = parse_int_list();
            // normalize by sorting: each earlier-seen larger index costs one
            // transposition; repeated indices vanish
            std::uint32_t mask = 0;
            int sign = 1;
            for (int i : idx) {
                if (i < 1 || i > n) throw ParseError("e-index out of range 1..n", at);
                std::uint32_t bit = 1u << (i - 1);
                if (mask & bit) return BigradedElement::zero();
                sign *= sign_pow(std::popcount(mask >> i));
                mask |= bit;
            }
            std::vector<int> sorted;
            for (int i = 1; i <= n; ++i)
                if (mask & (1u << (i - 1))) sorted.push_back(i);
            return BigradedElement::single(make_index(n, sorted, exp_zero(n)), Scalar::integer(sign));
        }
        if (c == 'x') {
            ++pos;
            std::vector<int> exps = parse_int_list();
            if (static_cast<int>(exps.size()) != n)
                throw ParseError("x[...] needs exactly " + std::to_string(n) + " exponents", at);
            for (int v : exps)
                if (v < 0) throw ParseError("negative exponent", at);
            return BigradedElement::single(make_index(n, {}, exps));
        }
        if (c == 'a') {
            ++pos;
            std::vector<int> idx = parse_int_list();
            if (idx.size() < 2) throw ParseError("a[...] needs at least two indices", at);
            for (size_t i = 1; i < idx.size(); ++i)
                if (idx[i] <= idx[i - 1]) throw ParseError("a-indices must be strictly increasing", at);
            if (idx.back() > n) throw ParseError("a-index out of range 1..n", at);
            return generator(n, idx).rep;
        }
        throw ParseError("expected e[...], x[...] or a[...]", pos);
    }

    BigradedElement parse_term() {
        BigradedElement acc;
        bool have = false;
        if (at_int()) {
            long long c = parse_int();
            acc = BigradedElement::unit(n).scaled(Scalar::integer(c));
            have = true;
            if (!accept('*')) return acc;  // a bare integer is c * unit
        }
        while (true) {
            BigradedElement f = parse_factor();
            acc = have ? multiply_twisted(acc, f) : f;
            have = true;
            if (!accept('*')) break;
        }
        return acc;
    }

    BigradedElement parse_expr() {
        skip_ws();
        BigradedElement acc;
        bool negate = false;
        if (accept('-'))
            negate = true;
        else
            accept('+');
        BigradedElement t = parse_term();
        acc = negate ? -t : t;
        while (true) {
            skip_ws();
            if (accept('+'))
                acc = acc + parse_term();
            else if (accept('-'))
                acc = acc - parse_term();
            else
                break;
        }
        skip_ws();
        if (pos != text.size()) throw ParseError("unexpected trailing input", pos);
        return acc;
    }
};

}  // namespace

BigradedElement parse_element(int n, const std::string& text) {
    if (n < 1) throw std::invalid_argument("parse_element: n must be >= 1");
    Parser p{text, 0, n};
    p.skip_ws();
    if (p.pos == text.size()) throw ParseError("empty expression", 0);
    return p.parse_expr();
}

std::string print_element(const BigradedElement& x) { return x.str(); }

}  // namespace kx
