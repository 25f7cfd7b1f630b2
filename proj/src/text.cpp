#include "keller/cli.hpp"

#include <algorithm>
#include <cctype>

namespace keller {

const char* const kGrammar =
    "expr := term (('+'|'-') term)* ; term := factor ('*'? factor)* ; factor := '-' factor | atom ('^' NAT)? ; "
    "atom := RATIONAL | VAR | '(' expr ')' ; RATIONAL := INT ('/' POSINT)?  (\"2x y\" multiplies; \"-x^2\" is "
    "-(x^2))";

namespace {

class Parser {
  public:
    Parser(std::string_view text, const VarContext& ctx) : s_(text), ctx_(ctx) {}

    Polynomial run() {
        skip();
        if (pos_ >= s_.size()) fail(ParseError::Kind::Syntax, "empty expression");
        Polynomial p = expr();
        skip();
        if (pos_ < s_.size()) fail(ParseError::Kind::Syntax, std::string("unexpected '") + s_[pos_] + "'");
        return p;
    }

  private:
    [[noreturn]] void fail(ParseError::Kind kind, const std::string& msg) const { throw ParseError(kind, pos_, msg); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    Polynomial expr() {
        Polynomial acc = term();
        while (true) {
            char c = peek();
            if (c != '+' && c != '-') return acc;
            ++pos_;
            Polynomial t = term();
            if (c == '+') acc += t;
            else acc -= t;
        }
    }

    bool starts_atom() {
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || ident_start(c) || c == '(';
    }

    Polynomial term() {
        Polynomial acc = sfactor();
        while (true) {
            if (peek() == '*') {
                ++pos_;
                acc *= sfactor();
            } else if (starts_atom()) {
                acc *= sfactor();
            } else {
                return acc;
            }
        }
    }

    Polynomial sfactor() {
        char c = peek();
        if (c == '-') {
            ++pos_;
            return -sfactor();
        }
        if (c == '+') {
            ++pos_;
            return sfactor();
        }
        return power();
    }

    Polynomial power() {
        Polynomial base = atom();
        if (peek() != '^') return base;
        ++pos_;
        unsigned long e = exponent();
        return pow(base, static_cast<unsigned>(e));
    }

    unsigned long exponent() {
        char c = peek();
        if (c == '-') fail(ParseError::Kind::NegativeExponent, "negative exponent");
        if (c == '(') {
            std::size_t at = pos_;
            ++pos_;
            Polynomial v = expr();
            if (peek() != ')') fail(ParseError::Kind::Syntax, "expected ')'");
            ++pos_;
            if (!v.is_constant()) throw ParseError(ParseError::Kind::Syntax, at, "exponent must be a constant");
            Rational r = v.constant_term();
            if (r < 0) throw ParseError(ParseError::Kind::NegativeExponent, at, "negative exponent");
            if (r.get_den() != 1) throw ParseError(ParseError::Kind::FractionalExponent, at, "fractional exponent");
            if (r > 100000) throw ParseError(ParseError::Kind::Syntax, at, "exponent too large");
            return r.get_num().get_ui();
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) fail(ParseError::Kind::Syntax, "expected a natural exponent");
        std::size_t at = pos_;
        std::string digits = number();
        if (pos_ < s_.size() && (s_[pos_] == '/' || s_[pos_] == '.'))
            throw ParseError(ParseError::Kind::FractionalExponent, at, "fractional exponent");
        if (digits.size() > 6 || std::stoul(digits) > 100000)
            throw ParseError(ParseError::Kind::Syntax, at, "exponent too large");
        return std::stoul(digits);
    }

    std::string number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    Polynomial atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (peek() != ')') fail(ParseError::Kind::Syntax, "expected ')'");
            ++pos_;
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = number();
            if (pos_ < s_.size() && s_[pos_] == '.') fail(ParseError::Kind::Syntax, "decimal numbers are not supported");
            Integer n(num);
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    fail(ParseError::Kind::Syntax, "'/' is only allowed inside a rational constant");
                Integer d(number());
                if (d == 0) fail(ParseError::Kind::Syntax, "zero denominator");
                Rational r(n, d);
                r.canonicalize();
                return Polynomial(ctx_, r);
            }
            return Polynomial(ctx_, Rational(n));
        }
        if (ident_start(c)) return variable();
        if (c == '\0') fail(ParseError::Kind::Syntax, "unexpected end of input");
        fail(ParseError::Kind::Syntax, std::string("unexpected '") + c + "'");
    }

    std::optional<std::size_t> lookup(std::string_view name) const {
        if (auto i = ctx_.index_of(name)) return i;
        std::string lower(name);
        std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
        return ctx_.index_of(lower);
    }

    // A run of letters/digits is a variable, or juxtaposed variables such as
    // "xy" or "u1u2". Only the first name is consumed here so that a
    // following power binds to the last one: "xy^2" is x*y^2.
    Polynomial variable() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
        std::string_view word = s_.substr(start, pos_ - start);
        if (auto i = lookup(word)) return Polynomial::variable(ctx_, *i);
        std::optional<std::size_t> first;
        std::size_t first_len = 0;
        for (std::size_t at = 0; at < word.size();) {
            std::size_t len = word.size() - at;
            while (len > 0 && !lookup(word.substr(at, len))) --len;
            if (len == 0) {
                pos_ = start;
                fail(ParseError::Kind::UnknownVariable, "unknown variable '" + std::string(word) + "'");
            }
            if (!first) {
                first = lookup(word.substr(at, len));
                first_len = len;
            }
            at += len;
        }
        pos_ = start + first_len;
        return Polynomial::variable(ctx_, *first);
    }

    std::string_view s_;
    const VarContext& ctx_;
    std::size_t pos_ = 0;
};

// descending lex with the last variable most significant
bool print_before(const Monomial& a, const Monomial& b) {
    for (std::size_t i = kMaxVars; i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

std::string monomial_text(const Monomial& m, const VarContext& ctx) {
    std::string out;
    for (std::size_t i = 0; i < ctx.arity(); ++i) {
        if (!m[i]) continue;
        if (!out.empty()) out += "*";
        out += ctx.name(i);
        if (m[i] > 1) out += "^" + std::to_string(m[i]);
    }
    return out;
}

}  // namespace

Polynomial parse_poly(std::string_view text, const VarContext& ctx) { return Parser(text, ctx).run(); }

std::string to_string(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::vector<Term> terms = p.terms();
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return print_before(a.mono, b.mono); });
    std::string out;
    bool first = true;
    for (const auto& t : terms) {
        bool neg = t.coeff < 0;
        Rational mag = abs(t.coeff);
        if (first) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        first = false;
        if (t.mono.is_one()) {
            out += mag.get_str();
        } else {
            if (mag != 1) out += mag.get_str() + "*";
            out += monomial_text(t.mono, p.context());
        }
    }
    return out;
}

std::string to_string(const RationalFunction& r) {
    if (r.is_polynomial()) return to_string(r.numerator());
    auto wrap = [](const Polynomial& p) {
        std::string s = to_string(p);
        return p.size() == 1 && p.terms()[0].coeff > 0 ? s : "(" + s + ")";
    };
    return wrap(r.numerator()) + "/" + wrap(r.denominator());
}

std::string to_string(const FFPolynomial& p) {
    if (p.is_zero()) return "0";
    std::vector<FFTerm> terms = p.terms();
    std::sort(terms.begin(), terms.end(), [](const FFTerm& a, const FFTerm& b) { return print_before(a.mono, b.mono); });
    std::string out;
    bool first = true;
    for (const auto& t : terms) {
        const Polynomial& num = t.coeff.numerator();
        bool simple = t.coeff.is_polynomial() && num.size() == 1;
        bool neg = simple && num.terms()[0].coeff < 0;
        RationalFunction c = neg ? -t.coeff : t.coeff;
        if (first) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        first = false;
        std::string cs = to_string(c);
        if (t.mono.is_one()) {
            out += (c.is_polynomial() && c.numerator().size() > 1) ? "(" + cs + ")" : cs;
            continue;
        }
        std::string mono = monomial_text(t.mono, p.vars());
        if (cs == "1") out += mono;
        else if (c.is_polynomial() && c.numerator().size() > 1) out += "(" + cs + ")*" + mono;
        else out += cs + "*" + mono;
    }
    return out;
}

}  // namespace keller
