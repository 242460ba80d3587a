#include "heis/scalar_parser.hpp"

#include <algorithm>
#include <cctype>

namespace heis {

std::string canonical_var_name(const std::string &name) {
    if (name == "l") return kVarLambda;
    if (name == "m") return kVarMu;
    return name;
}

namespace {

class Parser {
  public:
    Parser(const std::string &text, const std::vector<std::string> &allowed)
        : text_(text), allowed_(allowed) {}

    RationalFunction run() {
        RationalFunction r = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        return r;
    }

  private:
    RationalFunction expr() {
        RationalFunction acc = term();
        while (true) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                acc += term();
            } else if (peek() == '-') {
                ++pos_;
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    RationalFunction term() {
        RationalFunction acc = factor();
        while (true) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                acc *= factor();
            } else if (peek() == '/') {
                size_t at = pos_;
                ++pos_;
                RationalFunction d = factor();
                if (d.is_zero()) throw ParseError("zero denominator", at);
                acc = acc / d;
            } else {
                return acc;
            }
        }
    }

    RationalFunction factor() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            // unary minus; also covers the grammar's signed rational
            ++pos_;
            neg = true;
        }
        RationalFunction b = base();
        skip_ws();
        if (peek() == '^') {
            size_t at = ++pos_;
            skip_ws();
            if (!std::isdigit(peek())) throw ParseError("expected exponent", at);
            mpz_class e = read_uint();
            if (e > 64) throw ParseError("exponent too large", at);
            RationalFunction p(GaussRational(1));
            for (long k = 0; k < e.get_si(); ++k) p *= b;
            b = p;
        }
        return neg ? -b : b;
    }

    RationalFunction base() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            size_t at = pos_++;
            RationalFunction r = expr();
            skip_ws();
            if (peek() != ')') throw ParseError("unbalanced parenthesis", at);
            ++pos_;
            return r;
        }
        if (std::isdigit(c)) {
            mpz_class num = read_uint();
            return RationalFunction(GaussRational(mpq_class(num)));
        }
        if (is_name_char(c)) {
            size_t at = pos_;
            std::string name = read_name();
            if (name == "i") return RationalFunction(GaussRational::i());
            name = canonical_var_name(name);
            if (std::find(allowed_.begin(), allowed_.end(), name) == allowed_.end())
                throw ParseError("unknown indeterminate '" + name + "'", at);
            return RationalFunction::variable(name);
        }
        throw ParseError("unexpected character", pos_);
    }

    mpz_class read_uint() {
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return mpz_class(text_.substr(start, pos_ - start), 10);
    }

    static bool is_name_char(char c) {
        unsigned char u = static_cast<unsigned char>(c);
        return std::isalpha(u) || u >= 0x80 || c == '_';
    }

    std::string read_name() {
        size_t start = pos_;
        while (pos_ < text_.size()) {
            unsigned char u = static_cast<unsigned char>(text_[pos_]);
            if (is_name_char(char(u)) || (pos_ > start && std::isdigit(u)))
                ++pos_;
            else
                break;
        }
        return text_.substr(start, pos_ - start);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    const std::string &text_;
    const std::vector<std::string> &allowed_;
    size_t pos_ = 0;
};

} // namespace

RationalFunction parse_scalar(const std::string &text, const std::vector<std::string> &allowed) {
    Parser p(text, allowed);
    return p.run();
}

} // namespace heis
