#include "kqde/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace kq {

namespace {

// recursive descent over
//   expr    := [+-] term ([+-] term)*
//   term    := power (('*' power) | ('/' number))*
//   power   := primary ['^' exponent]
//   primary := number | identifier | '(' expr ')'
class LaurentParser {
public:
    LaurentParser(const std::string& text, VarList vars) : s_(text), vars_(std::move(vars)) {}

    LaurentQ parse() {
        LaurentQ r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("cannot parse Laurent polynomial \"" + s_ + "\" at offset " + std::to_string(pos_) + ": " + what);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    LaurentQ expr() {
        LaurentQ r(vars_);
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        LaurentQ t = term();
        r = neg ? -t : t;
        for (;;) {
            if (eat('+')) r += term();
            else if (eat('-')) r -= term();
            else return r;
        }
    }

    LaurentQ term() {
        LaurentQ r = power();
        for (;;) {
            if (eat('*')) {
                r *= power();
            } else if (eat('/')) {
                Rational d = number();
                if (is_zero(d)) fail("division by zero");
                r *= Rational(1) / d;
            } else {
                return r;
            }
        }
    }

    LaurentQ power() {
        LaurentQ b = primary();
        if (!eat('^')) return b;
        int e = exponent();
        if (e < 0 && !b.is_monomial()) fail("negative power of a non-monomial");
        return b.pow(e);
    }

    int exponent() {
        char close = 0;
        if (eat('(')) close = ')';
        else if (eat('{')) close = '}';
        skip();
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer exponent");
        long v = std::stol(s_.substr(start, pos_ - start));
        if (v > 32000) fail("exponent too large");
        if (close && !eat(close)) fail(std::string("expected '") + close + "'");
        return static_cast<int>(neg ? -v : v);
    }

    Rational number() {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
        if (start == pos_) fail("expected a number");
        return parse_rational(s_.substr(start, pos_ - start));
    }

    LaurentQ primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            LaurentQ r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return LaurentQ(vars_, number());
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            auto it = std::find(vars_->begin(), vars_->end(), name);
            if (it == vars_->end()) fail("unknown variable " + name);
            return LaurentQ::var(vars_, static_cast<int>(it - vars_->begin()));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string s_;
    VarList vars_;
    size_t pos_ = 0;
};

double parse_real(const std::string& s, const std::string& whole) {
    if (s.empty() || s == "+" || s == "-") throw std::invalid_argument("bad complex number: " + whole);
    if (s.find('/') != std::string::npos) return parse_rational(s).get_d();
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad complex number: " + whole);
    }
    if (used != s.size()) throw std::invalid_argument("bad complex number: " + whole);
    return v;
}

}  // namespace

LaurentQ parse_laurent(const std::string& text, const VarList& vars) { return LaurentParser(text, vars).parse(); }

cplx parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty complex number");
    if (s.back() != 'i') return cplx(parse_real(s, text), 0.0);
    s.pop_back();
    // split at the last sign that is not the leading one or part of an exponent
    size_t split = std::string::npos;
    for (size_t k = s.size(); k-- > 1;)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    std::string re = split == std::string::npos ? "" : s.substr(0, split);
    std::string im = split == std::string::npos ? s : s.substr(split);
    if (im.empty() || im == "+" || im == "-") im += "1";
    return cplx(re.empty() ? 0.0 : parse_real(re, text), parse_real(im, text));
}

}  // namespace kq
