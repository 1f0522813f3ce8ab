#pragma once

// Text form of ring elements.
//
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' nat)?
//   base   := var | rational | '(' expr ')'
//
// Rationals are `int` or `int/int`; whitespace is insignificant. Printing is
// canonical and parse(print(p)) == p.

#include <germinv/polynomial.hpp>

#include <cctype>
#include <string>

namespace germinv {

namespace detail {

template <CoefficientField K>
struct CoeffText;

template <>
struct CoeffText<Rational> {
    static Rational from_fraction(const std::string& num, const std::string& den,
                                  std::size_t pos) {
        mpz_class d(den, 10);
        if (d == 0) throw ValidationError("zero denominator at position " + std::to_string(pos));
        return Rational(mpq_class(mpz_class(num, 10), d));
    }
    static Rational from_integer(const std::string& s) {
        return Rational(mpq_class(mpz_class(s, 10)));
    }
};

template <>
struct CoeffText<PrimeField> {
    static PrimeField mod_of_string(const std::string& s) {
        PrimeField acc = PrimeField::zero();
        PrimeField ten = PrimeField::from_int(10);
        bool neg = false;
        for (char ch : s) {
            if (ch == '-') { neg = true; continue; }
            acc = acc * ten + PrimeField::from_int(ch - '0');
        }
        return neg ? -acc : acc;
    }
    static PrimeField from_fraction(const std::string& num, const std::string& den,
                                    std::size_t pos) {
        PrimeField d = mod_of_string(den);
        if (d.is_zero())
            throw ValidationError("denominator is zero in the prime field at position " +
                                  std::to_string(pos));
        return mod_of_string(num) / d;
    }
    static PrimeField from_integer(const std::string& s) { return mod_of_string(s); }
};

} // namespace detail

template <CoefficientField K>
class PolyParser {
public:
    PolyParser(std::string text, Ring ring) : s_(std::move(text)), ring_(std::move(ring)) {}

    Poly<K> parse() {
        Poly<K> p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected character");
        return p;
    }

private:
    std::string s_;
    Ring ring_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ValidationError(what + " at position " + std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly<K> expr() {
        bool neg = eat('-');
        Poly<K> acc = term();
        if (neg) acc = -acc;
        for (;;) {
            if (eat('+')) acc = acc + term();
            else if (eat('-')) acc = acc - term();
            else return acc;
        }
    }

    Poly<K> term() {
        Poly<K> acc = factor();
        while (eat('*')) acc = acc * factor();
        return acc;
    }

    Poly<K> factor() {
        Poly<K> b = base();
        if (eat('^')) {
            if (peek() == '-') fail("negative exponent");
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
            std::uint64_t e = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                e = e * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
                if (e > kMaxExp) fail("exponent too large");
                ++pos_;
            }
            return b.pow(e);
        }
        return b;
    }

    Poly<K> base() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Poly<K> p = expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return variable();
        fail("expected variable, number or '('");
    }

    Poly<K> number() {
        std::size_t start = pos_;
        std::string num = digits();
        // lookahead for int '/' int
        std::size_t save = pos_;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            skip_ws();
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                std::string den = digits();
                return Poly<K>::constant(ring_,
                                         detail::CoeffText<K>::from_fraction(num, den, start));
            }
            fail("expected denominator");
        }
        pos_ = save;
        return Poly<K>::constant(ring_, detail::CoeffText<K>::from_integer(num));
    }

    std::string digits() {
        std::string out;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            out.push_back(s_[pos_++]);
        return out;
    }

    Poly<K> variable() {
        std::size_t start = pos_;
        std::string name;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            name.push_back(s_[pos_++]);
        auto idx = ring_->index_of(name);
        if (!idx) {
            pos_ = start;
            fail("unknown variable '" + name + "'");
        }
        return Poly<K>::variable(ring_, *idx);
    }
};

template <CoefficientField K>
Poly<K> parse_poly(const std::string& text, const Ring& ring) {
    return PolyParser<K>(text, ring).parse();
}

template <CoefficientField K>
std::string poly_to_string(const Poly<K>& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        K mag = c;
        if constexpr (std::is_same_v<K, Rational>) {
            if (c.sign() < 0) {
                out += first ? "-" : " - ";
                mag = -c;
            } else if (!first) {
                out += " + ";
            }
        } else {
            if (!first) out += " + ";
        }
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < p.ring()->nvars(); ++i) {
            if (m[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += p.ring()->var_name(i);
            if (m[i] > 1) mono += "^" + std::to_string(m[i]);
        }
        if (mono.empty()) {
            out += mag.str();
        } else if (mag.is_one()) {
            out += mono;
        } else {
            out += mag.str() + "*" + mono;
        }
    }
    return out;
}

} // namespace germinv
