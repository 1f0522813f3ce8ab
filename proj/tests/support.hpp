#pragma once

// Shared helpers for the test suites: rings, parsing shorthands and seeded
// random generation of polynomials and monomials.

#include <germinv/ideal_ops.hpp>
#include <germinv/parser.hpp>

#include <random>

namespace testsupport {

using namespace germinv;

inline Ring ring_xyz() { return RingSpec::make({"x", "y", "z"}); }
inline Ring ring_xy() { return RingSpec::make({"x", "y"}); }

inline PolyQ q(const std::string& text, const Ring& r) { return parse_poly<Rational>(text, r); }

struct Rng {
    std::mt19937 gen;
    explicit Rng(std::uint32_t seed) : gen(seed) {}

    int uniform(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(gen);
    }

    Monomial monomial(std::size_t nvars, int max_exp) {
        Monomial m(nvars);
        for (std::size_t i = 0; i < nvars; ++i)
            m.at(i) = static_cast<Exp>(uniform(0, max_exp));
        return m;
    }

    PolyQ poly(const Ring& r, int max_terms, int max_exp, bool allow_zero = true) {
        std::vector<PolyQ::Term> ts;
        int n = uniform(allow_zero ? 0 : 1, max_terms);
        for (int t = 0; t < n; ++t) {
            int c = uniform(-9, 9);
            if (c == 0) c = 1;
            ts.emplace_back(monomial(r->nvars(), max_exp), Rational(c));
        }
        return PolyQ::from_terms(r, std::move(ts));
    }
};

} // namespace testsupport
