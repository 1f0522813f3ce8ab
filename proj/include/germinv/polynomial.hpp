#pragma once

// Sparse exact multivariate polynomials. Terms are kept in a fixed canonical
// storage order (degrevlex over the full variable list) so equality is
// structural; basis computations re-sort into their own active order.

#include <germinv/coeff.hpp>
#include <germinv/ring.hpp>

#include <functional>
#include <utility>
#include <vector>

namespace germinv {

/// Canonical storage comparison: degrevlex on the full exponent vector.
inline int storage_cmp(const Monomial& a, const Monomial& b) {
    std::uint64_t da = a.degree(), db = b.degree();
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t j = a.nvars(); j-- > 0;)
        if (a[j] != b[j]) return a[j] < b[j] ? 1 : -1;
    return 0;
}

template <CoefficientField K>
class Poly {
public:
    using Term = std::pair<Monomial, K>;

    Poly() = default;
    explicit Poly(Ring ring) : ring_(std::move(ring)) {}

    static Poly zero(Ring ring) { return Poly(std::move(ring)); }

    static Poly constant(Ring ring, K c) {
        Poly p(std::move(ring));
        if (!c.is_zero()) p.terms_.emplace_back(Monomial(p.ring_->nvars()), std::move(c));
        return p;
    }

    static Poly variable(const Ring& ring, std::uint32_t i) {
        Poly p(ring);
        Monomial m(ring->nvars());
        m.at(i) = 1;
        p.terms_.emplace_back(std::move(m), K::one());
        return p;
    }

    static Poly monomial(const Ring& ring, Monomial m, K c) {
        Poly p(ring);
        if (!c.is_zero()) p.terms_.emplace_back(std::move(m), std::move(c));
        return p;
    }

    /// Build from an arbitrary term list: sorts, merges, drops zeros.
    static Poly from_terms(Ring ring, std::vector<Term> ts) {
        Poly p(std::move(ring));
        std::sort(ts.begin(), ts.end(), [](const Term& a, const Term& b) {
            return storage_cmp(a.first, b.first) > 0;
        });
        for (auto& t : ts) {
            if (!p.terms_.empty() && p.terms_.back().first == t.first) {
                p.terms_.back().second = p.terms_.back().second + t.second;
                if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
            } else if (!t.second.is_zero()) {
                p.terms_.push_back(std::move(t));
            }
        }
        return p;
    }

    const Ring& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t nterms() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
    }
    /// Nonzero constant (a unit of the local ring trivially).
    bool is_unit_constant() const { return terms_.size() == 1 && terms_[0].first.is_one(); }

    K constant_term() const {
        if (!terms_.empty() && terms_.back().first.is_one()) return terms_.back().second;
        return K::zero();
    }
    bool vanishes_at_origin() const { return constant_term().is_zero(); }

    std::uint64_t total_degree() const {
        std::uint64_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.first.degree());
        return d;
    }

    // -- arithmetic ---------------------------------------------------------

    Poly operator-() const {
        Poly r(*this);
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    Poly operator+(const Poly& o) const { return merged(o, false); }
    Poly operator-(const Poly& o) const { return merged(o, true); }

    Poly operator*(const Poly& o) const {
        check_ring(o);
        Poly r(ring_);
        if (is_zero() || o.is_zero()) return r;
        std::vector<Term> acc;
        acc.reserve(terms_.size() * o.terms_.size());
        for (const auto& a : terms_)
            for (const auto& b : o.terms_)
                acc.emplace_back(a.first * b.first, a.second * b.second);
        return from_terms(ring_, std::move(acc));
    }

    Poly scaled(const K& c) const {
        Poly r(ring_);
        if (c.is_zero()) return r;
        r.terms_ = terms_;
        for (auto& t : r.terms_) t.second = t.second * c;
        return r;
    }

    Poly times_term(const Monomial& m, const K& c) const {
        Poly r(ring_);
        if (c.is_zero()) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.emplace_back(t.first * m, t.second * c);
        return r;
    }

    Poly pow(std::uint64_t e) const {
        Poly r = constant(ring_, K::one());
        Poly base(*this);
        while (e) {
            if (e & 1) r = r * base;
            base = (e >>= 1) ? base * base : base;
        }
        return r;
    }

    bool operator==(const Poly& o) const {
        return same_ring(ring_, o.ring_) && terms_ == o.terms_;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // -- calculus / substitution --------------------------------------------

    Poly derivative(std::uint32_t var) const {
        Poly r(ring_);
        std::vector<Term> acc;
        for (const auto& t : terms_) {
            Exp e = t.first[var];
            if (e == 0) continue;
            Monomial m = t.first;
            m.at(var) = e - 1;
            acc.emplace_back(std::move(m), t.second * int_to_coeff(static_cast<long long>(e)));
        }
        return from_terms(ring_, std::move(acc));
    }

    /// Substitute every variable by a polynomial over `target`.
    /// `images[i]` replaces variable i of this ring.
    Poly<K> substitute(const Ring& target, const std::vector<Poly<K>>& images) const {
        if (images.size() != ring_->nvars())
            throw InternalError("substitute: image count mismatch");
        // cache powers per variable
        std::vector<std::vector<Poly<K>>> pow_cache(images.size());
        auto power = [&](std::size_t i, Exp e) -> const Poly<K>& {
            auto& cache = pow_cache[i];
            if (cache.empty()) cache.push_back(Poly<K>::constant(target, K::one()));
            while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
            return cache[e];
        };
        Poly<K> acc(target);
        for (const auto& t : terms_) {
            Poly<K> term = Poly<K>::constant(target, t.second);
            for (std::size_t i = 0; i < images.size(); ++i)
                if (t.first[i] > 0) term = term * power(i, t.first[i]);
            acc = acc + term;
        }
        return acc;
    }

    /// Reinterpret over another ring via a variable-index map
    /// (new_index = var_map[old_index]).
    Poly<K> mapped(const Ring& target, const std::vector<std::uint32_t>& var_map) const {
        Poly<K> r(target);
        r.terms_.reserve(terms_.size());
        std::vector<Term> acc;
        for (const auto& t : terms_) {
            Monomial m(target->nvars());
            for (std::size_t i = 0; i < ring_->nvars(); ++i) m.at(var_map[i]) = t.first[i];
            acc.emplace_back(std::move(m), t.second);
        }
        return from_terms(target, std::move(acc));
    }

    /// Set the listed variables to zero.
    Poly<K> at_zero(const std::vector<std::uint32_t>& vars) const {
        std::vector<bool> kill(ring_->nvars(), false);
        for (auto v : vars) kill[v] = true;
        std::vector<Term> acc;
        for (const auto& t : terms_) {
            bool dies = false;
            for (std::size_t i = 0; i < ring_->nvars() && !dies; ++i)
                dies = kill[i] && t.first[i] > 0;
            if (!dies) acc.push_back(t);
        }
        return from_terms(ring_, std::move(acc));
    }

    // -- normal forms of the value itself ------------------------------------

    /// Scale to a canonical representative of the same ideal: integer-primitive
    /// with positive lead for rationals, monic for prime fields.
    Poly normalized_unit() const {
        if (is_zero()) return *this;
        Poly r(*this);
        if constexpr (std::is_same_v<K, Rational>) {
            mpz_class num_gcd = 0, den_lcm = 1;
            for (const auto& t : r.terms_) {
                mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.second.num().get_mpz_t());
                mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.second.den().get_mpz_t());
            }
            Rational scale{mpq_class(den_lcm, num_gcd)};
            if (r.terms_[0].second.sign() < 0) scale = -scale;
            for (auto& t : r.terms_) t.second = t.second * scale;
        } else {
            K inv = r.terms_[0].second.inverse();
            for (auto& t : r.terms_) t.second = t.second * inv;
        }
        return r;
    }

    static K int_to_coeff(long long n) {
        if constexpr (std::is_same_v<K, Rational>)
            return Rational(static_cast<long>(n));
        else
            return K::from_int(n);
    }

    void check_ring(const Poly& o) const {
        if (!same_ring(ring_, o.ring_)) throw ValidationError("ring mismatch");
    }

private:
    Ring ring_;
    std::vector<Term> terms_; // sorted desc by storage_cmp, no zero coeffs

    Poly merged(const Poly& o, bool subtract) const {
        check_ring(o);
        Poly r(ring_);
        r.terms_.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            int c;
            if (i >= terms_.size()) c = -1;
            else if (j >= o.terms_.size()) c = 1;
            else c = storage_cmp(terms_[i].first, o.terms_[j].first);
            if (c > 0) {
                r.terms_.push_back(terms_[i++]);
            } else if (c < 0) {
                const auto& t = o.terms_[j++];
                r.terms_.emplace_back(t.first, subtract ? -t.second : t.second);
            } else {
                K v = subtract ? terms_[i].second - o.terms_[j].second
                               : terms_[i].second + o.terms_[j].second;
                if (!v.is_zero()) r.terms_.emplace_back(terms_[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        return r;
    }
};

/// Single-divisor exact division; nullopt when q does not divide p.
template <CoefficientField K>
std::optional<Poly<K>> exact_divide(const Poly<K>& p, const Poly<K>& q) {
    p.check_ring(q);
    if (q.is_zero()) throw ValidationError("division by zero polynomial");
    Poly<K> h = p;
    std::vector<typename Poly<K>::Term> quot;
    const auto& qlt = q.terms().front();
    while (!h.is_zero()) {
        const auto& hlt = h.terms().front();
        if (!qlt.first.divides(hlt.first)) return std::nullopt;
        Monomial m = hlt.first / qlt.first;
        K c = hlt.second / qlt.second;
        h = h - q.times_term(m, c);
        quot.emplace_back(std::move(m), std::move(c));
    }
    return Poly<K>::from_terms(p.ring(), std::move(quot));
}

using PolyQ = Poly<Rational>;
using PolyP = Poly<PrimeField>;

} // namespace germinv
