#pragma once

// Scalar invariants of isolated singularities: Milnor and Tjurina numbers
// (hypersurface and complete intersection) and detection of positive weight
// systems.

#include <germinv/module_ops.hpp>

namespace germinv {

template <CoefficientField K>
std::vector<Poly<K>> jacobian(const Poly<K>& g) {
    std::vector<Poly<K>> out;
    for (std::uint32_t v = 0; v < g.ring()->nvars(); ++v) {
        auto d = g.derivative(v);
        if (!d.is_zero()) out.push_back(std::move(d));
    }
    return out;
}

/// dim_C O/J(g) at the origin; infinite for non-isolated singularities.
template <CoefficientField K>
QuotientDim milnor_number(const Poly<K>& g, const EngineContext& ctx = {}) {
    if (!g.vanishes_at_origin()) throw ValidationError("milnor_number: g(0) != 0");
    return vdim_quotient(Ideal<K>::local(g.ring(), jacobian(g)), ctx);
}

/// dim_C O/(J(g) + (g)).
template <CoefficientField K>
QuotientDim tjurina_hypersurface(const Poly<K>& g, const EngineContext& ctx = {}) {
    if (!g.vanishes_at_origin()) throw ValidationError("tjurina: g(0) != 0");
    auto gens = jacobian(g);
    gens.push_back(g);
    return vdim_quotient(Ideal<K>::local(g.ring(), gens), ctx);
}

/// dim_C R^rank / <gens> under the local order.
template <CoefficientField K>
QuotientDim module_colength(const Ring& ring, std::uint32_t rank,
                            const std::vector<ModVec<K>>& gens, const EngineContext& ctx = {}) {
    ModuleOrder mo{MonomialOrdering::negdegrevlex(ring->nvars()), false, {}};
    Engine<K> eng(mo, ring->nvars(), ctx);
    auto basis = eng.standard_basis(detail::to_vpolys(gens, mo));
    return module_quotient_dim(basis, rank, ring->nvars());
}

/// Tjurina number of the complete intersection V(h): the length of the
/// cokernel of  O^{n+k} + O^k -> O_X^k  sending a vector field to its
/// contraction with dh and a tuple to its h-combination. Finite iff V(h) has
/// an isolated singularity.
template <CoefficientField K>
QuotientDim tjurina_icis(const std::vector<Poly<K>>& h, const EngineContext& ctx = {}) {
    if (h.empty()) return QuotientDim::of(0); // smooth ambient source
    const Ring ring = h[0].ring();
    const std::uint32_t k = static_cast<std::uint32_t>(h.size());
    for (const auto& hi : h) {
        hi.check_ring(h[0]);
        if (!hi.vanishes_at_origin()) throw ValidationError("tjurina_icis: h(0) != 0");
    }
    std::vector<ModVec<K>> inner;
    for (std::uint32_t v = 0; v < ring->nvars(); ++v) {
        ModVec<K> col;
        for (std::uint32_t i = 0; i < k; ++i) col.push_back(h[i].derivative(v));
        inner.push_back(std::move(col));
    }
    for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t l = 0; l < k; ++l) {
            ModVec<K> col(k, Poly<K>::zero(ring));
            col[l] = h[i];
            inner.push_back(std::move(col));
        }
    return module_colength(ring, k, inner, ctx);
}

/// Membership g in J(g) in the local ring: the operative condition K(g)=0
/// (an Euler-type relation holds after a coordinate change).
template <CoefficientField K>
bool in_jacobian_ideal(const Poly<K>& g, const EngineContext& ctx = {}) {
    auto J = standard_basis(Ideal<K>::local(g.ring(), jacobian(g)), ctx);
    return ideal_contains(J, g, ctx);
}

// ---------------------------------------------------------------------------
// Positive weight systems

struct WeightCertificate {
    std::vector<Rational> weights; // strictly positive, one per variable
    Rational degree;               // strictly positive

    template <CoefficientField K>
    bool validates(const Poly<K>& g) const {
        for (const auto& w : weights)
            if (w.sign() <= 0) return false;
        if (degree.sign() <= 0) return false;
        for (const auto& [m, c] : g.terms()) {
            Rational acc = Rational::zero();
            for (std::size_t v = 0; v < weights.size(); ++v)
                acc = acc + weights[v] * Rational(static_cast<long>(m[v]));
            if (!(acc == degree)) return false;
        }
        return true;
    }
};

namespace detail {

// Linear inequality sum_j c[j+1] t_j + c[0] > 0 over Q.
using StrictIneq = std::vector<Rational>;

// Fourier-Motzkin feasibility for strict inequalities; returns a satisfying
// point when one exists.
inline std::optional<std::vector<Rational>> fm_feasible(std::vector<StrictIneq> ineqs,
                                                        std::size_t s) {
    if (s == 0) {
        for (const auto& q : ineqs)
            if (q[0].sign() <= 0) return std::nullopt;
        return std::vector<Rational>{};
    }
    std::vector<StrictIneq> lower, upper, rest;
    for (auto& q : ineqs) {
        int sg = q[s].sign();
        if (sg > 0) lower.push_back(q);
        else if (sg < 0) upper.push_back(q);
        else {
            StrictIneq r(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(s));
            rest.push_back(std::move(r));
        }
    }
    for (const auto& a : lower)
        for (const auto& b : upper) {
            StrictIneq r(s);
            for (std::size_t j = 0; j < s; ++j) r[j] = a[s] * b[j] - b[s] * a[j];
            rest.push_back(std::move(r));
        }
    auto sub = fm_feasible(std::move(rest), s - 1);
    if (!sub) return std::nullopt;
    auto eval = [&](const StrictIneq& q) {
        Rational acc = q[0];
        for (std::size_t j = 1; j < s; ++j) acc = acc + q[j] * (*sub)[j - 1];
        return acc;
    };
    std::optional<Rational> lo, hi;
    for (const auto& a : lower) {
        Rational bound = (-eval(a)) / a[s];
        if (!lo || (bound - *lo).sign() > 0) lo = bound;
    }
    for (const auto& b : upper) {
        Rational bound = (-eval(b)) / b[s];
        if (!hi || (bound - *hi).sign() < 0) hi = bound;
    }
    Rational t;
    if (lo && hi) t = (*lo + *hi) / Rational(2);
    else if (lo) t = *lo + Rational(1);
    else if (hi) t = *hi - Rational(1);
    else t = Rational(0);
    sub->push_back(t);
    return sub;
}

} // namespace detail

/// Search for strictly positive weights making every exponent vector of g lie
/// on one hyperplane <w, a> = d. Purely syntactic (fixed coordinates).
template <CoefficientField K>
std::optional<WeightCertificate> weighted_homogeneous_weights(const Poly<K>& g) {
    if (g.is_zero()) throw ValidationError("weight detection on the zero polynomial");
    const std::size_t v = g.ring()->nvars();
    // Normalise d = 1: solve <w, a> = 1 for all exponent vectors by Gaussian
    // elimination over Q.
    std::vector<std::vector<Rational>> rows; // v coefficients, then rhs
    for (const auto& [m, c] : g.terms()) {
        std::vector<Rational> row(v + 1, Rational::zero());
        for (std::size_t i = 0; i < v; ++i) row[i] = Rational(static_cast<long>(m[i]));
        row[v] = Rational(1);
        rows.push_back(std::move(row));
    }
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < v && rank < rows.size(); ++col) {
        std::size_t p = rows.size();
        for (std::size_t r = rank; r < rows.size(); ++r)
            if (!rows[r][col].is_zero()) {
                p = r;
                break;
            }
        if (p == rows.size()) continue;
        std::swap(rows[rank], rows[p]);
        Rational inv = Rational(1) / rows[rank][col];
        for (auto& x : rows[rank]) x = x * inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank) continue;
            Rational f = rows[r][col];
            if (f.is_zero()) continue;
            for (std::size_t c2 = 0; c2 <= v; ++c2)
                rows[r][c2] = rows[r][c2] - f * rows[rank][c2];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t r = rank; r < rows.size(); ++r)
        if (!rows[r][v].is_zero()) return std::nullopt; // inconsistent
    // particular solution + nullspace basis over the free columns
    std::vector<bool> is_pivot(v, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < v; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    const std::size_t s = free_cols.size();
    std::vector<Rational> w0(v, Rational::zero());
    for (std::size_t r = 0; r < rank; ++r) w0[pivot_col[r]] = rows[r][v];
    // w(t) = w0 + sum_j t_j N_j with N_j the standard nullspace vectors
    std::vector<std::vector<Rational>> N(s, std::vector<Rational>(v, Rational::zero()));
    for (std::size_t j = 0; j < s; ++j) {
        N[j][free_cols[j]] = Rational(1);
        for (std::size_t r = 0; r < rank; ++r)
            N[j][pivot_col[r]] = -rows[r][free_cols[j]];
    }
    // positivity: w_i(t) > 0 for all i
    std::vector<detail::StrictIneq> ineqs;
    for (std::size_t i = 0; i < v; ++i) {
        detail::StrictIneq q(s + 1, Rational::zero());
        q[0] = w0[i];
        for (std::size_t j = 0; j < s; ++j) q[j + 1] = N[j][i];
        ineqs.push_back(std::move(q));
    }
    auto point = detail::fm_feasible(std::move(ineqs), s);
    if (!point) return std::nullopt;
    WeightCertificate cert;
    cert.weights.assign(v, Rational::zero());
    for (std::size_t i = 0; i < v; ++i) {
        cert.weights[i] = w0[i];
        for (std::size_t j = 0; j < s; ++j)
            cert.weights[i] = cert.weights[i] + (*point)[j] * N[j][i];
    }
    cert.degree = Rational(1);
    // scale to integer weights for readability
    mpz_class den_lcm = 1;
    for (const auto& w : cert.weights)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), w.den().get_mpz_t());
    Rational scale{mpq_class(den_lcm)};
    for (auto& w : cert.weights) w = w * scale;
    cert.degree = cert.degree * scale;
    if (!cert.validates(g)) throw InternalError("weight certificate failed revalidation");
    return cert;
}

} // namespace germinv
