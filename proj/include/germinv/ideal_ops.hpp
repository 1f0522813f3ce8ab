#pragma once

// Ideal-level operations over the engine: completed bases, normal forms,
// quotient dimensions, elimination, intersection, colon ideals, polynomial
// gcd and squarefreeness. Elimination always runs on global polynomial
// representatives with a block order; local statements are recovered by
// localisation downstream.

#include <germinv/engine.hpp>
#include <germinv/parser.hpp>

namespace germinv {

// ---------------------------------------------------------------------------
// Ring surgery

struct RingExtension {
    Ring ring;
    std::vector<std::uint32_t> old_to_new; // index map for the base ring
    std::vector<std::uint32_t> new_vars;   // indices of the appended variables
};

/// Append fresh variables as a new block.
inline RingExtension extend_ring(const Ring& base, const std::vector<std::string>& names,
                                 const std::string& block_name) {
    std::vector<std::string> vars = base->vars();
    RingExtension ext;
    for (const auto& n : names) {
        if (base->index_of(n))
            throw ValidationError("variable '" + n + "' already present in ring");
        ext.new_vars.push_back(static_cast<std::uint32_t>(vars.size()));
        vars.push_back(n);
    }
    std::vector<RingSpec::Block> blocks;
    for (const auto& b : base->blocks()) blocks.push_back(b);
    blocks.push_back({block_name, ext.new_vars});
    ext.ring = RingSpec::make(std::move(vars), std::move(blocks));
    ext.old_to_new.resize(base->nvars());
    std::iota(ext.old_to_new.begin(), ext.old_to_new.end(), 0u);
    return ext;
}

struct RingRestriction {
    Ring ring;
    std::vector<std::uint32_t> kept; // old indices in order
};

/// Remove the listed variables; blocks shrink accordingly.
inline RingRestriction drop_vars(const Ring& base, const std::vector<std::uint32_t>& drop) {
    std::vector<bool> killed(base->nvars(), false);
    for (auto v : drop) killed[v] = true;
    RingRestriction res;
    std::vector<std::string> vars;
    std::vector<std::uint32_t> old_to_new(base->nvars(), 0);
    for (std::uint32_t i = 0; i < base->nvars(); ++i) {
        if (killed[i]) continue;
        old_to_new[i] = static_cast<std::uint32_t>(vars.size());
        res.kept.push_back(i);
        vars.push_back(base->var_name(i));
    }
    std::vector<RingSpec::Block> blocks;
    for (const auto& b : base->blocks()) {
        RingSpec::Block nb;
        nb.name = b.name;
        for (auto v : b.vars)
            if (!killed[v]) nb.vars.push_back(old_to_new[v]);
        if (!nb.vars.empty()) blocks.push_back(std::move(nb));
    }
    res.ring = RingSpec::make(std::move(vars), std::move(blocks));
    return res;
}

/// Order with the dropped block global-dominant; fully global overall.
inline MonomialOrdering elimination_order(const Ring& ring,
                                          const std::vector<std::uint32_t>& drop) {
    std::vector<bool> d(ring->nvars(), false);
    for (auto v : drop) d[v] = true;
    MonomialOrdering::OrdBlock first, second;
    first.kind = second.kind = OrdKind::DegRevLex;
    for (std::uint32_t i = 0; i < ring->nvars(); ++i) (d[i] ? first : second).vars.push_back(i);
    std::vector<MonomialOrdering::OrdBlock> blocks;
    if (!first.vars.empty()) blocks.push_back(std::move(first));
    if (!second.vars.empty()) blocks.push_back(std::move(second));
    return MonomialOrdering::blocks(std::move(blocks));
}

// ---------------------------------------------------------------------------
// Ideal

template <CoefficientField K>
struct Ideal {
    Ring ring;
    MonomialOrdering ord;
    std::vector<Poly<K>> gens;
    std::vector<Poly<K>> basis; // completed standard basis, when flagged
    bool completed = false;

    static Ideal make(Ring ring, MonomialOrdering ord, std::vector<Poly<K>> gens) {
        Ideal I;
        I.ring = std::move(ring);
        I.ord = std::move(ord);
        for (auto& g : gens)
            if (!g.is_zero()) I.gens.push_back(std::move(g));
        return I;
    }
    static Ideal local(Ring ring, std::vector<Poly<K>> gens) {
        auto n = ring->nvars();
        return make(std::move(ring), MonomialOrdering::negdegrevlex(n), std::move(gens));
    }
    static Ideal global(Ring ring, std::vector<Poly<K>> gens) {
        auto n = ring->nvars();
        return make(std::move(ring), MonomialOrdering::degrevlex(n), std::move(gens));
    }
};

template <CoefficientField K>
ModuleOrder ideal_order(const Ideal<K>& I) {
    return ModuleOrder{I.ord, false, {}};
}

/// Complete (and cache) a standard basis. Values are immutable: returns a new
/// Ideal carrying the basis.
template <CoefficientField K>
Ideal<K> standard_basis(Ideal<K> I, const EngineContext& ctx = {}) {
    if (I.completed) return I;
    ModuleOrder mo = ideal_order(I);
    Engine<K> eng(mo, I.ring->nvars(), ctx);
    std::vector<VPoly<K>> in;
    in.reserve(I.gens.size());
    for (const auto& g : I.gens) in.push_back(to_vpoly(g, 0, mo));
    auto out = eng.standard_basis(in);
    I.basis.clear();
    for (const auto& v : out) I.basis.push_back(from_vpoly(v, I.ring, 1)[0]);
    I.completed = true;
    return I;
}

/// Weak normal form against a completed basis; strong (with tail reduction)
/// for global orderings.
template <CoefficientField K>
Poly<K> normal_form(const Poly<K>& p, const Ideal<K>& I, const EngineContext& ctx = {}) {
    if (!I.completed) throw InternalError("normal_form requires a completed basis");
    ModuleOrder mo = ideal_order(I);
    Engine<K> eng(mo, I.ring->nvars(), ctx);
    std::vector<VPoly<K>> basis;
    basis.reserve(I.basis.size());
    for (const auto& g : I.basis) basis.push_back(to_vpoly(g, 0, mo));
    bool global = eng.global();
    return from_vpoly(eng.normal_form(to_vpoly(p, 0, mo), basis, global, false), I.ring, 1)[0];
}

template <CoefficientField K>
bool ideal_contains(const Ideal<K>& I, const Poly<K>& p, const EngineContext& ctx = {}) {
    if (p.is_zero()) return true;
    if (!I.completed) throw InternalError("membership requires a completed basis");
    ModuleOrder mo = ideal_order(I);
    Engine<K> eng(mo, I.ring->nvars(), ctx);
    std::vector<VPoly<K>> basis;
    for (const auto& g : I.basis) basis.push_back(to_vpoly(g, 0, mo));
    return eng.reduces_to_zero(to_vpoly(p, 0, mo), basis);
}

/// Equality as ideals of the (localised, if the ordering is local) ring.
template <CoefficientField K>
bool ideal_equal(const Ideal<K>& I, const Ideal<K>& J, const EngineContext& ctx = {}) {
    Ideal<K> Ic = standard_basis(I, ctx), Jc = standard_basis(J, ctx);
    for (const auto& g : Jc.basis)
        if (!ideal_contains(Ic, g, ctx)) return false;
    for (const auto& g : Ic.basis)
        if (!ideal_contains(Jc, g, ctx)) return false;
    return true;
}

/// Lead monomial with respect to an explicit ordering (storage order of the
/// terms is fixed and generally different).
template <CoefficientField K>
Monomial lead_monomial(const Poly<K>& p, const MonomialOrdering& ord) {
    if (p.is_zero()) throw InternalError("lead monomial of zero");
    const Monomial* best = &p.terms().front().first;
    for (const auto& [m, c] : p.terms())
        if (ord.cmp(m, *best) > 0) best = &m;
    return *best;
}

/// Number of standard monomials of the leading ideal; the C-dimension of the
/// quotient ring under the ideal's ordering.
template <CoefficientField K>
QuotientDim vdim_quotient(const Ideal<K>& I, const EngineContext& ctx = {}) {
    Ideal<K> c = standard_basis(I, ctx);
    std::vector<Monomial> leads;
    for (const auto& g : c.basis) leads.push_back(lead_monomial(g, c.ord));
    return staircase_count(leads, c.ring->nvars());
}

// ---------------------------------------------------------------------------
// Elimination and derived operations

/// Generators of I intersected with the subring omitting `drop`.
/// Returns generators over the restricted ring.
template <CoefficientField K>
std::vector<Poly<K>> eliminate(const Ring& ring, const std::vector<Poly<K>>& gens,
                               const std::vector<std::uint32_t>& drop,
                               const EngineContext& ctx = {}) {
    Ideal<K> I = Ideal<K>::make(ring, elimination_order(ring, drop), gens);
    I = standard_basis(I, ctx);
    RingRestriction res = drop_vars(ring, drop);
    std::vector<std::uint32_t> old_to_new(ring->nvars(), 0);
    for (std::uint32_t n = 0; n < res.kept.size(); ++n) old_to_new[res.kept[n]] = n;
    std::vector<bool> dropped(ring->nvars(), false);
    for (auto v : drop) dropped[v] = true;
    std::vector<Poly<K>> out;
    for (const auto& g : I.basis) {
        bool free = true;
        for (const auto& [m, c] : g.terms())
            for (std::uint32_t v = 0; v < ring->nvars() && free; ++v)
                free = !(dropped[v] && m[v] > 0);
        if (!free) continue;
        // strip dropped variables (all exponents zero there)
        std::vector<typename Poly<K>::Term> ts;
        for (const auto& [m, c] : g.terms()) {
            Monomial nm(res.ring->nvars());
            for (auto v : res.kept) nm.at(old_to_new[v]) = m[v];
            ts.emplace_back(std::move(nm), c);
        }
        out.push_back(Poly<K>::from_terms(res.ring, std::move(ts)));
    }
    return out;
}

/// I cap J via the auxiliary-parameter trick: eliminate t from t I + (1-t) J.
template <CoefficientField K>
std::vector<Poly<K>> intersect(const Ring& ring, const std::vector<Poly<K>>& I,
                               const std::vector<Poly<K>>& J, const EngineContext& ctx = {}) {
    RingExtension ext = extend_ring(ring, {"@t"}, "aux");
    std::uint32_t t = ext.new_vars[0];
    Poly<K> tp = Poly<K>::variable(ext.ring, t);
    Poly<K> one_minus_t = Poly<K>::constant(ext.ring, K::one()) - tp;
    std::vector<Poly<K>> gens;
    for (const auto& p : I) gens.push_back(tp * p.mapped(ext.ring, ext.old_to_new));
    for (const auto& p : J) gens.push_back(one_minus_t * p.mapped(ext.ring, ext.old_to_new));
    auto elim = eliminate(ext.ring, gens, {t}, ctx);
    // the restricted ring equals the base ring structurally
    std::vector<std::uint32_t> id(ring->nvars());
    std::iota(id.begin(), id.end(), 0u);
    std::vector<Poly<K>> out;
    for (const auto& p : elim) out.push_back(p.mapped(ring, id));
    return out;
}

/// (I : q) = (I cap (q)) / q, valid over the ring and all its localisations.
template <CoefficientField K>
std::vector<Poly<K>> colon_by_element(const Ring& ring, const std::vector<Poly<K>>& I,
                                      const Poly<K>& q, const EngineContext& ctx = {}) {
    if (q.is_zero()) throw ValidationError("colon by the zero polynomial");
    auto cap = intersect(ring, I, {q}, ctx);
    std::vector<Poly<K>> out;
    for (const auto& p : cap) {
        auto d = exact_divide(p, q);
        if (!d) throw InternalError("colon: intersection member not divisible");
        if (!d->is_zero()) out.push_back(std::move(*d));
    }
    return out;
}

/// gcd of two nonzero polynomials via (p) cap (q) = (lcm).
template <CoefficientField K>
Poly<K> poly_gcd(const Poly<K>& p, const Poly<K>& q, const EngineContext& ctx = {}) {
    if (p.is_zero()) return q.normalized_unit();
    if (q.is_zero()) return p.normalized_unit();
    auto cap = intersect<K>(p.ring(), std::vector<Poly<K>>{p}, std::vector<Poly<K>>{q}, ctx);
    Ideal<K> L = standard_basis(Ideal<K>::global(p.ring(), cap), ctx);
    if (L.basis.size() != 1)
        throw InternalError("intersection of principal ideals is not principal");
    auto d = exact_divide(p * q, L.basis[0]);
    if (!d) throw InternalError("gcd: product not divisible by lcm");
    return d->normalized_unit();
}

/// True iff p has no repeated factor: gcd(p, all partial derivatives) is a
/// nonzero constant.
template <CoefficientField K>
bool squarefree_check(const Poly<K>& p, const EngineContext& ctx = {}) {
    if (p.is_zero()) throw ValidationError("squarefree_check of zero");
    Poly<K> g = p;
    for (std::uint32_t v = 0; v < p.ring()->nvars(); ++v) {
        if (g.is_unit_constant()) return true;
        Poly<K> d = p.derivative(v);
        if (d.is_zero()) continue;
        g = poly_gcd(g, d, ctx);
    }
    return g.is_unit_constant();
}

} // namespace germinv
