#pragma once

// Submodules of free modules: standard bases, syzygies by the tag-component
// elimination construction, and lengths of subquotients.

#include <germinv/ideal_ops.hpp>

namespace germinv {

/// Element of a free module R^rank as a component list.
template <CoefficientField K>
using ModVec = std::vector<Poly<K>>;

template <CoefficientField K>
struct SubmodulePresentation {
    Ring ring;
    std::uint32_t ambient_rank = 0;
    std::vector<ModVec<K>> generators;
    std::vector<ModVec<K>> relations; // columns over R^{generators.size()}
    bool explicitly_zero = false;     // distinguishes the zero module

    std::size_t ngens() const { return generators.size(); }
};

namespace detail {

template <CoefficientField K>
std::vector<VPoly<K>> to_vpolys(const std::vector<ModVec<K>>& gens, const ModuleOrder& mo) {
    std::vector<VPoly<K>> out;
    out.reserve(gens.size());
    for (const auto& g : gens) {
        auto v = to_vpoly(g, mo);
        if (!v.is_zero()) out.push_back(std::move(v));
    }
    return out;
}

} // namespace detail

template <CoefficientField K>
std::vector<ModVec<K>> module_standard_basis(const Ring& ring, std::uint32_t rank,
                                             const std::vector<ModVec<K>>& gens,
                                             const MonomialOrdering& ord, bool pot = false,
                                             const EngineContext& ctx = {}) {
    ModuleOrder mo{ord, pot, {}};
    Engine<K> eng(mo, ring->nvars(), ctx);
    auto basis = eng.standard_basis(detail::to_vpolys(gens, mo));
    std::vector<ModVec<K>> out;
    for (const auto& b : basis) out.push_back(from_vpoly(b, ring, rank));
    return out;
}

/// First syzygy module of `gens` in R^rank: all coefficient vectors c with
/// sum c_i gens_i = 0, as elements of R^{#gens}.
template <CoefficientField K>
std::vector<ModVec<K>> syzygies(const Ring& ring, std::uint32_t rank,
                                const std::vector<ModVec<K>>& gens, const MonomialOrdering& ord,
                                const EngineContext& ctx = {}) {
    const std::uint32_t g = static_cast<std::uint32_t>(gens.size());
    ModuleOrder mo{ord, false, {}};
    mo.level.assign(rank, 0);
    mo.level.resize(rank + g, 1);
    Engine<K> eng(mo, ring->nvars(), ctx);
    std::vector<VPoly<K>> in;
    for (std::uint32_t i = 0; i < g; ++i) {
        std::vector<MTerm<K>> ts;
        for (std::uint32_t c = 0; c < rank && c < gens[i].size(); ++c)
            for (const auto& [m, k] : gens[i][c].terms()) ts.push_back(MTerm<K>{m, c, k});
        ts.push_back(MTerm<K>{Monomial(ring->nvars()), rank + i, K::one()});
        in.push_back(vp_normalize(std::move(ts), mo));
    }
    auto basis = eng.standard_basis(in);
    std::vector<ModVec<K>> out;
    for (const auto& b : basis) {
        if (b.is_zero() || b.lead().comp < rank) continue;
        VPoly<K> stripped;
        for (const auto& t : b.t)
            stripped.t.push_back(MTerm<K>{t.m, t.comp - rank, t.c});
        out.push_back(from_vpoly(stripped, ring, g));
    }
    return out;
}

/// Coefficient vectors c in R^{#outer} with sum c_i outer_i inside <inner>:
/// the full relation module of the images of `outer` in R^rank / <inner>.
template <CoefficientField K>
std::vector<ModVec<K>> relations_modulo(const Ring& ring, std::uint32_t rank,
                                        const std::vector<ModVec<K>>& outer,
                                        const std::vector<ModVec<K>>& inner,
                                        const MonomialOrdering& ord,
                                        const EngineContext& ctx = {}) {
    std::vector<ModVec<K>> combined = outer;
    combined.insert(combined.end(), inner.begin(), inner.end());
    auto syz = syzygies(ring, rank, combined, ord, ctx);
    const std::size_t o = outer.size();
    std::vector<ModVec<K>> out;
    for (auto& s : syz) {
        ModVec<K> c(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(o));
        bool zero = std::all_of(c.begin(), c.end(), [](const Poly<K>& p) { return p.is_zero(); });
        if (!zero) out.push_back(std::move(c));
    }
    return out;
}

/// Verifies inner subset of <outer> (reduction against a completed basis).
template <CoefficientField K>
bool module_contains_all(const Ring& ring, std::uint32_t rank,
                         const std::vector<ModVec<K>>& outer,
                         const std::vector<ModVec<K>>& inner, const MonomialOrdering& ord,
                         const EngineContext& ctx = {}) {
    ModuleOrder mo{ord, false, {}};
    Engine<K> eng(mo, ring->nvars(), ctx);
    auto basis = eng.standard_basis(detail::to_vpolys(outer, mo));
    for (const auto& v : inner) {
        auto w = to_vpoly(v, mo);
        if (!w.is_zero() && !eng.reduces_to_zero(w, basis)) return false;
    }
    return true;
}

/// dim_C <outer>/<inner> under a local ordering. Inner containment is
/// checked, not assumed.
template <CoefficientField K>
QuotientDim subquotient_dim(const Ring& ring, std::uint32_t rank,
                            const std::vector<ModVec<K>>& outer,
                            const std::vector<ModVec<K>>& inner, const MonomialOrdering& ord,
                            const EngineContext& ctx = {}, bool check_containment = true) {
    if (outer.empty()) return QuotientDim::of(0);
    if (check_containment && !module_contains_all(ring, rank, outer, inner, ord, ctx))
        throw IdentityError("subquotient_dim: inner module is not contained in the outer module");
    auto rel = relations_modulo(ring, rank, outer, inner, ord, ctx);
    ModuleOrder mo{ord, false, {}};
    Engine<K> eng(mo, ring->nvars(), ctx);
    auto basis = eng.standard_basis(detail::to_vpolys(rel, mo));
    return module_quotient_dim(basis, static_cast<std::uint32_t>(outer.size()),
                               ring->nvars());
}

/// Presentation of <outer>/<inner>: generators are the outer images, the
/// relation columns are computed.
template <CoefficientField K>
SubmodulePresentation<K> present_subquotient(const Ring& ring, std::uint32_t rank,
                                             const std::vector<ModVec<K>>& outer,
                                             const std::vector<ModVec<K>>& inner,
                                             const MonomialOrdering& ord,
                                             const EngineContext& ctx = {}) {
    SubmodulePresentation<K> P;
    P.ring = ring;
    P.ambient_rank = rank;
    P.generators = outer;
    if (outer.empty()) {
        P.explicitly_zero = true;
        return P;
    }
    P.relations = relations_modulo(ring, rank, outer, inner, ord, ctx);
    return P;
}

/// Ideal quotient helpers reused by the pipeline: ideals are rank-1 modules.
template <CoefficientField K>
std::vector<ModVec<K>> as_rank1(const std::vector<Poly<K>>& gens) {
    std::vector<ModVec<K>> out;
    out.reserve(gens.size());
    for (const auto& g : gens)
        if (!g.is_zero()) out.push_back(ModVec<K>{g});
    return out;
}

} // namespace germinv
