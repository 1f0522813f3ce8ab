#pragma once

// Direct-image presentations of finite ring maps and Fitting ideals of the
// resulting presentation matrices.

#include <germinv/module_ops.hpp>

namespace germinv {

/// phi: target-ring -> source-ring, one source polynomial per target variable.
/// Pullback is substitution.
template <CoefficientField K>
struct RingMap {
    Ring source;
    Ring target;
    std::vector<Poly<K>> images; // indexed by target variable

    Poly<K> pullback(const Poly<K>& p) const {
        if (!same_ring(p.ring(), target)) throw InternalError("pullback: ring mismatch");
        return p.substitute(source, images);
    }
};

/// Presentation of the source ring as a module over the target ring:
/// generators are monomials (a Nakayama basis of source/(pullback of the
/// target maximal ideal)), columns are the relations among them.
template <CoefficientField K>
struct PushforwardPresentation {
    Ring target;
    std::vector<Monomial> generators;          // source-ring monomials, 1 first
    std::vector<std::vector<Poly<K>>> columns; // each of length generators.size()

    std::size_t rows() const { return generators.size(); }
    std::size_t cols() const { return columns.size(); }
    const Poly<K>& entry(std::size_t r, std::size_t c) const { return columns[c][r]; }
};

/// Multiplicity of the map: dim source/(pullback of target maximal ideal).
/// Infinite means the map is not finite.
template <CoefficientField K>
QuotientDim map_multiplicity(const RingMap<K>& phi, const EngineContext& ctx = {}) {
    return vdim_quotient(standard_basis(Ideal<K>::local(phi.source, phi.images), ctx), ctx);
}

template <CoefficientField K>
PushforwardPresentation<K> pushforward_presentation(const RingMap<K>& phi,
                                                    const EngineContext& ctx = {}) {
    const std::size_t ns = phi.source->nvars();
    // module generators: standard monomials of source/(images), 1 first
    Ideal<K> fibre = standard_basis(Ideal<K>::local(phi.source, phi.images), ctx);
    std::vector<Monomial> leads;
    for (const auto& g : fibre.basis) leads.push_back(lead_monomial(g, fibre.ord));
    if (!staircase_count(leads, ns).finite)
        throw ValidationError("pushforward: map is not finite");
    std::vector<Monomial> gens = staircase_monomials(leads, ns);
    const std::uint32_t m = static_cast<std::uint32_t>(gens.size());

    // graph ring source ++ target, graph ideal T_j - phi_j
    std::vector<std::string> tnames = phi.target->vars();
    RingExtension ext = extend_ring(phi.source, tnames, "graph-target");
    std::vector<std::uint32_t> tgt_in_graph = ext.new_vars;
    std::vector<Poly<K>> gamma;
    for (std::uint32_t j = 0; j < phi.target->nvars(); ++j)
        gamma.push_back(Poly<K>::variable(ext.ring, tgt_in_graph[j]) -
                        phi.images[j].mapped(ext.ring, ext.old_to_new));

    // relations among the generators modulo the graph ideal, in rank 1
    std::vector<std::uint32_t> src_idx(ns);
    std::iota(src_idx.begin(), src_idx.end(), 0u);
    MonomialOrdering elim = elimination_order(ext.ring, src_idx);
    std::vector<ModVec<K>> items;
    for (const auto& g : gens) {
        Monomial padded(ext.ring->nvars());
        for (std::size_t v = 0; v < ns; ++v) padded.at(v) = g[v];
        items.push_back(ModVec<K>{Poly<K>::monomial(ext.ring, std::move(padded), K::one())});
    }
    for (const auto& p : gamma) items.push_back(ModVec<K>{p});
    auto syz = syzygies(ext.ring, 1, items, elim, ctx);

    // keep the generator coordinates, then eliminate the source variables
    std::vector<ModVec<K>> proj;
    for (auto& s : syz) {
        ModVec<K> c(s.begin(), s.begin() + m);
        if (!std::all_of(c.begin(), c.end(), [](const Poly<K>& p) { return p.is_zero(); }))
            proj.push_back(std::move(c));
    }
    auto basis = module_standard_basis(ext.ring, m, proj, elim, false, ctx);

    PushforwardPresentation<K> P;
    P.target = phi.target;
    P.generators = gens;
    std::vector<std::uint32_t> old_to_new(ext.ring->nvars(), 0);
    for (std::uint32_t j = 0; j < phi.target->nvars(); ++j) old_to_new[tgt_in_graph[j]] = j;
    for (const auto& col : basis) {
        bool free = true;
        for (const auto& p : col)
            for (const auto& [mm, cc] : p.terms())
                for (std::size_t v = 0; v < ns && free; ++v) free = mm[v] == 0;
        if (!free) continue;
        std::vector<Poly<K>> tcol;
        for (const auto& p : col) {
            std::vector<typename Poly<K>::Term> ts;
            for (const auto& [mm, cc] : p.terms()) {
                Monomial nm(phi.target->nvars());
                for (std::uint32_t j = 0; j < phi.target->nvars(); ++j)
                    nm.at(j) = mm[tgt_in_graph[j]];
                ts.emplace_back(std::move(nm), cc);
            }
            tcol.push_back(Poly<K>::from_terms(phi.target, std::move(ts)));
        }
        P.columns.push_back(std::move(tcol));
    }
    return P;
}

namespace detail {

template <CoefficientField K>
Poly<K> minor_det(const PushforwardPresentation<K>& P, const std::vector<std::uint32_t>& rows,
                  const std::vector<std::uint32_t>& cols) {
    // Laplace expansion along rows, memoised on the surviving column subset.
    std::map<std::uint64_t, Poly<K>> memo;
    std::function<Poly<K>(std::uint64_t, std::size_t)> det = [&](std::uint64_t colmask,
                                                                 std::size_t t) -> Poly<K> {
        if (t == 0) return Poly<K>::constant(P.target, K::one());
        auto it = memo.find(colmask);
        if (it != memo.end()) return it->second;
        Poly<K> acc(P.target);
        std::size_t pos = 0;
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (!(colmask & (1ull << j))) continue;
            const Poly<K>& e = P.entry(rows[t - 1], cols[j]);
            if (!e.is_zero()) {
                Poly<K> sub = det(colmask & ~(1ull << j), t - 1);
                Poly<K> term = e * sub;
                acc = ((t - 1 + pos) % 2 == 0) ? acc + term : acc - term;
            }
            ++pos;
        }
        memo.emplace(colmask, acc);
        return acc;
    };
    std::uint64_t full = 0;
    for (std::size_t j = 0; j < cols.size(); ++j) full |= 1ull << j;
    return det(full, rows.size());
}

inline void for_each_subset(std::uint32_t n, std::uint32_t k,
                            const std::function<void(const std::vector<std::uint32_t>&)>& f) {
    std::vector<std::uint32_t> idx(k);
    std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t start,
                                                                std::uint32_t depth) {
        if (depth == k) {
            f(idx);
            return;
        }
        for (std::uint32_t i = start; i + (k - depth) <= n; ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
}

} // namespace detail

/// i-th Fitting ideal: all (m-i) x (m-i) minors of the presentation matrix.
/// i >= m gives the unit ideal; minors larger than the column count give (0).
template <CoefficientField K>
std::vector<Poly<K>> fitting_ideal(const PushforwardPresentation<K>& P, std::uint32_t i) {
    const std::uint32_t m = static_cast<std::uint32_t>(P.rows());
    if (i > m) throw ValidationError("fitting_ideal: index out of range");
    const std::uint32_t s = m - i;
    if (s == 0) return {Poly<K>::constant(P.target, K::one())};
    if (s > P.cols()) return {};
    std::vector<Poly<K>> out;
    detail::for_each_subset(m, s, [&](const std::vector<std::uint32_t>& rows) {
        detail::for_each_subset(static_cast<std::uint32_t>(P.cols()), s,
                                [&](const std::vector<std::uint32_t>& cols) {
                                    Poly<K> d = detail::minor_det(P, rows, cols);
                                    if (!d.is_zero()) out.push_back(d.normalized_unit());
                                });
    });
    return out;
}

} // namespace germinv
