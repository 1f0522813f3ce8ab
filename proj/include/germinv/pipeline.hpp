#pragma once

// The end-to-end machinery for a finite map germ on an ICIS: the companion
// map with smooth source, its image equation, the conductor computed two
// independent ways, the Jacobian module and its relative version for
// unfoldings, the A_e-codimension from the definition, and the Samuel
// multiplicity of the relative module.

#include <germinv/germ.hpp>

#include <chrono>
#include <sstream>

namespace germinv {

// ---------------------------------------------------------------------------
// Small utilities

class Stopwatch {
public:
    Stopwatch() : t_(std::chrono::steady_clock::now()) {}
    double lap_ms() {
        auto now = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(now - t_).count();
        t_ = now;
        return ms;
    }

private:
    std::chrono::steady_clock::time_point t_;
};

struct IdentityRecord {
    std::string name;
    bool pass = false;
    std::string lhs;
    std::string rhs;
};

/// Reinterpret a polynomial over a ring holding the same variable names
/// (possibly permuted, possibly a superset).
template <CoefficientField K>
Poly<K> transport(const Poly<K>& p, const Ring& target) {
    constexpr std::uint32_t absent = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> var_map(p.ring()->nvars(), absent);
    for (std::uint32_t i = 0; i < p.ring()->nvars(); ++i) {
        auto idx = target->index_of(p.ring()->var_name(i));
        if (idx) var_map[i] = *idx;
    }
    std::vector<typename Poly<K>::Term> ts;
    for (const auto& [m, c] : p.terms()) {
        Monomial nm(target->nvars());
        for (std::uint32_t i = 0; i < p.ring()->nvars(); ++i) {
            if (m[i] == 0) continue;
            if (var_map[i] == absent)
                throw InternalError("transport: variable '" + p.ring()->var_name(i) +
                                    "' absent from the target ring");
            nm.at(var_map[i]) = m[i];
        }
        ts.emplace_back(std::move(nm), c);
    }
    return Poly<K>::from_terms(target, std::move(ts));
}

/// Determinant of a square polynomial matrix (Laplace with memoisation).
template <CoefficientField K>
Poly<K> poly_det(const Ring& ring, const std::vector<std::vector<Poly<K>>>& a) {
    const std::size_t s = a.size();
    if (s == 0) return Poly<K>::constant(ring, K::one());
    std::map<std::uint64_t, Poly<K>> memo;
    std::function<Poly<K>(std::uint64_t, std::size_t)> det = [&](std::uint64_t mask,
                                                                 std::size_t t) -> Poly<K> {
        if (t == 0) return Poly<K>::constant(ring, K::one());
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        Poly<K> acc(ring);
        std::size_t pos = 0;
        for (std::size_t j = 0; j < s; ++j) {
            if (!(mask & (1ull << j))) continue;
            const Poly<K>& e = a[t - 1][j];
            if (!e.is_zero()) {
                Poly<K> term = e * det(mask & ~(1ull << j), t - 1);
                acc = ((t - 1 + pos) % 2 == 0) ? acc + term : acc - term;
            }
            ++pos;
        }
        memo.emplace(mask, acc);
        return acc;
    };
    return det((1ull << s) - 1, s);
}

/// {p over target : p o phi lies in (src_gens)}: the graph ideal plus the
/// extended source ideal, with the genuine source variables eliminated.
/// Source and target may share coordinates (unfolding parameters); shared
/// ones survive the elimination.
template <CoefficientField K>
std::vector<Poly<K>> map_preimage(const RingMap<K>& phi, const std::vector<Poly<K>>& src_gens,
                                  const EngineContext& ctx = {}) {
    // graph ring: all source variables, then target variables not shared
    std::vector<std::string> names = phi.source->vars();
    for (const auto& t : phi.target->vars())
        if (!phi.source->index_of(t)) names.push_back(t);
    Ring graph = RingSpec::make(names);
    std::vector<std::uint32_t> src_map(phi.source->nvars());
    std::iota(src_map.begin(), src_map.end(), 0u);

    std::vector<Poly<K>> gens;
    for (std::uint32_t j = 0; j < phi.target->nvars(); ++j) {
        auto idx = graph->index_of(phi.target->var_name(j));
        Poly<K> gamma = Poly<K>::variable(graph, *idx) - phi.images[j].mapped(graph, src_map);
        if (!gamma.is_zero()) gens.push_back(std::move(gamma));
    }
    for (const auto& s : src_gens) gens.push_back(s.mapped(graph, src_map));

    std::vector<std::uint32_t> drop;
    for (std::uint32_t i = 0; i < phi.source->nvars(); ++i)
        if (!phi.target->index_of(phi.source->var_name(i))) drop.push_back(i);

    auto elim = eliminate(graph, gens, drop, ctx);
    std::vector<Poly<K>> out;
    for (const auto& p : elim) out.push_back(transport(p, phi.target).normalized_unit());
    return out;
}

/// Reduced equation of the image of a finite map with one-dimensional
/// cokernel of dimensions: the single generator of ker(phi*).
template <CoefficientField K>
Poly<K> image_hypersurface_equation(const RingMap<K>& phi, const EngineContext& ctx = {}) {
    auto ker = map_preimage(phi, {}, ctx);
    if (ker.size() != 1)
        throw ValidationError("image is not a hypersurface (elimination ideal is not principal: " +
                              std::to_string(ker.size()) + " minimal generators)");
    return ker[0].normalized_unit();
}

// ---------------------------------------------------------------------------
// Image data: equation, conductor two ways, Fitting ideals

template <CoefficientField K>
struct ImageData {
    Poly<K> ghat;                    // reduced image equation of fhat, over target
    Ring yring;                      // y-coordinates only
    Poly<K> g;                       // ghat restricted to z = 0, over yring
    Poly<K> lambda;                  // conductor generator, over source
    std::vector<Poly<K>> fitting0;   // over target
    std::vector<Poly<K>> fitting1;   // over target
    PushforwardPresentation<K> presentation;
    bool ghat_squarefree = false;
    bool composes_to_zero = false;   // ghat o fhat = 0
    bool piene_all_indices = false;  // defining identity verified for every l
    bool f0_matches_ghat = false;    // (ghat) = F0 as germs
    bool conductor_identity = false; // (lambda) = pullback F1 as germs
};

template <CoefficientField K>
ImageData<K> compute_image(const GermSpec<K>& spec, const EngineContext& ctx = {},
                           bool check_squarefree = true) {
    ImageData<K> img;
    RingMap<K> fh = spec.fhat();
    img.ghat = image_hypersurface_equation(fh, ctx);
    img.composes_to_zero = fh.pullback(img.ghat).is_zero();
    if (!img.composes_to_zero)
        throw InternalError("image equation does not vanish on the image");
    img.ghat_squarefree = !check_squarefree || squarefree_check(img.ghat, ctx);
    if (!img.ghat_squarefree)
        throw ValidationError("image equation is not reduced");

    auto restr = drop_vars(spec.target, spec.target_z_vars());
    img.yring = restr.ring;
    img.g = transport(img.ghat.at_zero(spec.target_z_vars()), img.yring);
    if (img.g.is_zero())
        throw ValidationError("image equation vanishes identically on z = 0");

    img.presentation = pushforward_presentation(fh, ctx);
    img.fitting0 = fitting_ideal(img.presentation, 0);
    img.fitting1 = fitting_ideal(img.presentation, 1);
    img.f0_matches_ghat =
        ideal_equal(Ideal<K>::local(spec.target, img.fitting0),
                    Ideal<K>::local(spec.target, {img.ghat}), ctx);
    if (!img.f0_matches_ghat)
        throw ValidationError("zeroth Fitting ideal differs from the image equation "
                              "(the map is not generically one-to-one onto its image)");

    // Piene: d_l ghat o fhat = (-1)^l lambda det(d fhat with row l removed)
    const std::uint32_t p = spec.n + 1 + spec.k;
    const std::uint32_t ns = spec.n + spec.k;
    std::vector<std::vector<Poly<K>>> jac(p);
    for (std::uint32_t l = 0; l < p; ++l)
        for (std::uint32_t v = 0; v < ns; ++v) jac[l].push_back(fh.images[l].derivative(v));
    std::vector<Poly<K>> minors(p, Poly<K>::zero(spec.source));
    for (std::uint32_t l = 0; l < p; ++l) {
        std::vector<std::vector<Poly<K>>> sub;
        for (std::uint32_t r = 0; r < p; ++r)
            if (r != l) sub.push_back(jac[r]);
        minors[l] = poly_det(spec.source, sub);
    }
    std::vector<Poly<K>> pulled(p, Poly<K>::zero(spec.source));
    for (std::uint32_t l = 0; l < p; ++l) pulled[l] = fh.pullback(img.ghat.derivative(l));

    std::optional<std::uint32_t> first;
    for (std::uint32_t l = 0; l < p; ++l)
        if (!minors[l].is_zero()) {
            first = l;
            break;
        }
    if (!first)
        throw ValidationError("all maximal minors of the Jacobian vanish "
                              "(the map is nowhere immersive)");
    // paper indices are 1-based: sign at 0-based l is (-1)^(l+1)
    auto signed_minor = [&](std::uint32_t l) {
        return (l % 2 == 0) ? -minors[l] : minors[l];
    };
    auto lam = exact_divide(pulled[*first], signed_minor(*first));
    if (!lam)
        throw InternalError("conductor division is not exact at the first nonzero minor");
    img.lambda = *lam;
    img.piene_all_indices = true;
    for (std::uint32_t l = 0; l < p; ++l)
        img.piene_all_indices =
            img.piene_all_indices && (pulled[l] - img.lambda * signed_minor(l)).is_zero();
    if (!img.piene_all_indices)
        throw InternalError("conductor identity fails at some index");

    std::vector<Poly<K>> f1_pulled;
    for (const auto& q : img.fitting1) f1_pulled.push_back(fh.pullback(q));
    img.conductor_identity =
        ideal_equal(Ideal<K>::local(spec.source, {img.lambda}),
                    Ideal<K>::local(spec.source, f1_pulled), ctx);
    return img;
}

// ---------------------------------------------------------------------------
// The Jacobian module M(g)

template <CoefficientField K>
struct JacobianModuleData {
    std::vector<Poly<K>> preimage; // generators of (fhat*)^{-1}(J(ghat) O_src)
    SubmodulePresentation<K> N;    // preimage / J_y(ghat)
    QuotientDim dimM;
    bool contains_Jy = false;
    bool inside_F1 = false;
};

template <CoefficientField K>
JacobianModuleData<K> compute_jacobian_module(const GermSpec<K>& spec, const ImageData<K>& img,
                                              const EngineContext& ctx = {}) {
    JacobianModuleData<K> out;
    RingMap<K> fh = spec.fhat();
    std::vector<Poly<K>> src_gens;
    for (std::uint32_t l = 0; l < spec.target->nvars(); ++l) {
        auto d = img.ghat.derivative(l);
        if (!d.is_zero()) src_gens.push_back(fh.pullback(d));
    }
    out.preimage = map_preimage(fh, src_gens, ctx);

    auto ord = MonomialOrdering::negdegrevlex(spec.target->nvars());
    std::vector<Poly<K>> jy;
    for (auto yv : spec.target_y_vars()) {
        auto d = img.ghat.derivative(yv);
        if (!d.is_zero()) jy.push_back(d);
    }
    auto P = standard_basis(Ideal<K>::make(spec.target, ord, out.preimage), ctx);
    out.contains_Jy = true;
    for (const auto& d : jy) out.contains_Jy = out.contains_Jy && ideal_contains(P, d, ctx);
    if (!out.contains_Jy)
        throw IdentityError("J_y(ghat) is not contained in the preimage module "
                            "(global/local elimination discrepancy)");
    auto F1 = standard_basis(Ideal<K>::make(spec.target, ord, img.fitting1), ctx);
    out.inside_F1 = true;
    for (const auto& q : out.preimage)
        out.inside_F1 = out.inside_F1 && ideal_contains(F1, q, ctx);
    if (!out.inside_F1)
        throw IdentityError("preimage module is not contained in the first Fitting ideal "
                            "(global/local elimination discrepancy)");

    // M(g) = preimage / (J_y + m_k preimage)
    std::vector<Poly<K>> inner = jy;
    for (auto zv : spec.target_z_vars())
        for (const auto& q : out.preimage) inner.push_back(Poly<K>::variable(spec.target, zv) * q);
    out.dimM = subquotient_dim<K>(spec.target, 1, as_rank1(out.preimage), as_rank1(inner), ord,
                                  ctx, false);
    out.N = present_subquotient<K>(spec.target, 1, as_rank1(out.preimage), as_rank1(jy), ord, ctx);
    if (!out.dimM.finite)
        throw ValidationError("dim M(g) is infinite: the germ is not A-finite");
    return out;
}

/// dim K(g) = dim O/(J(g) : g).
template <CoefficientField K>
QuotientDim compute_dim_K(const Poly<K>& g, const EngineContext& ctx = {}) {
    if (g.is_zero() || !g.vanishes_at_origin())
        throw ValidationError("dim K: g must be nonzero and vanish at the origin");
    auto colon = colon_by_element(g.ring(), jacobian(g), g, ctx);
    return vdim_quotient(Ideal<K>::local(g.ring(), colon), ctx);
}

// ---------------------------------------------------------------------------
// Pushing vector-field modules to the target coordinates

/// Presentation over fresh target coordinates of a quotient of O_src^p by a
/// finitely generated piece, with the source ring a module over the target
/// via the given map components. Components are indexed j*m + b where j is
/// the vector slot and b the monomial generator.
template <CoefficientField K>
struct PushedModule {
    Ring tgt;                         // @v1..@vp
    std::vector<Monomial> gb;         // monomial generators of the fibre algebra
    std::uint32_t p = 0;              // vector rank upstairs
    std::uint32_t m = 0;              // gb.size()
    std::vector<ModVec<K>> relations; // over tgt, rank m*p
};

template <CoefficientField K>
PushedModule<K> push_module(const Ring& src, const std::vector<Poly<K>>& map_polys,
                            const std::vector<Poly<K>>& scalar_extra,
                            const std::vector<ModVec<K>>& vector_gens,
                            const EngineContext& ctx = {}) {
    PushedModule<K> out;
    out.p = static_cast<std::uint32_t>(map_polys.size());
    const std::size_t ns = src->nvars();

    std::vector<Poly<K>> fibre = map_polys;
    fibre.insert(fibre.end(), scalar_extra.begin(), scalar_extra.end());
    auto fib = standard_basis(Ideal<K>::local(src, fibre), ctx);
    std::vector<Monomial> leads;
    for (const auto& q : fib.basis) leads.push_back(lead_monomial(q, fib.ord));
    if (!staircase_count(leads, ns).finite)
        throw ValidationError("push_module: the map is not finite");
    out.gb = staircase_monomials(leads, ns);
    out.m = static_cast<std::uint32_t>(out.gb.size());

    std::vector<std::string> vnames;
    for (std::uint32_t i = 1; i <= out.p; ++i) vnames.push_back("@v" + std::to_string(i));
    auto ext = extend_ring(src, vnames, "pushed-target");
    Ring W = ext.ring;
    out.tgt = RingSpec::make(vnames);

    std::vector<Poly<K>> lam;
    for (std::uint32_t i = 0; i < out.p; ++i)
        lam.push_back(Poly<K>::variable(W, ext.new_vars[i]) -
                      map_polys[i].mapped(W, ext.old_to_new));
    for (const auto& s : scalar_extra) lam.push_back(s.mapped(W, ext.old_to_new));

    std::vector<ModVec<K>> items;
    // generators g_b e_j, enumerated j-major
    for (std::uint32_t j = 0; j < out.p; ++j)
        for (std::uint32_t b = 0; b < out.m; ++b) {
            ModVec<K> v(out.p, Poly<K>::zero(W));
            Monomial padded(W->nvars());
            for (std::size_t t = 0; t < ns; ++t) padded.at(t) = out.gb[b][t];
            v[j] = Poly<K>::monomial(W, std::move(padded), K::one());
            items.push_back(std::move(v));
        }
    const std::size_t mg = items.size();
    for (const auto& vg : vector_gens) {
        ModVec<K> v;
        for (const auto& comp : vg) v.push_back(comp.mapped(W, ext.old_to_new));
        items.push_back(std::move(v));
    }
    for (const auto& l : lam)
        for (std::uint32_t j = 0; j < out.p; ++j) {
            ModVec<K> v(out.p, Poly<K>::zero(W));
            v[j] = l;
            items.push_back(std::move(v));
        }

    std::vector<std::uint32_t> src_idx(ns);
    std::iota(src_idx.begin(), src_idx.end(), 0u);
    MonomialOrdering elim = elimination_order(W, src_idx);
    auto syz = syzygies<K>(W, out.p, items, elim, ctx);
    std::vector<ModVec<K>> proj;
    for (auto& s : syz) {
        ModVec<K> c(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(mg));
        if (!std::all_of(c.begin(), c.end(), [](const Poly<K>& q) { return q.is_zero(); }))
            proj.push_back(std::move(c));
    }
    auto basis = module_standard_basis<K>(W, static_cast<std::uint32_t>(mg), proj, elim, false,
                                          ctx);
    for (const auto& col : basis) {
        bool free = true;
        for (const auto& q : col)
            for (const auto& [mm, cc] : q.terms())
                for (std::size_t v = 0; v < ns && free; ++v) free = mm[v] == 0;
        if (!free) continue;
        ModVec<K> tcol;
        for (const auto& q : col) tcol.push_back(transport(q, out.tgt));
        out.relations.push_back(std::move(tcol));
    }
    return out;
}

/// Vector fields on X = V(h): coefficient vectors a with da(h_i) in (h).
template <CoefficientField K>
std::vector<ModVec<K>> source_vector_fields(const Ring& src, const std::vector<Poly<K>>& h,
                                            const EngineContext& ctx = {}) {
    const std::uint32_t ns = static_cast<std::uint32_t>(src->nvars());
    const std::uint32_t k = static_cast<std::uint32_t>(h.size());
    std::vector<ModVec<K>> out;
    if (k == 0) {
        for (std::uint32_t j = 0; j < ns; ++j) {
            ModVec<K> e(ns, Poly<K>::zero(src));
            e[j] = Poly<K>::constant(src, K::one());
            out.push_back(std::move(e));
        }
        return out;
    }
    std::vector<ModVec<K>> items;
    for (std::uint32_t j = 0; j < ns; ++j) {
        ModVec<K> col;
        for (std::uint32_t i = 0; i < k; ++i) col.push_back(h[i].derivative(j));
        items.push_back(std::move(col));
    }
    for (std::uint32_t l = 0; l < k; ++l)
        for (std::uint32_t i = 0; i < k; ++i) {
            ModVec<K> col(k, Poly<K>::zero(src));
            col[i] = h[l];
            items.push_back(std::move(col));
        }
    auto syz = syzygies<K>(src, k, items, MonomialOrdering::negdegrevlex(src->nvars()), ctx);
    for (auto& s : syz) {
        ModVec<K> a(s.begin(), s.begin() + ns);
        if (!std::all_of(a.begin(), a.end(), [](const Poly<K>& q) { return q.is_zero(); }))
            out.push_back(std::move(a));
    }
    return out;
}

struct CodimData {
    std::uint64_t normal_space = 0;
    std::uint64_t tau = 0;
    std::uint64_t total = 0;
};

/// A_e-codimension from the definition: length of
/// theta(f) / (tf theta_X + wf theta_{n+1}) plus tau(X).
template <CoefficientField K>
CodimData compute_codim_ae(const GermSpec<K>& spec, const GermValidation& val,
                           const EngineContext& ctx = {}) {
    CodimData out;
    out.tau = spec.k > 0 ? val.tjurina_source : 0;

    auto theta_x = source_vector_fields(spec.source, spec.h, ctx);
    std::vector<ModVec<K>> tf;
    for (const auto& xi : theta_x) {
        ModVec<K> v;
        for (std::uint32_t i = 0; i < spec.n + 1; ++i) {
            Poly<K> acc = Poly<K>::zero(spec.source);
            for (std::uint32_t j = 0; j < spec.source->nvars(); ++j)
                acc = acc + xi[j] * spec.f[i].derivative(j);
            v.push_back(std::move(acc));
        }
        tf.push_back(std::move(v));
    }
    auto pm = push_module<K>(spec.source, spec.f, spec.h, tf, ctx);
    auto rel = pm.relations;
    for (std::uint32_t j = 0; j < pm.p; ++j) {
        ModVec<K> e(static_cast<std::size_t>(pm.m) * pm.p, Poly<K>::zero(pm.tgt));
        e[static_cast<std::size_t>(j) * pm.m] = Poly<K>::constant(pm.tgt, K::one());
        rel.push_back(std::move(e));
    }
    auto dim = module_colength<K>(pm.tgt, pm.m * pm.p, rel, ctx);
    if (!dim.finite)
        throw ValidationError("the A_e-normal space has infinite dimension: "
                              "the germ is not A-finite");
    out.normal_space = dim.value;
    out.total = out.normal_space + out.tau;
    return out;
}

/// Mather-style stable unfolding directions for fhat: lifts of a basis of the
/// normal module modulo the target maximal ideal.
template <CoefficientField K>
std::vector<std::vector<Poly<K>>> stable_unfolding_directions(const GermSpec<K>& spec,
                                                              const EngineContext& ctx = {}) {
    auto fh = spec.fhat();
    const std::uint32_t p = static_cast<std::uint32_t>(fh.images.size());
    std::vector<ModVec<K>> tf;
    for (std::uint32_t j = 0; j < spec.source->nvars(); ++j) {
        ModVec<K> col;
        for (std::uint32_t i = 0; i < p; ++i) col.push_back(fh.images[i].derivative(j));
        tf.push_back(std::move(col));
    }
    auto pm = push_module<K>(spec.source, fh.images, {}, tf, ctx);
    auto rel = pm.relations;
    const std::uint32_t rank = pm.m * pm.p;
    for (std::uint32_t j = 0; j < pm.p; ++j) {
        ModVec<K> e(rank, Poly<K>::zero(pm.tgt));
        e[static_cast<std::size_t>(j) * pm.m] = Poly<K>::constant(pm.tgt, K::one());
        rel.push_back(std::move(e));
    }
    for (std::uint32_t i = 0; i < pm.tgt->nvars(); ++i)
        for (std::uint32_t c = 0; c < rank; ++c) {
            ModVec<K> e(rank, Poly<K>::zero(pm.tgt));
            e[c] = Poly<K>::variable(pm.tgt, i);
            rel.push_back(std::move(e));
        }
    ModuleOrder mo{MonomialOrdering::negdegrevlex(pm.tgt->nvars()), false, {}};
    Engine<K> eng(mo, pm.tgt->nvars(), ctx);
    auto basis = eng.standard_basis(detail::to_vpolys(rel, mo));
    std::vector<bool> dead(rank, false);
    for (const auto& b : basis)
        if (b.lead().m.is_one()) dead[b.lead().comp] = true;
    std::vector<std::vector<Poly<K>>> directions;
    for (std::uint32_t c = 0; c < rank; ++c) {
        if (dead[c]) continue;
        std::uint32_t j = c / pm.m, b = c % pm.m;
        std::vector<Poly<K>> dir(p, Poly<K>::zero(spec.source));
        dir[j] = Poly<K>::monomial(spec.source, pm.gb[b], K::one());
        directions.push_back(std::move(dir));
    }
    return directions;
}

// ---------------------------------------------------------------------------
// Unfoldings: image, relative module, specialisation, Samuel multiplicity

template <CoefficientField K>
struct UnfoldingData {
    Poly<K> G;                     // reduced image equation over utarget
    std::vector<Poly<K>> preimage; // (F*)^{-1}(J_{y,z}(G) O_src)
    SubmodulePresentation<K> Mrel;
    QuotientDim specialized;       // dim M_rel / m_{k+r} M_rel
    std::optional<std::uint64_t> samuel;
    std::vector<std::uint64_t> hilbert; // H(0..t)
    bool g_restriction = false;
    bool contains_Jy = false;
    bool pullback_lemma = false;
    bool good_equation_direct = false; // G in J(G) without the unit transform
    std::optional<bool> stable_jacobian; // P_F = J(G)+(G); only for stable F
};

template <CoefficientField K>
UnfoldingData<K> compute_unfolding(const UnfoldingSpec<K>& u, const ImageData<K>& img,
                                   std::uint32_t hs_budget, const EngineContext& ctx = {},
                                   bool check_squarefree = true) {
    UnfoldingData<K> out;
    const GermSpec<K>& spec = u.base;
    auto bm = u.big_map();
    out.G = image_hypersurface_equation(bm, ctx);
    if (check_squarefree && !squarefree_check(out.G, ctx))
        throw ValidationError("unfolded image equation is not reduced");

    // restriction at u = 0 recovers ghat as a germ
    auto G0 = transport(out.G.at_zero(u.utarget_u_vars()), spec.target);
    out.g_restriction = ideal_equal(Ideal<K>::local(spec.target, {G0}),
                                    Ideal<K>::local(spec.target, {img.ghat}), ctx);
    if (!out.g_restriction)
        throw IdentityError("unfolded image equation does not restrict to the base equation");

    // J_{y,z}(G) pulled back, then the preimage
    std::vector<Poly<K>> jyz, jy;
    for (auto yv : spec.target_y_vars()) {
        auto d = out.G.derivative(yv);
        if (!d.is_zero()) jy.push_back(d);
        if (!d.is_zero()) jyz.push_back(d);
    }
    for (auto zv : spec.target_z_vars()) {
        auto d = out.G.derivative(zv);
        if (!d.is_zero()) jyz.push_back(d);
    }
    std::vector<Poly<K>> src_gens;
    for (const auto& d : jyz) src_gens.push_back(bm.pullback(d));
    out.preimage = map_preimage(bm, src_gens, ctx);

    auto ord = MonomialOrdering::negdegrevlex(u.utarget->nvars());
    auto P = standard_basis(Ideal<K>::make(u.utarget, ord, out.preimage), ctx);
    out.contains_Jy = true;
    for (const auto& d : jy) out.contains_Jy = out.contains_Jy && ideal_contains(P, d, ctx);
    if (!out.contains_Jy)
        throw IdentityError("J_y(G) is not contained in the relative preimage module");

    // J_{y,z}(G) O_src = J(G) O_src: the u-derivatives pull into the rest
    auto srcI = standard_basis(
        Ideal<K>::make(u.usource, MonomialOrdering::negdegrevlex(u.usource->nvars()), src_gens),
        ctx);
    out.pullback_lemma = true;
    for (auto uv : u.utarget_u_vars()) {
        auto d = out.G.derivative(uv);
        if (d.is_zero()) continue;
        out.pullback_lemma = out.pullback_lemma && ideal_contains(srcI, bm.pullback(d), ctx);
    }

    out.Mrel = present_subquotient<K>(u.utarget, 1, as_rank1(out.preimage), as_rank1(jy), ord,
                                      ctx);

    // specialisation: dim M_rel / m_{k+r} M_rel
    auto params = u.utarget_parameter_vars();
    std::vector<Poly<K>> inner = jy;
    for (auto pv : params)
        for (const auto& q : out.preimage)
            inner.push_back(Poly<K>::variable(u.utarget, pv) * q);
    out.specialized = subquotient_dim<K>(u.utarget, 1, as_rank1(out.preimage), as_rank1(inner),
                                         ord, ctx, false);

    // Samuel multiplicity of M_rel over the parameter coordinates
    const std::uint32_t d = static_cast<std::uint32_t>(params.size());
    out.hilbert.push_back(0);
    if (d == 0) {
        out.samuel = out.specialized.finite ? std::optional<std::uint64_t>(out.specialized.value)
                                            : std::nullopt;
    } else {
        // monomials of exact degree t in the parameters
        auto degree_monomials = [&](std::uint32_t t) {
            std::vector<Poly<K>> out_m;
            std::vector<Exp> cur(params.size(), 0);
            std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i,
                                                                      std::uint32_t left) {
                if (i + 1 == params.size()) {
                    cur[i] = left;
                    Monomial mm(u.utarget->nvars());
                    for (std::size_t a = 0; a < params.size(); ++a) mm.at(params[a]) = cur[a];
                    out_m.push_back(Poly<K>::monomial(u.utarget, std::move(mm), K::one()));
                    return;
                }
                for (cur[i] = 0; cur[i] <= left; ++cur[i]) rec(i + 1, left - cur[i]);
                cur[i] = 0;
            };
            rec(0, t);
            return out_m;
        };
        for (std::uint32_t t = 1; t <= hs_budget && !out.samuel; ++t) {
            if (t == 1 && out.specialized.finite) {
                out.hilbert.push_back(out.specialized.value);
            } else {
                std::vector<Poly<K>> inner_t = jy;
                for (const auto& mu : degree_monomials(t))
                    for (const auto& q : out.preimage) inner_t.push_back(mu * q);
                auto ht = subquotient_dim<K>(u.utarget, 1, as_rank1(out.preimage),
                                             as_rank1(inner_t), ord, ctx, false);
                if (!ht.finite)
                    throw ValidationError("Hilbert-Samuel value is infinite: "
                                          "relative module not finite over the parameters");
                out.hilbert.push_back(ht.value);
            }
            // d-th finite differences, require 3 consecutive equal values
            if (out.hilbert.size() >= static_cast<std::size_t>(d) + 3) {
                auto diff = [&](std::uint32_t order, std::size_t at) {
                    // order-th difference of hilbert at index `at`
                    std::int64_t acc = 0;
                    std::int64_t sign = 1;
                    std::uint64_t binom = 1;
                    for (std::uint32_t i = 0; i <= order; ++i) {
                        acc += sign * static_cast<std::int64_t>(binom) *
                               static_cast<std::int64_t>(out.hilbert[at - i]);
                        sign = -sign;
                        binom = binom * (order - i) / (i + 1);
                    }
                    return acc;
                };
                std::size_t last = out.hilbert.size() - 1;
                std::int64_t d0 = diff(d, last), d1 = diff(d, last - 1), d2 = diff(d, last - 2);
                if (d0 == d1 && d1 == d2 && d0 >= 0)
                    out.samuel = static_cast<std::uint64_t>(d0);
            }
        }
        if (!out.samuel) {
            std::ostringstream os;
            os << "Hilbert-Samuel function did not stabilise within t <= " << hs_budget << " (";
            for (std::size_t i = 1; i < out.hilbert.size(); ++i)
                os << (i > 1 ? ", " : "") << out.hilbert[i];
            os << ")";
            throw ResourceError(os.str());
        }
    }

    out.good_equation_direct = in_jacobian_ideal(out.G, ctx);
    if (u.stable_by_construction) {
        // with a good defining equation (adjoin the formal unit when needed),
        // the relative module of a stable unfolding is J(G')/J_y(G') with
        // J(G') = J(G) + (G): so the preimage must equal J(G) + (G)
        std::vector<Poly<K>> jg = jacobian(out.G);
        jg.push_back(out.G);
        out.stable_jacobian = ideal_equal(Ideal<K>::make(u.utarget, ord, out.preimage),
                                          Ideal<K>::make(u.utarget, ord, jg), ctx);
    }
    return out;
}

} // namespace germinv
