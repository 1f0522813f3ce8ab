#pragma once

// Problem statements: a finite map germ on an isolated complete intersection
// singularity, and unfoldings of its smooth-source companion map.

#include <germinv/invariants.hpp>
#include <germinv/pushforward.hpp>

namespace germinv {

/// The input datum: X = V(h) in C^{n+k} of dimension n, and a map
/// f : (X,0) -> (C^{n+1},0) given by polynomial representatives.
template <CoefficientField K>
struct GermSpec {
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    Ring source;               // n+k variables, the user's names
    std::vector<Poly<K>> h;    // k equations of X
    std::vector<Poly<K>> f;    // n+1 map components
    Ring target;               // y1..y{n+1}, z1..zk
    std::uint32_t ny() const { return n + 1; }
    std::uint32_t nz() const { return k; }

    std::vector<std::uint32_t> target_y_vars() const {
        std::vector<std::uint32_t> v(ny());
        std::iota(v.begin(), v.end(), 0u);
        return v;
    }
    std::vector<std::uint32_t> target_z_vars() const {
        std::vector<std::uint32_t> v(nz());
        std::iota(v.begin(), v.end(), ny());
        return v;
    }

    /// The companion map with smooth source: components f then h.
    RingMap<K> fhat() const {
        std::vector<Poly<K>> images = f;
        images.insert(images.end(), h.begin(), h.end());
        return RingMap<K>{source, target, std::move(images)};
    }
};

template <CoefficientField K>
GermSpec<K> make_germ(std::uint32_t n, std::uint32_t k, const std::vector<std::string>& vars,
                      const std::vector<std::string>& h_texts,
                      const std::vector<std::string>& f_texts) {
    if (n < 1) throw ValidationError("n must be at least 1");
    if (vars.size() != n + k)
        throw ValidationError("expected " + std::to_string(n + k) + " source variables, got " +
                              std::to_string(vars.size()));
    if (h_texts.size() != k)
        throw ValidationError("expected k = " + std::to_string(k) + " equations in h");
    if (f_texts.size() != n + 1)
        throw ValidationError("expected n+1 = " + std::to_string(n + 1) + " map components in f");

    GermSpec<K> spec;
    spec.n = n;
    spec.k = k;
    std::vector<std::uint32_t> all(n + k);
    std::iota(all.begin(), all.end(), 0u);
    spec.source = RingSpec::make(vars, {{"x", all}});

    std::vector<std::string> tnames;
    std::vector<std::uint32_t> yv, zv;
    for (std::uint32_t j = 1; j <= n + 1; ++j) {
        tnames.push_back("y" + std::to_string(j));
        yv.push_back(static_cast<std::uint32_t>(tnames.size() - 1));
    }
    for (std::uint32_t i = 1; i <= k; ++i) {
        tnames.push_back("z" + std::to_string(i));
        zv.push_back(static_cast<std::uint32_t>(tnames.size() - 1));
    }
    for (const auto& t : tnames)
        if (std::find(vars.begin(), vars.end(), t) != vars.end())
            throw ValidationError("source variable '" + t +
                                  "' collides with a generated target coordinate");
    std::vector<RingSpec::Block> tblocks;
    tblocks.push_back({"y", yv});
    if (!zv.empty()) tblocks.push_back({"z", zv});
    spec.target = RingSpec::make(tnames, tblocks);

    for (const auto& s : h_texts) {
        auto p = parse_poly<K>(s, spec.source);
        if (!p.vanishes_at_origin())
            throw ValidationError("equation '" + s + "' does not vanish at the origin");
        spec.h.push_back(std::move(p));
    }
    for (const auto& s : f_texts) {
        auto p = parse_poly<K>(s, spec.source);
        if (!p.vanishes_at_origin())
            throw ValidationError("component '" + s + "' does not vanish at the origin");
        spec.f.push_back(std::move(p));
    }
    return spec;
}

/// Outcome of the expensive semantic checks on a GermSpec.
struct GermValidation {
    std::uint64_t tjurina_source = 0; // tau of (X,0)
    std::uint64_t multiplicity = 0;   // dim source/(fhat components)
};

template <CoefficientField K>
GermValidation validate_germ(const GermSpec<K>& spec, const EngineContext& ctx = {}) {
    GermValidation v;
    if (spec.k > 0) {
        auto tau = tjurina_icis(spec.h, ctx);
        if (!tau.finite)
            throw ValidationError(
                "V(h) is not an isolated complete intersection singularity "
                "(its Tjurina module has infinite dimension)");
        v.tjurina_source = tau.value;
    }
    auto mult = map_multiplicity(spec.fhat(), ctx);
    if (!mult.finite)
        throw ValidationError("the companion map (f,h) is not finite "
                              "(f is not finite on X)");
    v.multiplicity = mult.value;
    return v;
}

/// Unfolding of the companion map: F restricts to (f,h) at u = 0 and the
/// parameters ride along as target coordinates.
template <CoefficientField K>
struct UnfoldingSpec {
    GermSpec<K> base;
    std::uint32_t r = 0;
    std::vector<std::string> u_names;
    Ring usource;              // source variables ++ u
    Ring utarget;              // y, z ++ u
    std::vector<Poly<K>> F;    // n+1+k components over usource
    bool stable_by_construction = false;

    std::vector<std::uint32_t> usource_u_vars() const {
        std::vector<std::uint32_t> v(r);
        std::iota(v.begin(), v.end(), base.source->nvars());
        return v;
    }
    std::vector<std::uint32_t> utarget_u_vars() const {
        std::vector<std::uint32_t> v(r);
        std::iota(v.begin(), v.end(), base.target->nvars());
        return v;
    }
    /// m_{k+r}: the z and u coordinates in the unfolded target.
    std::vector<std::uint32_t> utarget_parameter_vars() const {
        std::vector<std::uint32_t> v;
        for (auto z : base.target_z_vars()) v.push_back(z);
        for (auto u : utarget_u_vars()) v.push_back(u);
        return v;
    }

    /// The big map (x,u) -> (F(x,u), u).
    RingMap<K> big_map() const {
        std::vector<Poly<K>> images = F;
        for (auto uv : usource_u_vars()) images.push_back(Poly<K>::variable(usource, uv));
        return RingMap<K>{usource, utarget, std::move(images)};
    }
};

template <CoefficientField K>
UnfoldingSpec<K> make_trivial_unfolding(const GermSpec<K>& base) {
    UnfoldingSpec<K> u;
    u.base = base;
    u.r = 0;
    u.usource = base.source;
    u.utarget = base.target;
    u.F = base.fhat().images;
    return u;
}

/// F(x,u) = fhat(x) + sum_a u_a * direction_a, each direction a vector of
/// n+1+k source polynomials.
template <CoefficientField K>
UnfoldingSpec<K> make_unfolding(const GermSpec<K>& base,
                                const std::vector<std::vector<Poly<K>>>& directions,
                                std::vector<std::string> u_names = {}) {
    UnfoldingSpec<K> u;
    u.base = base;
    u.r = static_cast<std::uint32_t>(directions.size());
    if (u_names.empty())
        for (std::uint32_t a = 1; a <= u.r; ++a) u_names.push_back("u" + std::to_string(a));
    if (u_names.size() != u.r) throw ValidationError("unfolding parameter count mismatch");
    u.u_names = u_names;
    if (u.r == 0) return make_trivial_unfolding(base);

    auto sx = extend_ring(base.source, u_names, "u");
    u.usource = sx.ring;
    auto tx = extend_ring(base.target, u_names, "u");
    u.utarget = tx.ring;

    auto fh = base.fhat().images;
    for (std::size_t c = 0; c < fh.size(); ++c) {
        Poly<K> comp = fh[c].mapped(u.usource, sx.old_to_new);
        for (std::uint32_t a = 0; a < u.r; ++a) {
            if (directions[a].size() != fh.size())
                throw ValidationError("direction has wrong component count");
            comp = comp + Poly<K>::variable(u.usource, sx.new_vars[a]) *
                              directions[a][c].mapped(u.usource, sx.old_to_new);
        }
        u.F.push_back(std::move(comp));
    }
    return u;
}

/// User-provided components; must restrict to fhat at u = 0.
template <CoefficientField K>
UnfoldingSpec<K> make_unfolding_from_components(const GermSpec<K>& base,
                                                const std::vector<std::string>& u_names,
                                                const std::vector<std::string>& F_texts) {
    UnfoldingSpec<K> u;
    u.base = base;
    u.r = static_cast<std::uint32_t>(u_names.size());
    u.u_names = u_names;
    if (u.r == 0) throw ValidationError("an explicit unfolding needs at least one parameter");
    if (F_texts.size() != base.n + 1 + base.k)
        throw ValidationError("expected n+1+k unfolding components");
    auto sx = extend_ring(base.source, u_names, "u");
    u.usource = sx.ring;
    auto tx = extend_ring(base.target, u_names, "u");
    u.utarget = tx.ring;
    auto fh = base.fhat().images;
    for (std::size_t c = 0; c < F_texts.size(); ++c) {
        auto p = parse_poly<K>(F_texts[c], u.usource);
        auto at0 = p.at_zero(u.usource_u_vars());
        if (at0 != fh[c].mapped(u.usource, sx.old_to_new))
            throw ValidationError("unfolding component " + std::to_string(c + 1) +
                                  " does not restrict to the base map at u = 0");
        u.F.push_back(std::move(p));
    }
    return u;
}

} // namespace germinv
