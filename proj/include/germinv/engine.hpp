#pragma once

// Standard bases in free modules over polynomial rings, for global orderings
// (Buchberger) and local/mixed orderings (Mora normal form with ecart-minimal
// reduction). Ideals are the rank-1 case. Also: staircase counting for
// vector-space dimensions of quotients.

#include <germinv/context.hpp>
#include <germinv/polynomial.hpp>

#include <map>
#include <set>
#include <tuple>

namespace germinv {

// ---------------------------------------------------------------------------
// Flat module terms and elements

template <CoefficientField K>
struct MTerm {
    Monomial m;
    std::uint32_t comp = 0;
    K c;
};

/// Ordering on module terms: optional per-component levels dominate (smaller
/// level wins), then position-over-term or term-over-position with the ring
/// ordering; component index breaks monomial ties (smaller component wins).
struct ModuleOrder {
    MonomialOrdering mono;
    bool pot = false;
    std::vector<int> level; // per component; empty means all equal

    template <CoefficientField K>
    int cmp(const MTerm<K>& a, const MTerm<K>& b) const {
        if (!level.empty() && level[a.comp] != level[b.comp])
            return level[a.comp] < level[b.comp] ? 1 : -1;
        if (pot) {
            if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
            return mono.cmp(a.m, b.m);
        }
        int c = mono.cmp(a.m, b.m);
        if (c != 0) return c;
        if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
        return 0;
    }
};

/// Element of a free module, terms sorted descending under a ModuleOrder.
template <CoefficientField K>
struct VPoly {
    std::vector<MTerm<K>> t;

    bool is_zero() const { return t.empty(); }
    const MTerm<K>& lead() const { return t.front(); }

    std::uint64_t max_degree() const {
        std::uint64_t d = 0;
        for (const auto& x : t) d = std::max(d, x.m.degree());
        return d;
    }
    /// deg(element) - deg(lead term); the Mora selection weight.
    std::uint64_t ecart() const { return max_degree() - lead().m.degree(); }
};

template <CoefficientField K>
VPoly<K> vp_normalize(std::vector<MTerm<K>> ts, const ModuleOrder& mo) {
    std::sort(ts.begin(), ts.end(),
              [&](const MTerm<K>& a, const MTerm<K>& b) { return mo.cmp(a, b) > 0; });
    VPoly<K> r;
    for (auto& x : ts) {
        if (x.c.is_zero()) continue;
        if (!r.t.empty() && r.t.back().m == x.m && r.t.back().comp == x.comp) {
            r.t.back().c = r.t.back().c + x.c;
            if (r.t.back().c.is_zero()) r.t.pop_back();
        } else {
            r.t.push_back(std::move(x));
        }
    }
    return r;
}

template <CoefficientField K>
VPoly<K> vp_times(const VPoly<K>& f, const Monomial& m, const K& c) {
    VPoly<K> r;
    r.t.reserve(f.t.size());
    for (const auto& x : f.t) r.t.push_back(MTerm<K>{x.m * m, x.comp, x.c * c});
    return r;
}

/// f - (c, m) * g with sorted-merge; orders of both inputs must agree.
template <CoefficientField K>
VPoly<K> vp_axpy_sub(const VPoly<K>& f, const K& c, const Monomial& m, const VPoly<K>& g,
                     const ModuleOrder& mo) {
    VPoly<K> r;
    r.t.reserve(f.t.size() + g.t.size());
    std::size_t i = 0, j = 0;
    while (i < f.t.size() || j < g.t.size()) {
        MTerm<K> gj;
        if (j < g.t.size()) gj = MTerm<K>{g.t[j].m * m, g.t[j].comp, g.t[j].c * c};
        int cm;
        if (i >= f.t.size()) cm = -1;
        else if (j >= g.t.size()) cm = 1;
        else cm = mo.cmp(f.t[i], gj);
        if (cm > 0) {
            r.t.push_back(f.t[i++]);
        } else if (cm < 0) {
            gj.c = -gj.c;
            r.t.push_back(std::move(gj));
            ++j;
        } else {
            K v = f.t[i].c - gj.c;
            if (!v.is_zero()) r.t.push_back(MTerm<K>{f.t[i].m, f.t[i].comp, std::move(v)});
            ++i;
            ++j;
        }
    }
    return r;
}

/// Scale to a canonical unit multiple (primitive integer content with positive
/// lead over Q, monic over a prime field).
template <CoefficientField K>
void vp_make_canonical(VPoly<K>& f) {
    if (f.is_zero()) return;
    if constexpr (std::is_same_v<K, Rational>) {
        mpz_class num_gcd = 0, den_lcm = 1;
        for (const auto& x : f.t) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.c.num().get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.c.den().get_mpz_t());
        }
        Rational scale{mpq_class(den_lcm, num_gcd)};
        if (f.t[0].c.sign() < 0) scale = -scale;
        for (auto& x : f.t) x.c = x.c * scale;
    } else {
        K inv = f.t[0].c.inverse();
        for (auto& x : f.t) x.c = x.c * inv;
    }
}

// ---------------------------------------------------------------------------
// Conversions Poly <-> VPoly

template <CoefficientField K>
VPoly<K> to_vpoly(const Poly<K>& p, std::uint32_t comp, const ModuleOrder& mo) {
    std::vector<MTerm<K>> ts;
    ts.reserve(p.terms().size());
    for (const auto& [m, c] : p.terms()) ts.push_back(MTerm<K>{m, comp, c});
    return vp_normalize(std::move(ts), mo);
}

template <CoefficientField K>
VPoly<K> to_vpoly(const std::vector<Poly<K>>& components, const ModuleOrder& mo) {
    std::vector<MTerm<K>> ts;
    for (std::uint32_t c = 0; c < components.size(); ++c)
        for (const auto& [m, k] : components[c].terms()) ts.push_back(MTerm<K>{m, c, k});
    return vp_normalize(std::move(ts), mo);
}

template <CoefficientField K>
std::vector<Poly<K>> from_vpoly(const VPoly<K>& v, const Ring& ring, std::uint32_t rank) {
    std::vector<std::vector<typename Poly<K>::Term>> acc(rank);
    for (const auto& x : v.t) acc[x.comp].emplace_back(x.m, x.c);
    std::vector<Poly<K>> out;
    out.reserve(rank);
    for (auto& ts : acc) out.push_back(Poly<K>::from_terms(ring, std::move(ts)));
    return out;
}

// ---------------------------------------------------------------------------
// The engine

template <CoefficientField K>
class Engine {
public:
    Engine(ModuleOrder mo, std::size_t nvars, EngineContext ctx = {})
        : mo_(std::move(mo)), ctx_(ctx), global_(mo_.mono.is_global(nvars)) {}

    const ModuleOrder& order() const { return mo_; }
    bool global() const { return global_; }

    /// Weak normal form: the lead of the result is reducible by no basis lead.
    /// Global orders give the strong form (result - f lies in the module);
    /// otherwise a unit multiple of f is reduced (Mora), which preserves the
    /// membership test exactly. `tail` additionally reduces lower terms
    /// (global orders only).
    VPoly<K> normal_form(const VPoly<K>& f, const std::vector<VPoly<K>>& basis,
                         bool tail = false, bool rescale = false) const {
        if (global_) return nf_global(f, basis, tail, rescale);
        return nf_mora(f, basis, rescale);
    }

    bool reduces_to_zero(const VPoly<K>& f, const std::vector<VPoly<K>>& basis) const {
        return normal_form(f, basis, false, true).is_zero();
    }

    /// Buchberger / Mora completion. The result generates the same module and
    /// every S-vector reduces to zero.
    std::vector<VPoly<K>> standard_basis(const std::vector<VPoly<K>>& gens) const {
        std::vector<VPoly<K>> g;
        for (const auto& v : gens) {
            if (v.is_zero()) continue;
            VPoly<K> w = v;
            vp_make_canonical(w);
            g.push_back(std::move(w));
        }
        // pair queue keyed by (lcm degree, i, j): normal selection strategy
        std::set<std::tuple<std::uint64_t, std::uint32_t, std::uint32_t>> pairs;
        std::set<std::pair<std::uint32_t, std::uint32_t>> done;
        auto push_pairs = [&](std::uint32_t j) {
            for (std::uint32_t i = 0; i < j; ++i) {
                if (g[i].lead().comp != g[j].lead().comp) continue;
                Monomial l = Monomial::lcm(g[i].lead().m, g[j].lead().m);
                pairs.insert({l.degree(), i, j});
            }
        };
        for (std::uint32_t j = 0; j < g.size(); ++j) push_pairs(j);

        bool rank1 = true;
        for (const auto& v : g)
            for (const auto& x : v.t) rank1 = rank1 && x.comp == 0;

        while (!pairs.empty()) {
            ctx_.check_deadline();
            auto [deg, i, j] = *pairs.begin();
            pairs.erase(pairs.begin());
            done.insert({i, j});
            const Monomial lcm = Monomial::lcm(g[i].lead().m, g[j].lead().m);
            if (rank1 && global_ && g[i].lead().m.coprime(g[j].lead().m)) continue; // product
            if (chain_criterion(g, done, i, j, lcm)) continue;
            VPoly<K> s = spair(g[i], g[j], lcm);
            VPoly<K> h = normal_form(s, g, false, true);
            if (h.is_zero()) continue;
            vp_make_canonical(h);
            if (h.max_degree() > ctx_.max_degree)
                throw ResourceError("degree bound exceeded in basis computation");
            g.push_back(std::move(h));
            if (g.size() > ctx_.max_basis)
                throw ResourceError("basis size bound exceeded");
            push_pairs(static_cast<std::uint32_t>(g.size()) - 1);
        }

        g = global_ ? interreduce(g) : minimalize(g);
        if (ctx_.paranoid) verify(g);
        return g;
    }

    /// Test-mode re-verification: every S-vector of the completed basis
    /// reduces to zero.
    void verify(const std::vector<VPoly<K>>& basis) const {
        for (std::uint32_t i = 0; i < basis.size(); ++i)
            for (std::uint32_t j = i + 1; j < basis.size(); ++j) {
                if (basis[i].lead().comp != basis[j].lead().comp) continue;
                Monomial lcm = Monomial::lcm(basis[i].lead().m, basis[j].lead().m);
                if (!reduces_to_zero(spair(basis[i], basis[j], lcm), basis))
                    throw InternalError("completed basis fails the S-pair criterion");
            }
    }

private:
    ModuleOrder mo_;
    EngineContext ctx_;
    bool global_;

    VPoly<K> spair(const VPoly<K>& f, const VPoly<K>& g, const Monomial& lcm) const {
        // (lcm/lm f) f - (lc f / lc g)(lcm/lm g) g ; leads cancel
        VPoly<K> a = vp_times(f, lcm / f.lead().m, K::one());
        return vp_axpy(a, f.lead().c / g.lead().c, lcm / g.lead().m, g);
    }

    VPoly<K> vp_axpy(const VPoly<K>& f, const K& c, const Monomial& m, const VPoly<K>& g) const {
        return vp_axpy_sub(f, c, m, g, mo_);
    }

    bool chain_criterion(const std::vector<VPoly<K>>& g,
                         const std::set<std::pair<std::uint32_t, std::uint32_t>>& done,
                         std::uint32_t i, std::uint32_t j, const Monomial& lcm) const {
        auto seen = [&](std::uint32_t a, std::uint32_t b) {
            if (a > b) std::swap(a, b);
            return done.count({a, b}) > 0;
        };
        for (std::uint32_t k = 0; k < g.size(); ++k) {
            if (k == i || k == j) continue;
            if (g[k].lead().comp != g[i].lead().comp) continue;
            if (!g[k].lead().m.divides(lcm)) continue;
            if (seen(i, k) && seen(j, k)) return true;
        }
        return false;
    }

    VPoly<K> nf_global(const VPoly<K>& f, const std::vector<VPoly<K>>& basis, bool tail,
                       bool rescale) const {
        VPoly<K> h = f;
        std::vector<MTerm<K>> out;
        std::size_t steps = 0;
        while (!h.is_zero()) {
            if (++steps % 64 == 0) {
                ctx_.check_deadline();
                if (rescale) vp_make_canonical(h);
            }
            const auto& lt = h.lead();
            bool reduced = false;
            for (const auto& b : basis) {
                const auto& blt = b.lead();
                if (blt.comp == lt.comp && blt.m.divides(lt.m)) {
                    h = vp_axpy(h, lt.c / blt.c, lt.m / blt.m, b);
                    reduced = true;
                    break;
                }
            }
            if (!reduced) {
                if (!tail) break;
                out.push_back(h.t.front());
                h.t.erase(h.t.begin());
            }
        }
        if (!tail) return h;
        for (auto& x : h.t) out.push_back(std::move(x)); // h empty unless tail-break
        VPoly<K> r;
        r.t = std::move(out);
        return r;
    }

    VPoly<K> nf_mora(const VPoly<K>& f, const std::vector<VPoly<K>>& basis, bool rescale) const {
        VPoly<K> h = f;
        std::vector<VPoly<K>> extra; // intermediate reducers, per Mora
        std::size_t steps = 0;
        while (!h.is_zero()) {
            if (++steps % 32 == 0) ctx_.check_deadline();
            if (rescale && steps % 16 == 0) vp_make_canonical(h);
            const auto& lt = h.lead();
            const VPoly<K>* best = nullptr;
            std::uint64_t best_ecart = 0;
            auto consider = [&](const VPoly<K>& cand) {
                const auto& c = cand.lead();
                if (c.comp != lt.comp || !c.m.divides(lt.m)) return;
                std::uint64_t e = cand.ecart();
                if (!best || e < best_ecart) {
                    best = &cand;
                    best_ecart = e;
                }
            };
            for (const auto& b : basis) consider(b);
            for (const auto& b : extra) consider(b);
            if (!best) break;
            // `best` may point into `extra`: finish using it before growing
            K c = lt.c / best->lead().c;
            Monomial m = lt.m / best->lead().m;
            bool save = best_ecart > h.ecart();
            VPoly<K> next = vp_axpy(h, c, m, *best);
            if (save) extra.push_back(std::move(h));
            h = std::move(next);
            if (h.max_degree() > ctx_.max_degree)
                throw ResourceError("degree bound exceeded in local reduction");
        }
        return h;
    }

    /// Drop elements whose lead is divisible by another lead; global orders
    /// additionally tail-reduce, giving the reduced (canonical) basis.
    std::vector<VPoly<K>> minimalize(std::vector<VPoly<K>> g) const {
        std::vector<VPoly<K>> out;
        for (std::size_t i = 0; i < g.size(); ++i) {
            bool redundant = false;
            for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
                if (i == j) continue;
                const auto &a = g[i].lead(), &b = g[j].lead();
                bool divides = b.comp == a.comp && b.m.divides(a.m);
                // of two equal leads keep the earlier
                if (divides && a.m == b.m && a.comp == b.comp) divides = j < i;
                redundant = divides;
            }
            if (!redundant) out.push_back(g[i]);
        }
        std::sort(out.begin(), out.end(), [&](const VPoly<K>& a, const VPoly<K>& b) {
            return mo_.cmp(a.lead(), b.lead()) > 0;
        });
        return out;
    }

    std::vector<VPoly<K>> interreduce(std::vector<VPoly<K>> g) const {
        g = minimalize(std::move(g));
        std::vector<VPoly<K>> out;
        for (std::size_t i = 0; i < g.size(); ++i) {
            std::vector<VPoly<K>> rest;
            for (std::size_t j = 0; j < g.size(); ++j)
                if (j != i) rest.push_back(g[j]);
            VPoly<K> r = nf_global(g[i], rest, true, true);
            if (r.is_zero()) throw InternalError("minimal basis element reduced to zero");
            vp_make_canonical(r);
            out.push_back(std::move(r));
        }
        std::sort(out.begin(), out.end(), [&](const VPoly<K>& a, const VPoly<K>& b) {
            return mo_.cmp(a.lead(), b.lead()) > 0;
        });
        return out;
    }
};

// ---------------------------------------------------------------------------
// Staircase counting

struct QuotientDim {
    bool finite = false;
    std::uint64_t value = 0;

    static QuotientDim infinite() { return {false, 0}; }
    static QuotientDim of(std::uint64_t v) { return {true, v}; }
    bool operator==(const QuotientDim&) const = default;
};

namespace detail {

inline void minimalize_monomials(std::vector<std::vector<Exp>>& gens) {
    std::vector<std::vector<Exp>> out;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < gens.size() && !redundant; ++j) {
            if (i == j) continue;
            bool div = true;
            for (std::size_t v = 0; v < gens[i].size(); ++v) div = div && gens[j][v] <= gens[i][v];
            if (div && gens[i] == gens[j]) div = j < i;
            redundant = div;
        }
        if (!redundant) out.push_back(gens[i]);
    }
    gens = std::move(out);
}

// Standard-monomial count of a monomial ideal: split on a used variable,
// count(I) = count(I + (x)) + count(I : x).
inline std::optional<std::uint64_t> staircase_size(std::vector<std::vector<Exp>> gens,
                                                   std::vector<std::uint32_t> vars) {
    minimalize_monomials(gens);
    for (const auto& g : gens) {
        bool one = true;
        for (std::size_t v = 0; v < g.size(); ++v) one = one && g[v] == 0;
        if (one) return 0;
    }
    if (gens.empty()) {
        if (vars.empty()) return 1;
        return std::nullopt; // free in some variable
    }
    std::optional<std::uint32_t> split;
    for (auto v : vars) {
        for (const auto& g : gens)
            if (g[v] > 0) {
                split = v;
                break;
            }
        if (split) break;
    }
    if (!split) return std::nullopt; // generators constant only on dead vars
    // I + (x_split): generators not using split, variable removed
    std::vector<std::vector<Exp>> plus;
    for (const auto& g : gens)
        if (g[*split] == 0) plus.push_back(g);
    std::vector<std::uint32_t> vars_minus;
    for (auto v : vars)
        if (v != *split) vars_minus.push_back(v);
    auto a = staircase_size(plus, vars_minus);
    if (!a) return std::nullopt;
    // I : x_split
    std::vector<std::vector<Exp>> colon = gens;
    for (auto& g : colon)
        if (g[*split] > 0) --g[*split];
    auto b = staircase_size(std::move(colon), std::move(vars));
    if (!b) return std::nullopt;
    return *a + *b;
}

} // namespace detail

/// Count monomials outside the monomial ideal generated by `leads`.
inline QuotientDim staircase_count(const std::vector<Monomial>& leads, std::size_t nvars) {
    std::vector<std::vector<Exp>> gens;
    gens.reserve(leads.size());
    for (const auto& m : leads) gens.push_back(m.exps());
    std::vector<std::uint32_t> vars(nvars);
    std::iota(vars.begin(), vars.end(), 0u);
    auto r = detail::staircase_size(std::move(gens), std::move(vars));
    return r ? QuotientDim::of(*r) : QuotientDim::infinite();
}

/// Dimension of R^rank / <basis leads>, summing per-component staircases.
template <CoefficientField K>
QuotientDim module_quotient_dim(const std::vector<VPoly<K>>& basis, std::uint32_t rank,
                                std::size_t nvars) {
    std::vector<std::vector<Monomial>> leads(rank);
    for (const auto& b : basis) leads[b.lead().comp].push_back(b.lead().m);
    std::uint64_t total = 0;
    for (std::uint32_t c = 0; c < rank; ++c) {
        QuotientDim d = staircase_count(leads[c], nvars);
        if (!d.finite) return QuotientDim::infinite();
        total += d.value;
    }
    return QuotientDim::of(total);
}

/// Enumerate the standard monomials of a monomial ideal known to be finite,
/// in ascending total degree (ties by storage order ascending).
inline std::vector<Monomial> staircase_monomials(const std::vector<Monomial>& leads,
                                                 std::size_t nvars) {
    std::vector<Exp> bound(nvars, 0);
    for (std::size_t v = 0; v < nvars; ++v) {
        bool found = false;
        for (const auto& g : leads) {
            bool pure = g[v] > 0;
            for (std::size_t w = 0; w < nvars && pure; ++w) pure = w == v || g[w] == 0;
            if (pure) {
                bound[v] = found ? std::min(bound[v], g[v]) : g[v];
                found = true;
            }
        }
        if (!found) throw InternalError("staircase_monomials on an infinite staircase");
    }
    std::vector<Monomial> out;
    std::vector<Exp> cur(nvars, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
        if (v == nvars) {
            Monomial m{std::vector<Exp>(cur)};
            for (const auto& g : leads)
                if (g.divides(m)) return;
            out.push_back(std::move(m));
            return;
        }
        for (cur[v] = 0; cur[v] < bound[v]; ++cur[v]) rec(v + 1);
        cur[v] = 0;
    };
    rec(0);
    std::sort(out.begin(), out.end(),
              [](const Monomial& a, const Monomial& b) { return storage_cmp(a, b) < 0; });
    return out;
}

} // namespace germinv
