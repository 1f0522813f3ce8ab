#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <germinv/pushforward.hpp>

#include "support.hpp"

using namespace germinv;
using testsupport::q;
using testsupport::Rng;

namespace {

ModVec<Rational> vec(const Ring& r, std::initializer_list<const char*> comps) {
    ModVec<Rational> v;
    for (const char* s : comps) v.push_back(q(s, r));
    return v;
}

ModVec<Rational> contract(const Ring& r, const std::vector<ModVec<Rational>>& gens,
                          const ModVec<Rational>& coeffs, std::uint32_t rank) {
    ModVec<Rational> acc(rank, PolyQ::zero(r));
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::uint32_t c = 0; c < rank; ++c) acc[c] = acc[c] + coeffs[i] * gens[i][c];
    return acc;
}

bool all_zero(const ModVec<Rational>& v) {
    return std::all_of(v.begin(), v.end(), [](const PolyQ& p) { return p.is_zero(); });
}

} // namespace

TEST_CASE("module standard bases") {
    auto r = testsupport::ring_xy();
    auto ord = MonomialOrdering::degrevlex(2);

    auto b1 = module_standard_basis<Rational>(r, 2, {vec(r, {"x", "0"}), vec(r, {"0", "y"})}, ord);
    CHECK(b1.size() == 2);

    auto b2 = module_standard_basis<Rational>(r, 2, {vec(r, {"x", "y"}), vec(r, {"x", "y"})}, ord);
    CHECK(b2.size() == 1);

    auto b3 = module_standard_basis<Rational>(r, 2, {vec(r, {"y", "-x"})}, ord);
    CHECK(b3.size() == 1);

    // position-over-term variant runs too
    auto b4 = module_standard_basis<Rational>(r, 2, {vec(r, {"x", "y"}), vec(r, {"0", "x-y"})},
                                              ord, true);
    CHECK(!b4.empty());
}

TEST_CASE("syzygies of simple tuples") {
    auto r = testsupport::ring_xy();
    auto ord = MonomialOrdering::degrevlex(2);

    auto s1 = syzygies<Rational>(r, 1, {vec(r, {"x"}), vec(r, {"y"})}, ord);
    REQUIRE(s1.size() == 1);
    CHECK(s1[0][0].normalized_unit() == q("y", r));
    CHECK(s1[0][1].normalized_unit() == q("x", r));
    CHECK(all_zero(contract(r, {vec(r, {"x"}), vec(r, {"y"})}, s1[0], 1)));

    auto s2 = syzygies<Rational>(r, 1, {vec(r, {"x"})}, ord);
    CHECK(s2.empty());

    auto s3 = syzygies<Rational>(r, 1, {vec(r, {"x"}), vec(r, {"x"})}, ord);
    REQUIRE(s3.size() == 1);
    CHECK(all_zero(contract(r, {vec(r, {"x"}), vec(r, {"x"})}, s3[0], 1)));
    CHECK(s3[0][0].normalized_unit() == q("1", r));
}

TEST_CASE("every syzygy annihilates its generators (randomised)") {
    auto r = testsupport::ring_xy();
    auto ord = MonomialOrdering::negdegrevlex(2);
    Rng rng(2024);
    int checked = 0;
    for (int round = 0; round < 200; ++round) {
        std::uint32_t rank = static_cast<std::uint32_t>(rng.uniform(1, 2));
        std::vector<ModVec<Rational>> gens;
        int n = rng.uniform(2, 3);
        for (int i = 0; i < n; ++i) {
            ModVec<Rational> v;
            for (std::uint32_t c = 0; c < rank; ++c) v.push_back(rng.poly(r, 3, 2));
            gens.push_back(std::move(v));
        }
        auto syz = syzygies<Rational>(r, rank, gens, ord);
        for (const auto& s : syz) {
            CHECK(all_zero(contract(r, gens, s, rank)));
            ++checked;
        }
    }
    CHECK(checked > 100); // the rounds generate a real workload
}

TEST_CASE("subquotient dimensions") {
    auto r1 = RingSpec::make({"x"});
    auto ord1 = MonomialOrdering::negdegrevlex(1);
    auto rxy = testsupport::ring_xy();
    auto ord2 = MonomialOrdering::negdegrevlex(2);

    CHECK(subquotient_dim<Rational>(rxy, 1, as_rank1<Rational>({q("x", rxy), q("y", rxy)}),
                                    as_rank1<Rational>({q("x", rxy), q("y", rxy)}), ord2) ==
          QuotientDim::of(0));

    CHECK(subquotient_dim<Rational>(r1, 1,
                                    as_rank1<Rational>({parse_poly<Rational>("x", r1)}),
                                    as_rank1<Rational>({parse_poly<Rational>("x^3", r1)}),
                                    ord1) == QuotientDim::of(2));

    // cotangent space m/m^2
    CHECK(subquotient_dim<Rational>(
              rxy, 1, as_rank1<Rational>({q("x", rxy), q("y", rxy)}),
              as_rank1<Rational>({q("x^2", rxy), q("x*y", rxy), q("y^2", rxy)}), ord2) ==
          QuotientDim::of(2));

    CHECK_THROWS_AS(subquotient_dim<Rational>(
                        rxy, 1, as_rank1<Rational>({q("x^2", rxy)}),
                        as_rank1<Rational>({q("y", rxy)}), ord2),
                    IdentityError);
}

TEST_CASE("length is additive along nested monomial ideals") {
    auto r = testsupport::ring_xy();
    auto ord = MonomialOrdering::negdegrevlex(2);
    Rng rng(31415);
    for (int round = 0; round < 40; ++round) {
        std::vector<PolyQ> inner3 = {
            PolyQ::monomial(r, Monomial{std::vector<Exp>{static_cast<Exp>(rng.uniform(1, 4)), 0}},
                            Rational(1)),
            PolyQ::monomial(r, Monomial{std::vector<Exp>{0, static_cast<Exp>(rng.uniform(1, 4))}},
                            Rational(1)),
            PolyQ::monomial(r, rng.monomial(2, 3), Rational(1))};
        std::vector<PolyQ> mid = inner3;
        mid.push_back(PolyQ::monomial(r, rng.monomial(2, 3), Rational(1)));
        std::vector<PolyQ> outer = mid;
        outer.push_back(PolyQ::monomial(r, rng.monomial(2, 2), Rational(1)));

        auto d21 = subquotient_dim<Rational>(r, 1, as_rank1(outer), as_rank1(mid), ord);
        auto d32 = subquotient_dim<Rational>(r, 1, as_rank1(mid), as_rank1(inner3), ord);
        auto d31 = subquotient_dim<Rational>(r, 1, as_rank1(outer), as_rank1(inner3), ord);
        REQUIRE(d21.finite);
        REQUIRE(d32.finite);
        REQUIRE(d31.finite);
        CHECK(d31.value == d21.value + d32.value);
    }
}

TEST_CASE("pushforward of the cusp parametrisation") {
    auto src = RingSpec::make({"x"});
    auto tgt = RingSpec::make({"y1", "y2"});
    RingMap<Rational> phi{src, tgt,
                          {parse_poly<Rational>("x^2", src), parse_poly<Rational>("x^3", src)}};
    CHECK(map_multiplicity(phi) == QuotientDim::of(2));

    auto P = pushforward_presentation(phi);
    REQUIRE(P.generators.size() == 2);
    CHECK(P.generators[0].is_one());
    CHECK(P.generators[1] == Monomial{std::vector<Exp>{1}});

    auto F0 = fitting_ideal(P, 0);
    auto I0 = standard_basis(Ideal<Rational>::global(tgt, F0));
    auto cusp = parse_poly<Rational>("y1^3-y2^2", tgt).normalized_unit();
    REQUIRE(I0.basis.size() == 1);
    CHECK(I0.basis[0].normalized_unit() == cusp);

    auto F1 = fitting_ideal(P, 1);
    auto I1 = standard_basis(Ideal<Rational>::global(tgt, F1));
    auto My = standard_basis(Ideal<Rational>::global(
        tgt, {parse_poly<Rational>("y1", tgt), parse_poly<Rational>("y2", tgt)}));
    CHECK(ideal_equal(I1, My));

    // pullback of F1 is the conductor (x^2)
    std::vector<PolyQ> pulled;
    for (const auto& g : F1) pulled.push_back(phi.pullback(g));
    auto C = standard_basis(Ideal<Rational>::local(src, pulled));
    auto X2 = standard_basis(Ideal<Rational>::local(src, {parse_poly<Rational>("x^2", src)}));
    CHECK(ideal_equal(C, X2));

    // Fitting convention: i = m gives the unit ideal
    auto F2 = fitting_ideal(P, 2);
    REQUIRE(F2.size() == 1);
    CHECK(F2[0].is_unit_constant());

    // chain F0 within F1 within F2
    for (const auto& g : F0) CHECK(ideal_contains(I1, g));
}

TEST_CASE("pushforward degenerate and fixture cases") {
    auto src = RingSpec::make({"x"});
    auto tgt = RingSpec::make({"y"});

    // identity: one generator, free module, no relations
    RingMap<Rational> ident{src, tgt, {parse_poly<Rational>("x", src)}};
    auto P = pushforward_presentation(ident);
    CHECK(P.generators.size() == 1);
    CHECK(P.cols() == 0);
    auto F1 = fitting_ideal(P, 1);
    REQUIRE(F1.size() == 1);
    CHECK(F1[0].is_unit_constant());
    CHECK(fitting_ideal(P, 0).empty()); // free rank one: F0 = (0)

    // double cover x -> x^2: free of rank 2, finiteness fixture
    RingMap<Rational> dbl{src, tgt, {parse_poly<Rational>("x^2", src)}};
    CHECK(map_multiplicity(dbl) == QuotientDim::of(2));
    auto P2 = pushforward_presentation(dbl);
    CHECK(P2.generators.size() == 2);
    CHECK(P2.cols() == 0);

    // non-finite map is rejected
    auto src2 = testsupport::ring_xy();
    RingMap<Rational> bad{src2, tgt, {q("x", src2)}};
    CHECK(!map_multiplicity(bad).finite);
    CHECK_THROWS_AS(pushforward_presentation(bad), ValidationError);
}

TEST_CASE("fitting ideals are stable under generator shuffles") {
    auto src = RingSpec::make({"x"});
    auto tgt = RingSpec::make({"y1", "y2"});
    RingMap<Rational> phi{src, tgt,
                          {parse_poly<Rational>("x^2", src), parse_poly<Rational>("x^3", src)}};
    auto P = pushforward_presentation(phi);
    // permute rows (generator order) and columns
    PushforwardPresentation<Rational> Q = P;
    std::swap(Q.generators[0], Q.generators[1]);
    for (auto& col : Q.columns) std::swap(col[0], col[1]);
    std::reverse(Q.columns.begin(), Q.columns.end());
    for (std::uint32_t i = 0; i <= 2; ++i) {
        auto A = standard_basis(Ideal<Rational>::global(tgt, fitting_ideal(P, i)));
        auto B = standard_basis(Ideal<Rational>::global(tgt, fitting_ideal(Q, i)));
        CHECK(ideal_equal(A, B));
    }
}

TEST_CASE("presentation relations annihilate generators through the map") {
    // relations columns of the cusp: contracting against {1, x} after pullback
    // gives zero in the source ring
    auto src = RingSpec::make({"x"});
    auto tgt = RingSpec::make({"y1", "y2"});
    RingMap<Rational> phi{src, tgt,
                          {parse_poly<Rational>("x^2", src), parse_poly<Rational>("x^3", src)}};
    auto P = pushforward_presentation(phi);
    for (const auto& col : P.columns) {
        PolyQ acc = PolyQ::zero(src);
        for (std::size_t b = 0; b < P.generators.size(); ++b) {
            PolyQ gen = PolyQ::monomial(src, P.generators[b], Rational(1));
            acc = acc + phi.pullback(col[b]) * gen;
        }
        CHECK(acc.is_zero());
    }
}
