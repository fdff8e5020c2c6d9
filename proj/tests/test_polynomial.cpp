#include <doctest.h>

#include <random>

#include "crem/error.hpp"
#include "crem/homopoly.hpp"
#include "props.hpp"

using namespace crem;

namespace {

const FieldPtr Q = FieldSpec::rationals();

HomoPoly P(const std::string& s, FieldPtr f = Q) { return parse_homopoly(s, f); }

// Independent expansion: multiply term lists naively into a fresh map.
HomoPoly naive_mul(const HomoPoly& a, const HomoPoly& b) {
    std::map<Mono, FieldElement> acc;
    for (auto& [ma, ca] : a.terms())
        for (auto& [mb, cb] : b.terms()) {
            Mono m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]};
            auto it = acc.find(m);
            if (it == acc.end()) acc.emplace(m, ca * cb);
            else it->second += ca * cb;
        }
    HomoPoly r(a.field(), 3);
    for (auto& [m, c] : acc)
        if (!c.is_zero()) r = r + HomoPoly::monomial(a.field(), 3, m, c);
    return r;
}

} // namespace

TEST_CASE("basic products and sums") {
    CHECK(P("x") * P("x") == P("x^2"));
    CHECK(P("x*z^2 + y^3") + P("-y^3") == P("x*z^2"));
    HomoPoly prod = P("x*z + y^2") * P("z^2 - x*y");
    CHECK(prod == P("x*z^3 - x^2*y*z + y^2*z^2 - x*y^3"));
    CHECK(prod == naive_mul(P("x*z + y^2"), P("z^2 - x*y")));
}

TEST_CASE("terms are sorted in descending graded-lex order") {
    HomoPoly p = P("z^3 + x^3 + y^3 + x*y*z");
    REQUIRE(p.size() == 4);
    for (size_t i = 0; i + 1 < p.size(); ++i) CHECK(glex_greater(p.terms()[i].first, p.terms()[i + 1].first));
    CHECK(p.leading().first == Mono{3, 0, 0});
}

TEST_CASE("non-homogeneous input is rejected") {
    CHECK_THROWS_AS(P("x^2 + y"), Error);
    CHECK_THROWS_AS(P("x^2 +* y^2"), Error);
}

TEST_CASE("substitution") {
    HomoPoly g0 = P("x*z^2 + y^3"), g1 = P("y*z^2"), g2 = P("z^3");
    CHECK(poly_substitute(P("x"), g0, g1, g2) == g0);
    CHECK(poly_substitute(P("z^3"), g0, g1, g2) == P("z^9"));
    CHECK(poly_substitute(P("x*z^2 + y^3"), g0, g1, g2) == P("z^6") * P("x*z^2 + 2*y^3"));
}

TEST_CASE("substitution is a ring homomorphism") {
    std::mt19937_64 r(5);
    auto rnd = [&](int deg) {
        HomoPoly p(Q, 3);
        for (int t = 0; t < 3; ++t) {
            int a = static_cast<int>(r() % (deg + 1)), b = static_cast<int>(r() % (deg - a + 1));
            p = p + HomoPoly::monomial(Q, 3, Mono{a, b, deg - a - b}, FieldElement(Q, static_cast<long>(r() % 7) - 3));
        }
        return p;
    };
    for (int i = 0; i < 40; ++i) {
        HomoPoly a = rnd(2), b = rnd(2), c = rnd(1);
        HomoPoly g0 = rnd(2), g1 = rnd(2), g2 = rnd(2);
        auto S = [&](const HomoPoly& p) { return poly_substitute(p, g0, g1, g2); };
        CHECK(S(a * c) == S(a) * S(c));
        CHECK(S(a + b) == S(a) + S(b));
    }
}

TEST_CASE("gcd examples") {
    HomoPoly A = P("x*z^2 + 2*y^3");
    CHECK(poly_gcd(P("z^6") * A, P("z^9")) == P("z^6"));
    CHECK(poly_gcd_subresultant(P("z^6") * A, P("z^9")) == P("z^6"));
    HomoPoly p = P("3*x*z + 6*y^2");
    CHECK(poly_gcd(p, p) == p.normalized());
    CHECK(poly_gcd(P("x*z + y^2"), P("z^2 - x*y")).degree() == 0);
    CHECK(poly_gcd_modular({P("x*z + y^2"), P("z^2 - x*y")}).degree() == 0);
}

TEST_CASE("gcd over Q(sqrt(-3))") {
    FieldPtr K = FieldSpec::make(UniPoly::from_ints({3, 0, 1}), std::nullopt, "s");
    HomoPoly c = P("x + s*y", K);
    HomoPoly p = c * P("x^2 + z^2", K), q = c * P("y - s*z", K);
    HomoPoly g = poly_gcd(p, q);
    CHECK(g == c.normalized());
}

TEST_CASE("exact division") {
    CHECK(poly_divexact(P("x^2 - y^2"), P("x - y")) == P("x + y"));
    CHECK_THROWS_AS(poly_divexact(P("x^2 + y^2"), P("x - y")), Error);
    CHECK(poly_divides(P("z"), P("x*z^2")));
    CHECK_FALSE(poly_divides(P("y"), P("x*z^2")));
}

TEST_CASE("univariate helpers") {
    UniPoly s = UniPoly::from_ints({1, -3, 1});
    CHECK(s * UniPoly::from_ints({-1, 1}) == UniPoly::from_ints({-1, 4, -4, 1}));
    CHECK(divexact(UniPoly::from_ints({-1, 0, 1}), UniPoly::from_ints({-1, 1})) == UniPoly::from_ints({1, 1}));
    CHECK_THROWS_AS(divexact(UniPoly::from_ints({1, 0, 1}), UniPoly::from_ints({-1, 1})), Error);
    Rational lo(26180339887, 10000000000), hi(26180339888, 10000000000);
    lo.canonicalize();
    hi.canonicalize();
    CHECK(s.eval(Interval(lo, hi)).contains_zero());
}

TEST_CASE("parse round trip") {
    CHECK(P("010*x") == P("10*x"));
    for (const char* s : {"x*z^2 + y^3", "-1/2*x^2 + 3*y*z", "z^5"}) CHECK(P(P(s).to_string()) == P(s));
}

TEST_CASE("gcd divisibility oracle on 500 random pairs, both routes") {
    props::Outcome o = props::gcd_divisibility(500);
    CHECK(o.cases == 500);
    for (auto& f : o.first_failures) MESSAGE(f);
    CHECK(o.failures == 0);
}
