#include <doctest.h>

#include <random>

#include "crem/cremona.hpp"
#include "crem/error.hpp"

using namespace crem;

namespace {

const FieldPtr Q = FieldSpec::rationals();

RationalMapP2 M(const char* a, const char* b, const char* c, FieldPtr f = Q) { return RationalMapP2::parse({a, b, c}, f); }
HomoPoly P(const std::string& s) { return parse_homopoly(s, Q); }

Mat3 random_invertible(std::mt19937_64& r) {
    for (;;) {
        std::array<std::array<long, 3>, 3> a;
        for (auto& row : a)
            for (auto& v : row) v = static_cast<long>(r() % 7) - 3;
        Mat3 m = mat_from_ints(Q, a);
        if (!mat_det(m).is_zero()) return m;
    }
}

} // namespace

TEST_CASE("iterates of Phi_n follow the closed form") {
    for (int n = 3; n <= 5; ++n) {
        RationalMapP2 phi = builtin_phi(n), it = phi;
        for (int k = 2; k <= 4; ++k) {
            it = map_compose(phi, it);
            HomoPoly first = HomoPoly::monomial(Q, 3, Mono{1, 0, n - 1}, FieldElement(Q, 1)) +
                             HomoPoly::monomial(Q, 3, Mono{0, n, 0}, FieldElement(Q, k));
            RationalMapP2 expect = RationalMapP2::make(first, builtin_phi(n)[1], builtin_phi(n)[2]);
            CHECK(it == expect);
            CHECK(it.degree() == n);
        }
    }
    CHECK(map_compose(builtin_phi(3), builtin_phi(3)) == M("x*z^2 + 2*y^3", "y*z^2", "z^3"));
}

TEST_CASE("identity is neutral for composition") {
    RationalMapP2 f = builtin_cubic();
    CHECK(map_compose(RationalMapP2::identity(Q), f) == f);
    CHECK(map_compose(f, RationalMapP2::identity(Q)) == f);
}

TEST_CASE("the cubic and its printed inverse compose to the identity") {
    RationalMapP2 f = builtin_cubic(), g = builtin_cubic_inverse();
    CHECK(map_compose(f, g) == RationalMapP2::identity(Q));
    CHECK(map_compose(g, f) == RationalMapP2::identity(Q));
    CHECK(map_compose(f, g).degree() == 1);
}

TEST_CASE("Phi_3 on the line at infinity and at its indeterminacy point") {
    RationalMapP2 phi = builtin_phi(3);
    CHECK(map_apply(phi, ProjPoint::make(Q, 0, 1, 0)) == ProjPoint::make(Q, 1, 0, 0));
    CHECK(in_indeterminacy(phi, ProjPoint::make(Q, 1, 0, 0)));
    try {
        map_apply(phi, ProjPoint::make(Q, 1, 0, 0));
        FAIL("expected IndeterminacyHit");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IndeterminacyHit);
    }
    ProjPoint p = ProjPoint::make(Q, 3, -2, 5);
    CHECK(map_apply(RationalMapP2::identity(Q), p) == p);
}

TEST_CASE("jacobian determinants") {
    std::mt19937_64 r(3);
    HomoPoly jl = jacobian_det(RationalMapP2::linear(random_invertible(r)));
    CHECK(jl.degree() == 0);
    CHECK_FALSE(jl.is_zero());
    for (int n = 3; n <= 6; ++n) {
        HomoPoly j = jacobian_det(builtin_phi(n));
        // Exc Phi_n is the line z = 0: the jacobian is a power of z.
        CHECK(j == HomoPoly::monomial(Q, 3, Mono{0, 0, 3 * (n - 1)}, FieldElement(Q, n)));
    }
    HomoPoly jc = jacobian_det(builtin_cubic());
    HomoPoly y = P("y"), C = P("x*z + y^2");
    CHECK(poly_divides(y, jc));
    CHECK(poly_divides(C, jc));
    HomoPoly rest = jc;
    while (poly_divides(y, rest)) rest = poly_divexact(rest, y);
    while (poly_divides(C, rest)) rest = poly_divexact(rest, C);
    CHECK(rest.degree() == 0);
}

TEST_CASE("proj_equal is an equivalence relation") {
    FieldElement two(Q, 2), three(Q, Rational(-3));
    RationalMapP2 f = builtin_phi(3);
    auto scale = [](const RationalMapP2& m, const FieldElement& c) {
        return std::array<HomoPoly, 3>{m[0].scaled(c), m[1].scaled(c), m[2].scaled(c)};
    };
    CHECK(proj_equal(f, f));
    auto s2 = scale(f, two);
    RationalMapP2 g = RationalMapP2::make(s2[0], s2[1], s2[2]);
    CHECK(proj_equal(f, g));
    CHECK(proj_equal(g, f));
    auto s3 = scale(g, three);
    RationalMapP2 h = RationalMapP2::make(s3[0], s3[1], s3[2]);
    CHECK(proj_equal(g, h));
    CHECK(proj_equal(f, h));
    CHECK(proj_equal(f, map_compose(f, RationalMapP2::identity(Q))));
    CHECK_FALSE(proj_equal(builtin_phi(3), builtin_phi(4)));
    // A common factor is cancelled on construction.
    RationalMapP2 w = RationalMapP2::make(P("x*z"), P("y*z"), P("z^2"));
    CHECK(w == RationalMapP2::identity(Q));
    CHECK(ProjPoint::make(Q, 1, 2, 3) == ProjPoint::make(Q, 2, 4, 6));
}

TEST_CASE("linear conjugation") {
    std::mt19937_64 r(9);
    RationalMapP2 f = builtin_phi(3);
    CHECK(map_conjugate(f, mat_identity(Q)) == f);
    for (int i = 0; i < 10; ++i) {
        Mat3 A = random_invertible(r);
        RationalMapP2 c = map_conjugate(f, A);
        CHECK(c.degree() == f.degree());
        CHECK(proj_equal(map_conjugate(c, mat_inverse(A)), f));
        CHECK(proj_equal(map_compose_linear_left(A, f), map_compose(RationalMapP2::linear(A), f)));
        CHECK(proj_equal(map_compose_linear_right(f, A), map_compose(f, RationalMapP2::linear(A))));
    }
    Mat3 sing = mat_from_ints(Q, {{{1, 2, 3}, {2, 4, 6}, {0, 0, 1}}});
    CHECK_THROWS_AS(mat_inverse(sing), Error);
}

TEST_CASE("degree sequences of the reference maps") {
    CHECK(degree_sequence(builtin_phi(3), 5) == std::vector<int>{3, 3, 3, 3, 3});
    CHECK(degree_sequence(builtin_example12_linear(), 4) == std::vector<int>{2, 3, 4, 5});
    RationalMapP2 henon = builtin_henon({0, 0, 1}, 1);
    CHECK(degree_sequence(henon, 4) == std::vector<int>{2, 4, 8, 16});
}

TEST_CASE("growth classification") {
    CHECK(classify_growth({3, 3, 3, 3, 3}).tag == GrowthTag::Bounded);
    CHECK(classify_growth({2, 3, 4, 5}).tag == GrowthTag::Linear);
    CHECK(classify_growth({2, 4, 8, 16}).tag == GrowthTag::Exponential);
    CHECK(classify_growth({1, 4, 9, 16, 25}).tag == GrowthTag::Quadratic);
    CHECK_THROWS_AS(classify_growth({2}), Error);
}

TEST_CASE("mod-p degree sequences agree with exact ones over Q") {
    std::mt19937_64 r(21);
    std::vector<RationalMapP2> maps{builtin_phi(3), builtin_example12_linear(), builtin_henon({1, 0, 1}, 2),
                                    builtin_cubic()};
    for (int i = 0; i < 4; ++i) maps.push_back(map_compose_linear_left(random_invertible(r), builtin_phi(3 + i % 2)));
    maps.push_back(map_compose_linear_left(random_invertible(r), builtin_cubic()));
    for (auto& f : maps) CHECK(degree_sequence_modp(f, 4) == degree_sequence(f, 4));
}

TEST_CASE("mod-p degrees over a number field") {
    FieldPtr K = FieldSpec::make(cyclotomic(3), std::nullopt, "w");
    FieldElement w = FieldElement::gen(K);
    Mat3 A{{{FieldElement(K, 1), w, FieldElement(K, 0)},
            {FieldElement(K, 0), FieldElement(K, 1), w},
            {w, FieldElement(K, 0), FieldElement(K, 1)}}};
    RationalMapP2 f = map_compose_linear_left(A, builtin_phi(3, K));
    std::vector<int> exact = degree_sequence(f, 3);
    CHECK(degree_sequence_modp(f, 3) == exact);
    CHECK(degree_sequence_modp(f, 3, 7) == exact);
}

TEST_CASE("Bedford-Kim normal form builder") {
    RationalMapP2 f = builtin_bedford_kim(3, FieldElement(Q, 1), {});
    CHECK(f == M("x*z^2", "z^3", "x^3 - y*z^2 + z^3"));
    CHECK_THROWS_AS(builtin_bedford_kim(2, FieldElement(Q, 1), {}), Error);
}
