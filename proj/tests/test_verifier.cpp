#include <doctest.h>

#include <functional>

#include "crem/error.hpp"
#include "crem/verifier.hpp"

using namespace crem;

namespace {

FamilyParams params(int n, int k, Rational a, Rational b = 0, Rational g = 1, Rational d = 1) {
    FamilyParams p;
    p.n = n;
    p.k = k;
    p.alpha = a;
    p.beta = b;
    p.gamma = g;
    p.delta = d;
    return p;
}

const Check* find_check(const VerificationReport& r, const std::string& prefix) {
    for (auto& c : r.checks)
        if (c.name.rfind(prefix, 0) == 0) return &c;
    return nullptr;
}

void require_pass(const VerificationReport& r) {
    for (auto& c : r.checks) {
        CAPTURE(c.name);
        CAPTURE(c.detail);
        CHECK(c.pass);
    }
    CHECK(r.overall);
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidArgument;
}

// The germ fed to the gluing check for a Phi-type family.
Germ2 composite_germ(const PhiFamily& F) {
    const ProjPoint P = ProjPoint::make(F.field, 1, 0, 0);
    RationalMapP2 L = RationalMapP2::linear(F.phi);
    std::vector<RationalMapP2> maps{L};
    for (int i = 0; i < F.k; ++i) {
        maps.push_back(F.base);
        maps.push_back(L);
    }
    return germ_of_chain(maps, P, P, 0, 0, GluingFamily{GluingKind::PhiN, F.n}.default_order());
}

} // namespace

TEST_CASE("family names") {
    CHECK(family_from_name("thm31") == Family::Thm31);
    CHECK(family_from_name("SEC23") == Family::Sec23);
    CHECK_FALSE(family_from_name("thm99").has_value());
    for (Family f : {Family::Thm31, Family::Thm33, Family::Thm35, Family::Thm43, Family::Sec23})
        CHECK(family_from_name(family_name(f)) == f);
}

TEST_CASE("printed matrices") {
    PhiFamily f35 = build_phi_family(Family::Thm35, params(3, 0, 2));
    CHECK(f35.phi[0][0] == FieldElement(f35.field, 2));
    CHECK(f35.phi[0][1] == FieldElement(f35.field, -2));
    CHECK(f35.phi[0][2] == FieldElement(f35.field, 0));
    CHECK(f35.k == 2);

    PhiFamily f31 = build_phi_family(Family::Thm31, params(3, 0, 1, 0));
    FieldElement theta = FieldElement::gen(f31.field);
    CHECK(theta.pow(9) == FieldElement(f31.field, -1));
    CHECK(f31.field->degree() == 6);

    PhiFamily f43 = build_phi_family(Family::Thm43, params(3, 0, 1));
    CHECK(f43.field->modulus() == UniPoly::from_ints({3, 0, 1}));
    CHECK(FieldElement::gen(f43.field) * FieldElement::gen(f43.field) == FieldElement(f43.field, -3));
    CHECK(f43.base == builtin_cubic(f43.field));

    PhiFamily s23 = build_phi_family(Family::Sec23, {});
    CHECK(s23.field->modulus() == UniPoly::from_ints({16, 0, 8, 0, 4, 0, 2, 0, 1}));
    CHECK(s23.n == 2);
}

TEST_CASE("domain violations") {
    CHECK(kind_of([] { build_phi_family(Family::Thm35, params(3, 0, 0)); }) == ErrorKind::DomainViolation);
    CHECK(kind_of([] { build_phi_family(Family::Thm43, params(3, 0, 0)); }) == ErrorKind::DomainViolation);
    CHECK(kind_of([] { build_phi_family(Family::Thm33, params(4, 0, 1, 1, 1, 1)); }) == ErrorKind::DomainViolation);
    CHECK(kind_of([] { build_phi_family(Family::Thm33, params(4, 0, 0, 0, 1, 1)); }) == ErrorKind::DomainViolation);
    CHECK(kind_of([] { build_phi_family(Family::Thm31, params(2, 0, 1)); }) == ErrorKind::UnsupportedN);
    CHECK(kind_of([] { build_phi_family(Family::Thm31, params(3, 9, 1)); }) == ErrorKind::DomainViolation);
    CHECK(kind_of([] { build_phi_family(Family::Thm33, params(3, 0, 0, 1, 1, 1)); }) == ErrorKind::UnsupportedN);
}

TEST_CASE("orbit and gluing for the degree-three family, several alpha") {
    for (long a : {2L, 3L, -1L}) {
        CAPTURE(a);
        VerificationReport r = verify_orbit_and_gluing(Family::Thm35, params(3, 0, a));
        require_pass(r);
        CHECK(find_check(r, "gluing") != nullptr);
    }
    VerificationReport r2 = verify_orbit_and_gluing(Family::Thm35, params(3, 0, 2));
    const Check* col = find_check(r2, "P, phi(P)");
    REQUIRE(col != nullptr);
    CHECK(col->detail.rfind("det = -2;", 0) == 0);
}

TEST_CASE("collinearity determinant by hand") {
    FieldPtr Q = FieldSpec::rationals();
    Mat3 m = mat_from_ints(Q, {{{1, 0, 0}, {2, -1, 1}, {2, 1, 1}}});
    CHECK(mat_det(m) == FieldElement(Q, -2));
    PhiFamily F = build_phi_family(Family::Thm35, params(3, 0, 2));
    RationalMapP2 L = RationalMapP2::linear(F.phi);
    ProjPoint P = ProjPoint::make(Q, 1, 0, 0);
    CHECK(map_apply(L, P) == ProjPoint::make(Q, 2, -1, 1));
    CHECK(map_apply(L, map_apply(F.base, map_apply(L, P))) == ProjPoint::make(Q, 2, 1, 1));
}

TEST_CASE("orbit and gluing for the general family at rational samples and k") {
    require_pass(verify_orbit_and_gluing(Family::Thm31, params(3, 0, 1, 0)));
    require_pass(verify_orbit_and_gluing(Family::Thm31, params(3, 1, 1, 0)));
    require_pass(verify_orbit_and_gluing(Family::Thm31, params(3, 0, 2, 3)));
    require_pass(verify_orbit_and_gluing(Family::Thm31, params(3, 0, Rational(-1, 2), 1)));
}

TEST_CASE("orbit and gluing for the remaining families") {
    require_pass(verify_orbit_and_gluing(Family::Thm33, params(4, 0, 0, 1, 1, 1)));
    require_pass(verify_orbit_and_gluing(Family::Thm43, params(3, 0, 1)));
    require_pass(verify_orbit_and_gluing(Family::Thm43, params(3, 0, 2)));
    VerificationReport s = verify_orbit_and_gluing(Family::Sec23, {});
    require_pass(s);
}

TEST_CASE("the quadratic construction's literal exponent four runs into Ind") {
    OrbitOptions o;
    o.exponent = 4;
    VerificationReport r = verify_orbit_and_gluing(Family::Sec23, {}, o);
    CHECK_FALSE(r.overall);
    const Check* ind = find_check(r, "orbit avoids Ind");
    REQUIRE(ind != nullptr);
    CHECK_FALSE(ind->pass);
}

TEST_CASE("mutating n20 breaks the gluing") {
    PhiFamily F = build_phi_family(Family::Thm35, params(3, 0, 2));
    Germ2 g = composite_germ(F);
    GluingFamily fam{GluingKind::PhiN, 3};
    GluingReport ok = check_gluing(g, fam);
    CHECK(ok.pass);
    for (auto& [name, v] : ok.residuals) CHECK(v.is_zero());
    g.second.set(2, 0, g.n(2, 0) + FieldElement(F.field, 1));
    CHECK_FALSE(check_gluing(g, fam).pass);
}

TEST_CASE("mutating an orbit point breaks closing") {
    PhiFamily F = build_phi_family(Family::Thm35, params(3, 0, 2));
    RationalMapP2 L = RationalMapP2::linear(F.phi);
    ProjPoint P = ProjPoint::make(F.field, 1, 0, 0);
    ProjPoint q = map_apply(L, P);
    for (int i = 0; i < F.k; ++i) q = map_apply(L, map_apply(F.base, q));
    CHECK(q == P);
    ProjPoint moved = ProjPoint::make(F.field, 2, -1, 2);  // phi(P) shifted
    ProjPoint r = map_apply(L, map_apply(F.base, map_apply(L, map_apply(F.base, moved))));
    CHECK(r != P);
}

TEST_CASE("printed conjugacy witnesses") {
    FieldPtr Q = FieldSpec::rationals();
    RationalMapP2 f2 = build_phi_family(Family::Thm35, params(3, 0, 2)).automorphism();
    RationalMapP2 f3 = build_phi_family(Family::Thm35, params(3, 0, 3)).automorphism();
    Mat3 M = mat_from_ints(Q, {{{1, 0, -1}, {0, 1, 0}, {0, 0, 1}}});
    CHECK(conjugacy_witness_check(f3, f2, M));
    // The literal orientation of the check does not hold.
    CHECK_FALSE(conjugacy_witness_check(f2, f3, M));
    CHECK(conjugacy_witness_check(f2, f2, mat_identity(Q)));

    PhiFamily c1 = build_phi_family(Family::Thm43, params(3, 0, 1)), c2 = build_phi_family(Family::Thm43, params(3, 0, 2));
    Mat3 D = mat_from_ints(c1.field, {{{1, 0, 0}, {0, 2, 0}, {0, 0, 4}}});
    CHECK(conjugacy_witness_check(c2.automorphism(), c1.automorphism(), D));

    Mat3 sing = mat_from_ints(Q, {{{1, 0, 0}, {0, 0, 0}, {0, 0, 1}}});
    CHECK(kind_of([&] { conjugacy_witness_check(f2, f2, sing); }) == ErrorKind::SingularMatrix);
}

TEST_CASE("triviality suites") {
    for (Family f : {Family::Thm35, Family::Thm43, Family::Thm31, Family::Thm33}) {
        CAPTURE(family_name(f));
        auto samples = default_triviality_samples(f);
        CHECK(samples.size() >= 3);
        VerificationReport r = verify_triviality_suite(f, samples);
        require_pass(r);
        CHECK(r.checks.size() >= samples.size());
    }
    // The n = 3 sample alpha0 = 1, alpha = 8 needs mu = 2.
    TrivialitySample s{params(3, 0, 1, 0), params(3, 0, 8, 0), {}};
    require_pass(verify_triviality_suite(Family::Thm31, {s}));
    CHECK(triviality_witness(Family::Thm31, s)[0][0].field()->is_rational() == false);
}

TEST_CASE("a witness needing a missing root is skipped, not passed") {
    TrivialitySample s{params(3, 0, 1, 0), params(3, 0, 2, 0), {}};
    CHECK(kind_of([&] { triviality_witness(Family::Thm31, s); }) == ErrorKind::RootNotInField);
    VerificationReport r = verify_triviality_suite(Family::Thm31, {s});
    CHECK(r.checks.empty());
    CHECK(r.notes.size() == 1);
}

TEST_CASE("perturbing any witness entry breaks the conjugacy") {
    for (Family f : {Family::Thm35, Family::Thm43, Family::Thm31, Family::Thm33}) {
        CAPTURE(family_name(f));
        const TrivialitySample s = default_triviality_samples(f).front();
        FamilyParams moved;
        Mat3 M = triviality_witness(f, s, &moved);
        RationalMapP2 f0 = build_phi_family(f, s.base).automorphism();
        RationalMapP2 f1 = build_phi_family(f, moved).automorphism();
        REQUIRE(conjugacy_witness_check(f1, f0, M));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                CAPTURE(i);
                CAPTURE(j);
                Mat3 bad = M;
                bad[i][j] = bad[i][j] + FieldElement(bad[i][j].field(), 1);
                if (mat_det(bad).is_zero()) continue;
                CHECK_FALSE(conjugacy_witness_check(f1, f0, bad));
            }
    }
}

TEST_CASE("degree growth tracks the dynamical degree") {
    struct Run {
        Family f;
        FamilyParams p;
    };
    std::vector<Run> runs{{Family::Thm35, params(3, 0, 2)},
                          {Family::Thm31, params(3, 0, 1, 0)},
                          {Family::Thm33, params(4, 0, 0, 1, 1, 1)},
                          {Family::Thm43, params(3, 0, 1)}};
    for (auto& r : runs) {
        CAPTURE(family_name(r.f));
        VerificationReport g = verify_degree_growth(r.f, r.p);
        require_pass(g);
        CHECK(find_check(g, "growth class Exponential") != nullptr);
        CHECK(find_check(g, "d_N / d_(N-1) within 15% of lambda") != nullptr);
    }
    CHECK(degree_sequence(build_phi_family(Family::Thm35, params(3, 0, 2)).automorphism(), 5) ==
          std::vector<int>{3, 9, 27, 73, 195});
}

TEST_CASE("Picard matrix per family") {
    CHECK(family_picard_matrix(Family::Thm35, 3)->dim == 16);
    CHECK(family_picard_matrix(Family::Thm31, 4)->dim == 22);
    CHECK(family_picard_matrix(Family::Thm33, 4)->dim == 15);
    CHECK(family_picard_matrix(Family::Thm43, 0)->dim == 16);
    CHECK_FALSE(family_picard_matrix(Family::Sec23, 2).has_value());
}

TEST_CASE("normal forms") {
    VerificationReport r = verify_normal_forms();
    CHECK(r.overall);
    bool saw_negative = false, saw_bk = false, saw_r34 = false;
    for (auto& c : r.checks) {
        CAPTURE(c.name);
        CHECK(c.pass);
        if (c.name.find("(u^n = alpha) is not a conjugacy") != std::string::npos) saw_negative = true;
        if (c.name.rfind("A f_a = f_(s^2 a) B", 0) == 0) saw_bk = true;
        if (c.name.find("eps y z") != std::string::npos) saw_r34 = true;
    }
    CHECK(saw_negative);
    CHECK(saw_bk);
    CHECK(saw_r34);
}

TEST_CASE("rational roots") {
    CHECK(rational_root(8, 3) == Rational(2));
    CHECK(rational_root(-8, 3) == Rational(-2));
    CHECK(rational_root(Rational(16, 81), 4) == Rational(2, 3));
    CHECK_FALSE(rational_root(2, 2).has_value());
    CHECK_FALSE(rational_root(-4, 2).has_value());
}

TEST_CASE("reports are deterministic") {
    auto a = verify_orbit_and_gluing(Family::Thm35, params(3, 0, 2)).to_string();
    auto b = verify_orbit_and_gluing(Family::Thm35, params(3, 0, 2)).to_string();
    CHECK(a == b);
}
