#include <doctest.h>

#include <functional>

#include "crem/error.hpp"
#include "crem/field.hpp"
#include "props.hpp"

using namespace crem;

namespace {

FieldPtr sqrt_m3() { return FieldSpec::make(UniPoly::from_ints({3, 0, 1}), EmbeddingHint{0, Rational(173, 100)}); }

Rational q(const char* s) {
    Rational r(s, 10);
    r.canonicalize();
    return r;
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

} // namespace

TEST_CASE("generator squares to the modulus relation") {
    FieldPtr K = sqrt_m3();
    FieldElement x = FieldElement::gen(K);
    CHECK(x * x == FieldElement(K, -3));
}

TEST_CASE("fifth power of the generator mod x^5+1") {
    FieldPtr K = FieldSpec::make(UniPoly::from_ints({1, 0, 0, 0, 0, 1}));
    FieldElement x = FieldElement::gen(K), p = x;
    for (int i = 1; i < 5; ++i) p = p * x;
    CHECK(p == FieldElement(K, -1));
    CHECK(x.pow(5) == FieldElement(K, -1));
}

TEST_CASE("rational arithmetic in the degree-one field") {
    FieldPtr Q = FieldSpec::rationals();
    CHECK(FieldElement(Q, q("2/3")) + FieldElement(Q, q("1/6")) == FieldElement(Q, q("5/6")));
    CHECK(FieldElement(Q, q("-4/7")).inv() == FieldElement(Q, q("-7/4")));
    CHECK(FieldElement(Q, q("5/6")).to_string() == "5/6");
}

TEST_CASE("inverse of the generator of Q(sqrt(-3))") {
    FieldPtr K = sqrt_m3();
    FieldElement x = FieldElement::gen(K);
    CHECK(x.inv() == x.scaled(q("-1/3")));
}

TEST_CASE("zero divisors and zero are not invertible") {
    FieldPtr K = FieldSpec::make(UniPoly::from_ints({-1, 0, 1}));
    FieldElement x = FieldElement::gen(K);
    CHECK(kind_of([&] { (x - FieldElement(K, 1)).inv(); }) == ErrorKind::NonInvertible);
    CHECK(kind_of([&] { FieldElement(FieldSpec::rationals(), 0).inv(); }) == ErrorKind::ZeroInverse);
}

TEST_CASE("moduli must be monic and squarefree") {
    CHECK_THROWS_AS(FieldSpec::make(UniPoly::from_ints({1, 2, 1})), Error);
    CHECK_THROWS_AS(FieldSpec::make(UniPoly::from_ints({3, 0, 2})), Error);
}

TEST_CASE("mixing fields is a SpecMismatch") {
    FieldElement a = FieldElement::gen(sqrt_m3());
    FieldElement b(FieldSpec::rationals(), 1);
    CHECK(kind_of([&] { (void)(a + b); }) == ErrorKind::SpecMismatch);
}

TEST_CASE("embedding of i sqrt 3") {
    FieldElement x = FieldElement::gen(sqrt_m3());
    CInterval e = embed_approx(x, 40);
    CHECK(e.re.contains(0));
    CHECK(e.im.lo > q("17320508/10000000"));
    CHECK(e.im.hi < q("17320509/10000000"));
    CHECK(e.width() <= Rational(1, mpz_class(1) << 40));
}

TEST_CASE("embedding of a rational constant is exact") {
    CInterval e = embed_approx(FieldElement(sqrt_m3(), 5), 64);
    CHECK(e.re.lo == 5);
    CHECK(e.re.hi == 5);
    CHECK(e.im.lo == 0);
}

TEST_CASE("embedding of the golden-square root") {
    FieldPtr K = FieldSpec::make(UniPoly::from_ints({1, -3, 1}), EmbeddingHint{Rational(13, 5), 0});
    CInterval e = embed_approx(FieldElement::gen(K), 48);
    // (3 + sqrt 5) / 2 = 2.6180339887...
    CHECK(e.re.lo > q("26180339887/10000000000"));
    CHECK(e.re.hi < q("26180339888/10000000000"));
    // Conjugate choice follows the hint.
    FieldPtr L = FieldSpec::make(UniPoly::from_ints({1, -3, 1}), EmbeddingHint{Rational(2, 5), 0});
    CInterval c = embed_approx(FieldElement::gen(L), 48);
    CHECK(c.re.hi < q("382/1000"));
    CHECK(c.re.lo > q("381/1000"));
}

TEST_CASE("no hint means no embedding") {
    FieldPtr K = FieldSpec::make(UniPoly::from_ints({3, 0, 1}));
    CHECK(kind_of([&] { embed_approx(FieldElement::gen(K), 32); }) == ErrorKind::NoEmbedding);
}

TEST_CASE("residues stay reduced") {
    FieldPtr K = sqrt_m3();
    FieldElement x = FieldElement::gen(K);
    FieldElement p = x.pow(7);  // (x^2)^3 x = -27 x
    CHECK(p.coeffs().size() == 2);
    CHECK(p == x.scaled(-27));
}

TEST_CASE("field axioms on 1000 random cases") {
    props::Outcome o = props::field_axioms(1000);
    CHECK(o.cases == 1000);
    for (auto& f : o.first_failures) MESSAGE(f);
    CHECK(o.failures == 0);
}
