#include <doctest.h>

#include <functional>

#include "crem/error.hpp"
#include "crem/mapfile.hpp"

using namespace crem;

namespace {

std::string parse_error(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
        return e.what();
    }
    FAIL("expected a ParseError");
    return {};
}

} // namespace

TEST_CASE("a full definition") {
    const char* text = R"def(# degree-three map over Q(sqrt(-3))
field { modulus = "x^2+3", hint = "1.7320508i", gen = "s" }
map { components = ["x*z^2 + s*y^3", "y*z^2", "z^3"] }   # trailing comment
candidates { points = ["1:0:0", "(0 : s : 1)"], curves = ["z", "x + s*y"] }
)def";
    MapDefinition d = parse_map_definition(text);
    REQUIRE(d.field->degree() == 2);
    CHECK(d.field->modulus() == UniPoly::from_ints({3, 0, 1}));
    FieldElement s = FieldElement::gen(d.field);
    CHECK(d.map.degree() == 3);
    CHECK(d.map[0].coeff(Mono{0, 3, 0}) == s);
    REQUIRE(d.points.size() == 2);
    CHECK(d.points[0] == ProjPoint::make(d.field, 1, 0, 0));
    CHECK(d.points[1] == ProjPoint::make(FieldElement(d.field, 0), s, FieldElement(d.field, 1)));
    REQUIRE(d.curves.size() == 2);
    CHECK(d.curves[0] == parse_homopoly("z", d.field));
    // The hint selects the root with positive imaginary part.
    CInterval e = embed_approx(s, 30);
    CHECK(e.im.lo > 0);
}

TEST_CASE("field and candidates are optional") {
    MapDefinition d = parse_map_definition(R"(map { components = ["x*y", "y*z", "z^2"] })");
    CHECK(d.field->is_rational());
    CHECK(d.map == builtin_example12_linear());
    CHECK(d.points.empty());
    CHECK(d.curves.empty());
}

TEST_CASE("errors carry a position") {
    std::string m = parse_error([] { parse_map_definition("map {\n  components = [\"x\", \"y\"\n"); });
    CHECK(m.find("line") != std::string::npos);
    CHECK(m.find("column") != std::string::npos);
    parse_error([] { parse_map_definition("map { components = [\"x\", \"y\"] }"); });
    parse_error([] { parse_map_definition("field { modulus = \"x^2+3\" }"); });
    parse_error([] { parse_map_definition("map { components = [\"x\", \"y^2\", \"z\"] }"); });
    parse_error([] { parse_map_definition("mapp { components = [\"x\", \"y\", \"z\"] }"); });
    std::string at3 = parse_error([] { parse_map_definition("# c\nmap { components = [\"x\", \"y\", \"z\"] }\n!"); });
    CHECK(at3.find("line 3") != std::string::npos);
}

TEST_CASE("hints") {
    EmbeddingHint h = parse_hint("1.7320508i");
    CHECK(h.re == 0);
    CHECK(h.im == Rational(4330127, 2500000));
    EmbeddingHint g = parse_hint("0.5-0.866i");
    CHECK(g.re == Rational(1, 2));
    CHECK(g.im == Rational(-433, 500));
    CHECK(parse_hint("-2").re == -2);
    CHECK(parse_hint("2.5e-3").re == Rational(1, 400));
    // Leading zeros are decimal, not octal.
    CHECK(parse_hint("0.09").re == Rational(9, 100));
    CHECK(parse_hint("010").re == 10);
    parse_error([] { parse_hint("abc"); });
}

TEST_CASE("points") {
    FieldPtr Q = FieldSpec::rationals();
    CHECK(parse_point("2:4:6", Q) == ProjPoint::make(Q, 1, 2, 3));
    CHECK(parse_point("( 1/2 : 0 : -1 )", Q) == ProjPoint::make(Q, 1, 0, -2));
    parse_error([] { parse_point("1:2", FieldSpec::rationals()); });
}

TEST_CASE("built-in maps") {
    RationalMapP2 m;
    REQUIRE(parse_builtin_map("phi(3)", m));
    CHECK(m == builtin_phi(3));
    REQUIRE(parse_builtin_map("cubic_quadratic", m));
    CHECK(m == builtin_cubic());
    REQUIRE(parse_builtin_map("cubic", m));
    CHECK(m == builtin_cubic());
    REQUIRE(parse_builtin_map("cubic_inverse", m));
    CHECK(m == builtin_cubic_inverse());
    REQUIRE(parse_builtin_map("example12_linear", m));
    CHECK(m == builtin_example12_linear());
    REQUIRE(parse_builtin_map("example12_quadratic(1/2)", m));
    CHECK(m == builtin_example12_quadratic(Rational(1, 2)));
    REQUIRE(parse_builtin_map("henon(0, 0, 1, 1)", m));
    CHECK(m == builtin_henon({0, 0, 1}, 1));
    REQUIRE(parse_builtin_map("bedford_kim(3, 1)", m));
    CHECK(m == builtin_bedford_kim(3, FieldElement(FieldSpec::rationals(), 1), {}));
    CHECK_FALSE(parse_builtin_map("no_such_map", m));
    CHECK_FALSE(parse_builtin_map("maps/file.crem", m));
    parse_error([] {
        RationalMapP2 x;
        parse_builtin_map("phi(x)", x);
    });
    parse_error([] {
        RationalMapP2 x;
        parse_builtin_map("phi(3", x);
    });
    CHECK(builtin_map_names().size() >= 7);
}
