#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crem/homopoly.hpp"

namespace crem {

// Point of P^2, first nonzero coordinate scaled to 1.
class ProjPoint {
public:
    ProjPoint() = default;
    static ProjPoint make(const FieldElement& a, const FieldElement& b, const FieldElement& c);
    static ProjPoint make(FieldPtr f, long a, long b, long c);

    const FieldElement& operator[](int i) const { return c_[i]; }
    const std::array<FieldElement, 3>& coords() const { return c_; }
    const FieldPtr& field() const { return c_[0].field(); }
    friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.c_ == b.c_; }
    friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }
    std::string to_string() const;

private:
    std::array<FieldElement, 3> c_;
};

using Mat3 = std::array<std::array<FieldElement, 3>, 3>;

Mat3 mat_identity(FieldPtr f);
Mat3 mat_from_ints(FieldPtr f, const std::array<std::array<long, 3>, 3>& a);
Mat3 mat_mul(const Mat3& a, const Mat3& b);
FieldElement mat_det(const Mat3& a);
// Throws SingularMatrix.
Mat3 mat_inverse(const Mat3& a);
std::array<FieldElement, 3> mat_apply(const Mat3& a, const std::array<FieldElement, 3>& v);

// Triple of coprime forms of one degree, scaled so the graded-lex largest
// monomial appearing in any component has coefficient 1 in the first
// component where it appears.
class RationalMapP2 {
public:
    RationalMapP2() = default;
    // Cancels the common factor and rescales. Throws ZeroMap if all vanish.
    static RationalMapP2 make(const HomoPoly& f0, const HomoPoly& f1, const HomoPoly& f2);
    static RationalMapP2 parse(const std::array<std::string, 3>& text, FieldPtr f);
    static RationalMapP2 linear(const Mat3& m);
    static RationalMapP2 identity(FieldPtr f);

    const HomoPoly& operator[](int i) const { return c_[i]; }
    const std::array<HomoPoly, 3>& components() const { return c_; }
    const FieldPtr& field() const { return c_[0].field(); }
    int degree() const;
    std::string to_string() const;
    friend bool operator==(const RationalMapP2& a, const RationalMapP2& b) { return a.c_ == b.c_; }

private:
    std::array<HomoPoly, 3> c_;
};

// f o g.
RationalMapP2 map_compose(const RationalMapP2& f, const RationalMapP2& g);
// f o M and M o f without going through a generic composition.
RationalMapP2 map_compose_linear_right(const RationalMapP2& f, const Mat3& m);
RationalMapP2 map_compose_linear_left(const Mat3& m, const RationalMapP2& f);
// Throws IndeterminacyHit.
ProjPoint map_apply(const RationalMapP2& f, const ProjPoint& p);
bool in_indeterminacy(const RationalMapP2& f, const ProjPoint& p);
HomoPoly jacobian_det(const RationalMapP2& f);
bool proj_equal(const RationalMapP2& f, const RationalMapP2& g);
// M f M^-1.
RationalMapP2 map_conjugate(const RationalMapP2& f, const Mat3& m);

std::vector<int> degree_sequence(const RationalMapP2& f, int n);
// Degrees of f, ..., f^n restricted to a random line over F_p, the field
// generator sent to a root of its modulus mod p. Probabilistic: an unlucky
// prime or line can only lower a degree.
std::vector<int> degree_sequence_modp(const RationalMapP2& f, int n, std::uint64_t seed = 1);

enum class GrowthTag { Bounded, Linear, Quadratic, Exponential };
std::string growth_name(GrowthTag t);

struct GrowthClass {
    GrowthTag tag;
    std::string evidence;
    // d_N / d_{N-1}; meaningful for Exponential.
    Rational last_ratio;
};
// Throws Inconclusive.
GrowthClass classify_growth(const std::vector<int>& seq);

// Built-in maps.
RationalMapP2 builtin_phi(int n, FieldPtr f = FieldSpec::rationals());
// (y^2 z : x(xz+y^2) : y(xz+y^2)) and its inverse.
RationalMapP2 builtin_cubic(FieldPtr f = FieldSpec::rationals());
RationalMapP2 builtin_cubic_inverse(FieldPtr f = FieldSpec::rationals());
// Homogenized (y, P(y) - delta x); p_coeffs ascending.
RationalMapP2 builtin_henon(const std::vector<Rational>& p_coeffs, const Rational& delta);
// (xy : yz : z^2)
RationalMapP2 builtin_example12_linear();
// ((y+z)(y+z-eps z) : x(y-eps z) : (y+z)z)
RationalMapP2 builtin_example12_quadratic(const Rational& eps);
// (x z^{n-1} : z^n : x^n - y z^{n-1} + c z^n + sum a_l x^{l+1} z^{n-l-1}), l = 2, 4, ... <= n-3.
RationalMapP2 builtin_bedford_kim(int n, const FieldElement& c, const std::vector<FieldElement>& a);

} // namespace crem
