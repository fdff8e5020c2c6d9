#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "crem/field.hpp"

namespace crem {

// Exponent vector; unused slots stay zero for arity 2.
using Mono = std::array<int, 3>;

// Graded-lex comparison: true when a precedes b in descending order.
bool glex_greater(const Mono& a, const Mono& b);

// Sparse homogeneous polynomial in 2 or 3 variables over a FieldSpec.
// Terms are kept sorted in descending graded-lex order with no zero coefficients.
class HomoPoly {
public:
    using Term = std::pair<Mono, FieldElement>;

    HomoPoly() : HomoPoly(FieldSpec::rationals(), 3) {}
    HomoPoly(FieldPtr f, int arity);
    static HomoPoly from_terms(FieldPtr f, int arity, std::vector<Term> terms);
    static HomoPoly constant(FieldPtr f, int arity, const FieldElement& c);
    static HomoPoly var(FieldPtr f, int arity, int i);
    static HomoPoly monomial(FieldPtr f, int arity, const Mono& m, const FieldElement& c);

    const FieldPtr& field() const { return field_; }
    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    // -1 for the zero polynomial.
    int degree() const { return degree_; }
    const std::vector<Term>& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }
    const Term& leading() const { return terms_.front(); }
    FieldElement coeff(const Mono& m) const;
    int min_exponent(int var) const;
    int max_exponent(int var) const;
    bool is_constant() const { return degree_ == 0; }

    HomoPoly operator-() const;
    friend HomoPoly operator+(const HomoPoly& a, const HomoPoly& b);
    friend HomoPoly operator-(const HomoPoly& a, const HomoPoly& b);
    friend HomoPoly operator*(const HomoPoly& a, const HomoPoly& b);
    friend bool operator==(const HomoPoly& a, const HomoPoly& b);
    friend bool operator!=(const HomoPoly& a, const HomoPoly& b) { return !(a == b); }

    HomoPoly scaled(const FieldElement& s) const;
    HomoPoly pow(unsigned e) const;
    // Divide by the leading coefficient.
    HomoPoly normalized() const;
    HomoPoly derivative(int var) const;
    FieldElement eval(const std::vector<FieldElement>& pt) const;
    // Multiply by var^k.
    HomoPoly shifted(int var, int k) const;

    std::string to_string() const;
    // Throws unless b shares this field and arity.
    void check_compat(const HomoPoly& b) const;

private:
    friend class HomoPolyBuilder;
    FieldPtr field_;
    int arity_;
    int degree_ = -1;
    std::vector<Term> terms_;
};

HomoPoly poly_add(const HomoPoly& p, const HomoPoly& q);
HomoPoly poly_mul(const HomoPoly& p, const HomoPoly& q);
// p(g0, g1, g2) for p of arity 3; the g_i share one degree.
HomoPoly poly_substitute(const HomoPoly& p, const HomoPoly& g0, const HomoPoly& g1, const HomoPoly& g2);
// Exact quotient; throws InexactDivision.
HomoPoly poly_divexact(const HomoPoly& p, const HomoPoly& q);
bool poly_divides(const HomoPoly& q, const HomoPoly& p);
// Normalized gcd; gcd(0, q) = normalized q.
HomoPoly poly_gcd(const HomoPoly& p, const HomoPoly& q);
HomoPoly poly_gcd(const std::vector<HomoPoly>& ps);
// Algorithm-specific entry points, exposed for cross-checking.
HomoPoly poly_gcd_subresultant(const HomoPoly& p, const HomoPoly& q);
HomoPoly poly_gcd_modular(const std::vector<HomoPoly>& ps);
// Normalized gcd together with the exact quotients ps[i] / g.
struct GcdCofactors {
    HomoPoly g;
    std::vector<HomoPoly> cofactors;
};
GcdCofactors poly_gcd_cofactors(const std::vector<HomoPoly>& ps);
// Linear substitution x_i -> sum_j M[i][j] x_j.
HomoPoly poly_linear_substitute(const HomoPoly& p, const std::vector<std::vector<FieldElement>>& M);

// Parse "x*z^2 + y^3" style text. Coefficients may be integers, fractions,
// the field generator name, or residue vectors "[c0, c1]".
HomoPoly parse_homopoly(const std::string& text, FieldPtr f, int arity = 3,
                        const std::vector<std::string>& vars = {"x", "y", "z"});
UniPoly parse_unipoly(const std::string& text, const std::string& var = "x");

} // namespace crem
