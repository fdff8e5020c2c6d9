#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "crem/interval.hpp"

namespace crem {

using Rational = mpq_class;
using Integer = mpz_class;

// Dense univariate polynomial over Q, ascending coefficients, no trailing zeros.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> c);
    UniPoly(const Rational& c0);
    UniPoly(long c0) : UniPoly(Rational(c0)) {}

    static UniPoly X() { return UniPoly(std::vector<Rational>{0, 1}); }
    static UniPoly monomial(const Rational& c, int k);
    // Product of (X - r) terms is not needed; from integer list for convenience.
    static UniPoly from_ints(std::initializer_list<long> asc);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& lead() const { return c_.back(); }
    Rational coeff(int k) const;
    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    UniPoly operator-() const;
    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    UniPoly scaled(const Rational& s) const;
    UniPoly monic() const;
    UniPoly derivative() const;
    UniPoly pow(unsigned e) const;
    Rational eval(const Rational& x) const;
    Interval eval(const Interval& x) const;
    CInterval eval(const CInterval& x) const;
    // Reverse coefficient order (X^deg p(1/X)).
    UniPoly reversed() const;
    // Clear denominators and remove content; positive leading coefficient.
    UniPoly primitive() const;
    bool is_integral() const;

    std::string to_string(const std::string& var = "X") const;

private:
    void trim();
    std::vector<Rational> c_;
};

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
// Throws InexactDivision when b does not divide a.
UniPoly divexact(const UniPoly& a, const UniPoly& b);
// Monic gcd; gcd(0,0) = 0.
UniPoly gcd(const UniPoly& a, const UniPoly& b);
// Returns (g, s, t) with s*a + t*b = g monic.
struct ExtGcd {
    UniPoly g, s, t;
};
ExtGcd ext_gcd(const UniPoly& a, const UniPoly& b);

inline UniPoly uni_mul(const UniPoly& a, const UniPoly& b) { return a * b; }
inline UniPoly uni_pow(const UniPoly& a, unsigned e) { return a.pow(e); }
inline Rational uni_eval(const UniPoly& a, const Rational& x) { return a.eval(x); }
inline UniPoly uni_divexact(const UniPoly& a, const UniPoly& b) { return divexact(a, b); }

// Cyclotomic polynomial Phi_m.
UniPoly cyclotomic(unsigned m);

} // namespace crem
