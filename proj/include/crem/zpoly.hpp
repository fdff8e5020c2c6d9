#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

namespace crem {

// Dense homogeneous trivariate polynomial over Z. Coefficient of
// x^a y^b z^(deg-a-b) is stored at a*(deg+1)+b. Used as the fast path for
// rational coefficients.
struct ZPoly {
    int deg = -1;
    std::vector<mpz_class> c;

    ZPoly() = default;
    explicit ZPoly(int d) : deg(d), c(d < 0 ? 0 : (d + 1) * (d + 1)) {}
    size_t idx(int a, int b) const { return static_cast<size_t>(a) * (deg + 1) + b; }
    mpz_class& at(int a, int b) { return c[idx(a, b)]; }
    const mpz_class& at(int a, int b) const { return c[idx(a, b)]; }
    bool is_zero() const;
    size_t nnz() const;
    mpz_class content() const;
};

ZPoly zmul(const ZPoly& a, const ZPoly& b);
// Exact division over Z; nullopt when g does not divide a.
std::optional<ZPoly> zdivexact(const ZPoly& a, const ZPoly& g);
// Brown-style modular gcd with exact verification. Returns the primitive
// gcd and the cofactors a_i / gcd.
struct ZGcdResult {
    ZPoly g;
    std::vector<ZPoly> cofactors;
};
ZGcdResult zgcd(const std::vector<ZPoly>& polys);

} // namespace crem
