#pragma once

#include <string>
#include <vector>

#include "crem/unipoly.hpp"

namespace crem {

struct PicLatticeMatrix {
    int dim = 0;
    std::vector<std::vector<Integer>> entries;
    std::vector<std::string> labels;

    PicLatticeMatrix() = default;
    PicLatticeMatrix(int n, std::vector<std::string> basis);
    Integer& at(int i, int j) { return entries[i][j]; }
    const Integer& at(int i, int j) const { return entries[i][j]; }
    std::string to_string() const;
};

enum class PicardFamily { Thm31, Thm33, Thm43 };
PicLatticeMatrix build_matrix(PicardFamily fam, int n = 0);

// det(X I - M), exact, via Bareiss at dim+1 integer points and interpolation.
UniPoly char_poly(const PicLatticeMatrix& m);
Integer det_bareiss(std::vector<std::vector<Integer>> a);

// Squarefree decomposition p = c * prod s_i^i (Yun). Entry i-1 holds s_i.
std::vector<UniPoly> squarefree_decomposition(const UniPoly& p);

struct IsolatedRoot {
    UniPoly polynomial;
    Rational lo, hi;  // lo == hi for an exact rational root; otherwise the root lies in (lo, hi)
    int multiplicity = 1;
    Interval interval() const { return {lo, hi}; }
};

std::vector<UniPoly> sturm_sequence(const UniPoly& p);
int sturm_count(const std::vector<UniPoly>& seq, const Rational& a, const Rational& b);
// Every distinct real root, ascending.
std::vector<IsolatedRoot> sturm_isolate(const UniPoly& p);
// Shrink an isolating interval to width <= 2^-bits by bisection.
IsolatedRoot refine_root(const IsolatedRoot& r, unsigned bits);

struct CyclotomicFactor {
    unsigned order;  // Phi_order
    int multiplicity;
};
struct FactorReport {
    // cyclotomic part plus the remaining cofactor (monic), product = monic p
    std::vector<CyclotomicFactor> cyclotomic;
    UniPoly rest;
    std::string to_string(const std::string& var = "X") const;
};
FactorReport factor_cyclotomic(const UniPoly& p);

struct SpectralRadius {
    IsolatedRoot root;
    // "cyclotomic" or "quadratic-cofactor" or "trivial"
    std::string certificate;
    FactorReport factors;
};
// Throws DominanceUnresolved.
SpectralRadius spectral_radius(const UniPoly& charpoly, unsigned precision_bits);
SpectralRadius spectral_radius(const PicLatticeMatrix& m, unsigned precision_bits);

// X^m p(1/X) == +-p(X). Throws ZeroConstantTerm.
bool is_reciprocal_up_to_sign(const UniPoly& p);

// Product formula printed for each family, for comparison.
UniPoly thm31_expected_charpoly(int n);
UniPoly thm33_dominant_factor(int n);
UniPoly thm43_expected_charpoly();

} // namespace crem
