#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crem/cremona.hpp"
#include "crem/germ.hpp"
#include "crem/picard.hpp"

namespace crem {

enum class Family { Thm31, Thm33, Thm35, Thm43, Sec23 };
std::string family_name(Family f);
// Accepts "thm31", "THM31", "sec23", ...
std::optional<Family> family_from_name(const std::string& s);

struct FamilyParams {
    int n = 3;
    int k = 0;
    Rational alpha = 1, beta = 0, gamma = 1, delta = 1;
};

struct PhiFamily {
    Family family;
    FamilyParams params;
    FieldPtr field;
    Mat3 phi;
    // Phi_n for the first four Phi-type families, the cubic f for THM43.
    RationalMapP2 base;
    int n = 0;        // degree parameter of the base map
    int k = 0;        // orbit index in (phi base)^k phi
    RationalMapP2 automorphism() const;  // phi o base
};

// Throws DomainViolation, UnsupportedN.
PhiFamily build_phi_family(Family fam, const FamilyParams& p);

// Q(theta) with theta = exp((2k+1) i pi / 3n); collapses to Q when theta = -1.
FieldPtr theta_field(int n, int k);
// Q(eps) with eps = exp((2k+1) i pi / n).
FieldPtr eps_field(int n, int k);
FieldPtr sqrt_minus3_field();
FieldPtr octic_field();

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerificationReport {
    std::string subject;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<Check> checks;
    // Informational values (point counts, intervals), not part of overall.
    std::vector<std::pair<std::string, std::string>> notes;
    bool overall = true;

    void add(std::string name, bool pass, std::string detail = "");
    void merge(const VerificationReport& o);
    std::string to_string() const;
};

struct OrbitOptions {
    int order = 0;                  // germ truncation; 0 picks the family default
    std::optional<int> exponent;    // override k in (phi base)^k phi
};

// Orbit conditions, support disjointness and germ gluing for one parameter
// choice. IndeterminacyHit during the orbit is reported as a failed check
// naming the step.
VerificationReport verify_orbit_and_gluing(Family fam, const FamilyParams& p, const OrbitOptions& opt = {});

// Degree sequence of phi o base (exact over Q, mod p otherwise) against the
// spectral radius of the family's Picard matrix.
VerificationReport verify_degree_growth(Family fam, const FamilyParams& p, int iterates = 5);

// proj_equal(f1, M f0 M^-1). Throws SingularMatrix.
bool conjugacy_witness_check(const RationalMapP2& f0, const RationalMapP2& f1, const Mat3& m);

struct TrivialitySample {
    FamilyParams base;   // the fixed point alpha_0, ...
    FamilyParams moved;  // the nearby parameter
    // Root parameter mu for THM33; THM31 derives it from alpha / alpha_0.
    std::optional<Rational> mu;
};
// Printed witness matrix M with phi_moved base = M^-1 phi_base base M.
// Throws RootNotInField.
Mat3 triviality_witness(Family fam, const TrivialitySample& s, FamilyParams* moved_out = nullptr);
VerificationReport verify_triviality_suite(Family fam, const std::vector<TrivialitySample>& samples);
std::vector<TrivialitySample> default_triviality_samples(Family fam);

VerificationReport verify_normal_forms();

// Picard matrix whose spectral radius is the family's first dynamical degree;
// nullopt for sec23.
std::optional<PicLatticeMatrix> family_picard_matrix(Family fam, int n);

// Rational n-th root or nullopt.
std::optional<Rational> rational_root(const Rational& q, int n);

} // namespace crem
