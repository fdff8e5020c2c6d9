#pragma once

#include <optional>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "crem/cremona.hpp"

namespace crem {

// Bivariate power series truncated at total order T. Coefficients are
// stored densely; terms() lists the nonzero ones.
class Series2 {
public:
    Series2() = default;
    Series2(FieldPtr f, int T, std::pair<std::string, std::string> names = {"y", "z"});
    static Series2 constant(FieldPtr f, int T, const FieldElement& c, std::pair<std::string, std::string> names = {"y", "z"});
    // Coordinate function: var 0 or 1.
    static Series2 var(FieldPtr f, int T, int v, std::pair<std::string, std::string> names = {"y", "z"});
    static Series2 from_triples(FieldPtr f, int T, const std::vector<std::tuple<int, int, FieldElement>>& t,
                                std::pair<std::string, std::string> names = {"y", "z"});

    const FieldPtr& field() const { return f_; }
    int order() const { return T_; }
    const std::pair<std::string, std::string>& names() const { return names_; }
    // Zero outside the truncation range.
    FieldElement coeff(int i, int j) const;
    void set(int i, int j, const FieldElement& c);
    FieldElement constant_term() const { return coeff(0, 0); }
    std::vector<std::tuple<int, int, FieldElement>> terms() const;
    bool is_zero() const;
    bool is_unit() const { return !constant_term().is_zero(); }
    Series2 truncated(int T) const;
    Series2 renamed(std::pair<std::string, std::string> names) const;

    Series2 operator-() const;
    friend Series2 operator+(const Series2& a, const Series2& b);
    friend Series2 operator-(const Series2& a, const Series2& b);
    friend Series2 operator*(const Series2& a, const Series2& b);
    friend bool operator==(const Series2& a, const Series2& b);
    Series2 scaled(const FieldElement& s) const;
    Series2 pow(int e) const;
    std::string to_string() const;

private:
    size_t idx(int i, int j) const { return static_cast<size_t>((i + j) * (i + j + 1) / 2 + j); }
    void check(const Series2& b) const;
    FieldPtr f_;
    int T_ = 0;
    std::pair<std::string, std::string> names_{"y", "z"};
    std::vector<FieldElement> c_;
};

// Throws NonUnit.
Series2 series_invert_unit(const Series2& s);
// a(u, v) with u, v series without constant term.
Series2 series_substitute(const Series2& a, const Series2& u, const Series2& v);

struct Germ2 {
    Series2 first, second;
    int order() const { return first.order(); }
    bool fixes_origin() const { return first.constant_term().is_zero() && second.constant_term().is_zero(); }
    FieldElement m(int i, int j) const { return first.coeff(i, j); }
    FieldElement n(int i, int j) const { return second.coeff(i, j); }
    std::string to_string() const;
    friend bool operator==(const Germ2& a, const Germ2& b) { return a.first == b.first && a.second == b.second; }
};

Germ2 germ_identity(FieldPtr f, int T, std::pair<std::string, std::string> names = {"y", "z"});
// g o h. Throws OriginNotFixed unless h fixes the origin.
Germ2 germ_compose(const Germ2& g, const Germ2& h);
// Compositional inverse of a germ fixing the origin with invertible linear part.
Germ2 germ_inverse(const Germ2& g);

// Standard affine chart index c means coordinate c is set to 1; the local
// coordinates are the other two in increasing index order.
std::pair<std::string, std::string> chart_names(int chart);
// Germ of f at p in chart_p, centered at q = f(p) in chart_q. Throws
// IndeterminacyHit, ChartMismatch.
Germ2 germ_of_map_at(const RationalMapP2& f, const ProjPoint& p, const ProjPoint& q, int chart_p, int chart_q, int T);
// Uncentered expansion of f at p: constant terms are the chart_q coordinates of f(p).
Germ2 germ_of_map_uncentered(const RationalMapP2& f, const ProjPoint& p, int chart_p, int chart_q, int T);
// Germ of maps[last] o ... o maps[0] at p, evaluated factor by factor on series
// triples. An intermediate image in Ind of the next factor throws
// IndeterminacyHit naming the step.
Germ2 germ_of_chain(const std::vector<RationalMapP2>& maps, const ProjPoint& p, const ProjPoint& q, int chart_p,
                    int chart_q, int T);

using Residual = std::pair<std::string, FieldElement>;

struct LiftResult {
    bool liftable = false;
    std::optional<Germ2> lifted;
    // The vanishing conditions, with their values.
    std::vector<Residual> conditions;
};
// Lift through the blowup of Omega_d. The lifted germ has order T - d.
// Throws OrderTooLow if T < d + 1, GuardViolation if the conditions hold but
// beta_01 = 0.
LiftResult lift_through_omega_d(const Germ2& g, int d);
// With pi(eta, mu) = (eta mu^d, mu): g o pi truncated at order T - d, and
// pi o g~. A correct lift makes the two agree.
Germ2 blowdown_pullback(const Germ2& g, int d);
Germ2 blowdown_pushforward(const Germ2& lifted, int d);

enum class GluingKind { PhiN, Phi2Quadratic, CubicQuadratic, StabZeta2 };
struct GluingFamily {
    GluingKind kind;
    int n = 0;
    std::string id() const;
    int default_order() const;
};

struct GluingReport {
    std::string family;
    bool pass = false;
    std::vector<Residual> residuals;
    std::string to_string() const;
};

// Throws OrderTooLow, GuardViolation.
GluingReport check_gluing(const Germ2& g, const GluingFamily& family);

} // namespace crem
