#include "crem/cremona.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "crem/error.hpp"

namespace crem {

ProjPoint ProjPoint::make(const FieldElement& a, const FieldElement& b, const FieldElement& c) {
    if (!a.field()->same_as(*b.field()) || !a.field()->same_as(*c.field()))
        fail(ErrorKind::SpecMismatch, "point coordinates over different fields");
    ProjPoint p;
    p.c_ = {a, b, c};
    for (int i = 0; i < 3; ++i) {
        if (p.c_[i].is_zero()) continue;
        FieldElement s = p.c_[i].inv();
        for (auto& x : p.c_) x = x * s;
        return p;
    }
    fail(ErrorKind::InvalidArgument, "(0 : 0 : 0) is not a point");
}

ProjPoint ProjPoint::make(FieldPtr f, long a, long b, long c) {
    return make(FieldElement(f, a), FieldElement(f, b), FieldElement(f, c));
}

std::string ProjPoint::to_string() const {
    return "(" + c_[0].to_string() + " : " + c_[1].to_string() + " : " + c_[2].to_string() + ")";
}

Mat3 mat_identity(FieldPtr f) {
    return mat_from_ints(std::move(f), {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}});
}

Mat3 mat_from_ints(FieldPtr f, const std::array<std::array<long, 3>, 3>& a) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = FieldElement(f, a[i][j]);
    return m;
}

Mat3 mat_mul(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            FieldElement s = a[i][0] * b[0][j];
            s += a[i][1] * b[1][j];
            s += a[i][2] * b[2][j];
            r[i][j] = s;
        }
    return r;
}

FieldElement mat_det(const Mat3& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

Mat3 mat_inverse(const Mat3& a) {
    FieldElement d = mat_det(a);
    if (d.is_zero()) fail(ErrorKind::SingularMatrix, "matrix is singular");
    FieldElement di = d.inv();
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            // Adjugate entry (i, j) is the (j, i) cofactor.
            const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            r[i][j] = (a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0]) * di;
        }
    return r;
}

std::array<FieldElement, 3> mat_apply(const Mat3& a, const std::array<FieldElement, 3>& v) {
    std::array<FieldElement, 3> r;
    for (int i = 0; i < 3; ++i) {
        FieldElement s = a[i][0] * v[0];
        s += a[i][1] * v[1];
        s += a[i][2] * v[2];
        r[i] = s;
    }
    return r;
}

RationalMapP2 RationalMapP2::make(const HomoPoly& f0, const HomoPoly& f1, const HomoPoly& f2) {
    f0.check_compat(f1);
    f0.check_compat(f2);
    if (f0.arity() != 3) fail(ErrorKind::InvalidArgument, "map components must be ternary forms");
    if (f0.is_zero() && f1.is_zero() && f2.is_zero()) fail(ErrorKind::ZeroMap, "all three components vanish");
    int d = -1;
    for (auto* p : {&f0, &f1, &f2}) {
        if (p->is_zero()) continue;
        if (d < 0)
            d = p->degree();
        else if (p->degree() != d)
            fail(ErrorKind::DegreeMismatch, "map components have different degrees");
    }
    GcdCofactors g = poly_gcd_cofactors({f0, f1, f2});
    RationalMapP2 m;
    for (int i = 0; i < 3; ++i) m.c_[i] = g.cofactors[i];
    // Scale by the coefficient of the largest monomial, first component first.
    const Mono* best = nullptr;
    int owner = -1;
    for (int i = 0; i < 3; ++i) {
        if (m.c_[i].is_zero()) continue;
        const Mono& lm = m.c_[i].leading().first;
        if (!best || glex_greater(lm, *best)) {
            best = &lm;
            owner = i;
        }
    }
    FieldElement s = m.c_[owner].leading().second;
    if (!s.is_one()) {
        FieldElement si = s.inv();
        for (auto& c : m.c_) c = c.scaled(si);
    }
    return m;
}

RationalMapP2 RationalMapP2::parse(const std::array<std::string, 3>& text, FieldPtr f) {
    return make(parse_homopoly(text[0], f), parse_homopoly(text[1], f), parse_homopoly(text[2], f));
}

RationalMapP2 RationalMapP2::linear(const Mat3& m) {
    const FieldPtr& f = m[0][0].field();
    std::array<HomoPoly, 3> c;
    for (int i = 0; i < 3; ++i) {
        std::vector<HomoPoly::Term> t;
        for (int j = 0; j < 3; ++j) {
            Mono mo{0, 0, 0};
            mo[j] = 1;
            t.emplace_back(mo, m[i][j]);
        }
        c[i] = HomoPoly::from_terms(f, 3, std::move(t));
    }
    return make(c[0], c[1], c[2]);
}

RationalMapP2 RationalMapP2::identity(FieldPtr f) { return linear(mat_identity(std::move(f))); }

int RationalMapP2::degree() const {
    for (auto& c : c_)
        if (!c.is_zero()) return c.degree();
    return -1;
}

std::string RationalMapP2::to_string() const {
    return "(" + c_[0].to_string() + " : " + c_[1].to_string() + " : " + c_[2].to_string() + ")";
}

RationalMapP2 map_compose(const RationalMapP2& f, const RationalMapP2& g) {
    if (!f.field()->same_as(*g.field())) fail(ErrorKind::SpecMismatch, "composing maps over different fields");
    const FieldPtr& K = f.field();
    // Memoized products g^m over the monomials of f, shared across components.
    std::map<Mono, HomoPoly> memo;
    memo.emplace(Mono{0, 0, 0}, HomoPoly::constant(K, 3, FieldElement(K, 1)));
    std::function<const HomoPoly&(const Mono&)> prod = [&](const Mono& m) -> const HomoPoly& {
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
        int i = 0;
        while (m[i] == 0) ++i;
        Mono rest = m;
        rest[i] -= 1;
        HomoPoly v = prod(rest) * g[i];
        return memo.emplace(m, std::move(v)).first->second;
    };
    std::array<HomoPoly, 3> c;
    for (int k = 0; k < 3; ++k) {
        HomoPoly acc(K, 3);
        for (auto& [m, coef] : f[k].terms()) acc = acc + prod(m).scaled(coef);
        c[k] = std::move(acc);
    }
    return RationalMapP2::make(c[0], c[1], c[2]);
}

RationalMapP2 map_compose_linear_right(const RationalMapP2& f, const Mat3& m) {
    std::vector<std::vector<FieldElement>> M(3);
    for (int i = 0; i < 3; ++i) M[i].assign(m[i].begin(), m[i].end());
    return RationalMapP2::make(poly_linear_substitute(f[0], M), poly_linear_substitute(f[1], M),
                               poly_linear_substitute(f[2], M));
}

RationalMapP2 map_compose_linear_left(const Mat3& m, const RationalMapP2& f) {
    std::array<HomoPoly, 3> c;
    for (int i = 0; i < 3; ++i) {
        HomoPoly acc(f.field(), 3);
        for (int j = 0; j < 3; ++j)
            if (!m[i][j].is_zero()) acc = acc + f[j].scaled(m[i][j]);
        c[i] = std::move(acc);
    }
    return RationalMapP2::make(c[0], c[1], c[2]);
}

ProjPoint map_apply(const RationalMapP2& f, const ProjPoint& p) {
    if (!f.field()->same_as(*p.field())) fail(ErrorKind::SpecMismatch, "point and map over different fields");
    std::vector<FieldElement> pt(p.coords().begin(), p.coords().end());
    FieldElement a = f[0].eval(pt), b = f[1].eval(pt), c = f[2].eval(pt);
    if (a.is_zero() && b.is_zero() && c.is_zero())
        fail(ErrorKind::IndeterminacyHit, p.to_string() + " is an indeterminacy point");
    return ProjPoint::make(a, b, c);
}

bool in_indeterminacy(const RationalMapP2& f, const ProjPoint& p) {
    std::vector<FieldElement> pt(p.coords().begin(), p.coords().end());
    for (auto& c : f.components())
        if (!c.eval(pt).is_zero()) return false;
    return true;
}

HomoPoly jacobian_det(const RationalMapP2& f) {
    HomoPoly J[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) J[i][j] = f[i].derivative(j);
    auto minor = [&](int r0, int r1, int c0, int c1) { return J[r0][c0] * J[r1][c1] - J[r0][c1] * J[r1][c0]; };
    return J[0][0] * minor(1, 2, 1, 2) - J[0][1] * minor(1, 2, 0, 2) + J[0][2] * minor(1, 2, 0, 1);
}

bool proj_equal(const RationalMapP2& f, const RationalMapP2& g) {
    if (!f.field()->same_as(*g.field())) fail(ErrorKind::SpecMismatch, "comparing maps over different fields");
    if (f.degree() != g.degree()) return false;
    for (int i = 0; i < 3; ++i)
        if (f[i].is_zero() != g[i].is_zero()) return false;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (f[i] * g[j] != f[j] * g[i]) return false;
    return true;
}

RationalMapP2 map_conjugate(const RationalMapP2& f, const Mat3& m) {
    Mat3 mi = mat_inverse(m);
    return map_compose_linear_left(m, map_compose_linear_right(f, mi));
}

std::vector<int> degree_sequence(const RationalMapP2& f, int n) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "degree_sequence needs N >= 1");
    std::vector<int> seq{f.degree()};
    RationalMapP2 g = f;
    for (int k = 2; k <= n; ++k) {
        g = map_compose(f, g);
        seq.push_back(g.degree());
    }
    return seq;
}

std::string growth_name(GrowthTag t) {
    switch (t) {
    case GrowthTag::Bounded: return "Bounded";
    case GrowthTag::Linear: return "Linear";
    case GrowthTag::Quadratic: return "Quadratic";
    case GrowthTag::Exponential: return "Exponential";
    }
    return "?";
}

GrowthClass classify_growth(const std::vector<int>& seq) {
    const size_t n = seq.size();
    if (n < 4) fail(ErrorKind::InvalidArgument, "classify_growth needs at least 4 terms");
    auto join = [](const std::vector<long>& v) {
        std::string s;
        for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s;
    };
    std::vector<long> d1, d2;
    for (size_t i = 1; i < n; ++i) d1.push_back(seq[i] - seq[i - 1]);
    for (size_t i = 1; i < d1.size(); ++i) d2.push_back(d1[i] - d1[i - 1]);
    Rational ratio(seq[n - 1], seq[n - 2]);
    ratio.canonicalize();
    auto tail_const = [](const std::vector<long>& v, size_t w) {
        if (v.size() < w) return false;
        for (size_t i = v.size() - w + 1; i < v.size(); ++i)
            if (v[i] != v[v.size() - w]) return false;
        return true;
    };
    if (seq[n - 1] == seq[n - 2] && seq[n - 2] == seq[n - 3])
        return {GrowthTag::Bounded, "last three degrees equal " + std::to_string(seq[n - 1]), ratio};
    if (tail_const(d1, 3) && d1.back() > 0)
        return {GrowthTag::Linear, "first differences " + join(d1), ratio};
    if (tail_const(d2, 3) && d2.back() > 0)
        return {GrowthTag::Quadratic, "second differences " + join(d2), ratio};
    // Ratios of the last three consecutive pairs at least 1.05 = 21/20.
    bool expo = true;
    for (size_t i = n - 3; i < n; ++i)
        if (20L * seq[i] < 21L * seq[i - 1]) expo = false;
    if (expo) return {GrowthTag::Exponential, "last ratio " + ratio.get_str(), ratio};
    fail(ErrorKind::Inconclusive, "degree sequence matches no growth pattern; increase N");
}

RationalMapP2 builtin_phi(int n, FieldPtr f) {
    if (n < 2) fail(ErrorKind::UnsupportedN, "Phi_n needs n >= 2");
    FieldElement one(f, 1);
    auto mono = [&](int a, int b, int c) { return HomoPoly::monomial(f, 3, Mono{a, b, c}, one); };
    return RationalMapP2::make(mono(1, 0, n - 1) + mono(0, n, 0), mono(0, 1, n - 1), mono(0, 0, n));
}

RationalMapP2 builtin_cubic(FieldPtr f) {
    return RationalMapP2::parse({"y^2*z", "x*(x*z+y^2)", "y*(x*z+y^2)"}, std::move(f));
}

RationalMapP2 builtin_cubic_inverse(FieldPtr f) {
    return RationalMapP2::parse({"y*(z^2-x*y)", "z*(z^2-x*y)", "x*z^2"}, std::move(f));
}

RationalMapP2 builtin_henon(const std::vector<Rational>& p, const Rational& delta) {
    const int d = static_cast<int>(p.size()) - 1;
    if (d < 2 || p.back() == 0) fail(ErrorKind::InvalidArgument, "Henon map needs deg P >= 2");
    if (delta == 0) fail(ErrorKind::InvalidArgument, "Henon map needs delta != 0");
    auto Q = FieldSpec::rationals();
    std::vector<HomoPoly::Term> t1;
    for (int i = 0; i <= d; ++i)
        if (p[i] != 0) t1.emplace_back(Mono{0, i, d - i}, FieldElement(Q, p[i]));
    t1.emplace_back(Mono{1, 0, d - 1}, FieldElement(Q, Rational(-delta)));
    FieldElement one(Q, 1);
    return RationalMapP2::make(HomoPoly::monomial(Q, 3, Mono{0, 1, d - 1}, one), HomoPoly::from_terms(Q, 3, t1),
                               HomoPoly::monomial(Q, 3, Mono{0, 0, d}, one));
}

RationalMapP2 builtin_example12_linear() {
    return RationalMapP2::parse({"x*y", "y*z", "z^2"}, FieldSpec::rationals());
}

RationalMapP2 builtin_example12_quadratic(const Rational& eps) {
    auto Q = FieldSpec::rationals();
    const std::string e = "(" + eps.get_str() + ")";
    return RationalMapP2::parse({"(y+z)*(y+z-" + e + "*z)", "x*(y-" + e + "*z)", "(y+z)*z"}, Q);
}

RationalMapP2 builtin_bedford_kim(int n, const FieldElement& c, const std::vector<FieldElement>& a) {
    if (n < 3) fail(ErrorKind::UnsupportedN, "the family needs n >= 3");
    const FieldPtr& f = c.field();
    FieldElement one(f, 1);
    std::vector<HomoPoly::Term> t{{Mono{n, 0, 0}, one}, {Mono{0, 1, n - 1}, -one}, {Mono{0, 0, n}, c}};
    size_t idx = 0;
    for (int l = 2; l <= n - 3; l += 2, ++idx) {
        if (idx >= a.size()) break;
        t.emplace_back(Mono{l + 1, 0, n - l - 1}, a[idx]);
    }
    if (idx < a.size()) fail(ErrorKind::InvalidArgument, "too many a_l coefficients for this n");
    return RationalMapP2::make(HomoPoly::monomial(f, 3, Mono{1, 0, n - 1}, one),
                               HomoPoly::monomial(f, 3, Mono{0, 0, n}, one), HomoPoly::from_terms(f, 3, t));
}

} // namespace crem
