#include "crem/homopoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "crem/error.hpp"
#include "crem/zpoly.hpp"

namespace crem {

bool glex_greater(const Mono& a, const Mono& b) {
    const int da = a[0] + a[1] + a[2], db = b[0] + b[1] + b[2];
    if (da != db) return da > db;
    return a > b;
}

namespace {

struct GlexDesc {
    bool operator()(const Mono& a, const Mono& b) const { return glex_greater(a, b); }
};

using TermMap = std::map<Mono, FieldElement, GlexDesc>;

int mono_degree(const Mono& m) { return m[0] + m[1] + m[2]; }

} // namespace

class HomoPolyBuilder {
public:
    // Terms must already be sorted, nonzero, and homogeneous.
    static HomoPoly raw(FieldPtr f, int arity, std::vector<HomoPoly::Term> terms) {
        HomoPoly p(std::move(f), arity);
        p.terms_ = std::move(terms);
        p.degree_ = p.terms_.empty() ? -1 : mono_degree(p.terms_.front().first);
        return p;
    }
};

HomoPoly::HomoPoly(FieldPtr f, int arity) : field_(std::move(f)), arity_(arity) {
    if (arity != 2 && arity != 3) fail(ErrorKind::InvalidArgument, "arity must be 2 or 3");
}

HomoPoly HomoPoly::from_terms(FieldPtr f, int arity, std::vector<Term> terms) {
    TermMap acc;
    for (auto& [m, c] : terms) {
        if (arity == 2 && m[2] != 0) fail(ErrorKind::InvalidArgument, "third exponent set on a binary form");
        for (int e : m)
            if (e < 0) fail(ErrorKind::InvalidArgument, "negative exponent");
        if (!c.field()->same_as(*f)) fail(ErrorKind::SpecMismatch, "coefficient field differs from polynomial field");
        auto it = acc.find(m);
        if (it == acc.end())
            acc.emplace(m, c);
        else
            it->second += c;
    }
    std::vector<Term> out;
    int deg = -1;
    for (auto& [m, c] : acc) {
        if (c.is_zero()) continue;
        if (deg < 0)
            deg = mono_degree(m);
        else if (mono_degree(m) != deg)
            fail(ErrorKind::DegreeMismatch, "inhomogeneous term set");
        out.emplace_back(m, c);
    }
    return HomoPolyBuilder::raw(std::move(f), arity, std::move(out));
}

HomoPoly HomoPoly::constant(FieldPtr f, int arity, const FieldElement& c) {
    return monomial(std::move(f), arity, Mono{0, 0, 0}, c);
}

HomoPoly HomoPoly::var(FieldPtr f, int arity, int i) {
    Mono m{0, 0, 0};
    m[i] = 1;
    FieldElement one(f, 1);
    return monomial(std::move(f), arity, m, one);
}

HomoPoly HomoPoly::monomial(FieldPtr f, int arity, const Mono& m, const FieldElement& c) {
    std::vector<Term> t;
    t.emplace_back(m, c);
    return from_terms(std::move(f), arity, std::move(t));
}

FieldElement HomoPoly::coeff(const Mono& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Mono& k) { return glex_greater(t.first, k); });
    if (it != terms_.end() && it->first == m) return it->second;
    return FieldElement(field_, 0);
}

int HomoPoly::min_exponent(int var) const {
    int r = -1;
    for (auto& t : terms_) r = r < 0 ? t.first[var] : std::min(r, t.first[var]);
    return std::max(r, 0);
}

int HomoPoly::max_exponent(int var) const {
    int r = 0;
    for (auto& t : terms_) r = std::max(r, t.first[var]);
    return r;
}

void HomoPoly::check_compat(const HomoPoly& b) const {
    if (arity_ != b.arity_) fail(ErrorKind::InvalidArgument, "arity mismatch");
    if (!field_->same_as(*b.field_)) fail(ErrorKind::SpecMismatch, "polynomials over different fields");
}

HomoPoly HomoPoly::operator-() const {
    HomoPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

HomoPoly operator+(const HomoPoly& a, const HomoPoly& b) {
    a.check_compat(b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree_ != b.degree_)
        fail(ErrorKind::DegreeMismatch,
             "adding degree " + std::to_string(a.degree_) + " and " + std::to_string(b.degree_));
    std::vector<HomoPoly::Term> out;
    out.reserve(a.terms_.size() + b.terms_.size());
    size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
        if (j == b.terms_.size() || (i < a.terms_.size() && glex_greater(a.terms_[i].first, b.terms_[j].first))) {
            out.push_back(a.terms_[i++]);
        } else if (i == a.terms_.size() || glex_greater(b.terms_[j].first, a.terms_[i].first)) {
            out.push_back(b.terms_[j++]);
        } else {
            FieldElement s = a.terms_[i].second + b.terms_[j].second;
            if (!s.is_zero()) out.emplace_back(a.terms_[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    return HomoPolyBuilder::raw(a.field_, a.arity_, std::move(out));
}

HomoPoly operator-(const HomoPoly& a, const HomoPoly& b) { return a + (-b); }

bool operator==(const HomoPoly& a, const HomoPoly& b) {
    if (a.arity_ != b.arity_ || a.terms_.size() != b.terms_.size()) return false;
    for (size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) return false;
    return true;
}

namespace {

// Rational arity-3 polynomials round-trip through dense integer form.
struct Scaled {
    ZPoly z;
    mpz_class denom;  // p = z / denom
};

Scaled to_z(const HomoPoly& p) {
    mpz_class l = 1;
    for (auto& [m, c] : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.coeffs()[0].get_den().get_mpz_t());
    Scaled s{ZPoly(p.degree()), l};
    for (auto& [m, c] : p.terms()) {
        const Rational& q = c.coeffs()[0];
        s.z.at(m[0], m[1]) = q.get_num() * (l / q.get_den());
    }
    return s;
}

HomoPoly from_z(const ZPoly& z, const Rational& scale, const FieldPtr& f) {
    std::vector<HomoPoly::Term> out;
    for (int a = z.deg; a >= 0; --a)
        for (int b = z.deg - a; b >= 0; --b) {
            const mpz_class& v = z.at(a, b);
            if (v == 0) continue;
            Rational q(v);
            q *= scale;
            out.emplace_back(Mono{a, b, z.deg - a - b}, FieldElement(f, q));
        }
    return HomoPolyBuilder::raw(f, 3, std::move(out));
}

bool use_dense_path(const HomoPoly& a, const HomoPoly& b) {
    return a.field()->is_rational() && a.arity() == 3 && a.size() * b.size() > 256;
}

} // namespace

HomoPoly operator*(const HomoPoly& a, const HomoPoly& b) {
    a.check_compat(b);
    if (a.is_zero() || b.is_zero()) return HomoPoly(a.field_, a.arity_);
    if (use_dense_path(a, b)) {
        Scaled sa = to_z(a), sb = to_z(b);
        ZPoly prod = zmul(sa.z, sb.z);
        return from_z(prod, Rational(mpz_class(1), sa.denom * sb.denom), a.field_);
    }
    const int D = a.degree_ + b.degree_;
    const size_t side = static_cast<size_t>(D + 1);
    const int d = a.field_->degree();
    std::vector<int> slot(side * side, -1);
    std::vector<std::vector<Rational>> acc;
    std::vector<Mono> monos;
    for (auto& [ma, ca] : a.terms_) {
        for (auto& [mb, cb] : b.terms_) {
            Mono m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]};
            size_t key = static_cast<size_t>(m[0]) * side + m[1];
            if (slot[key] < 0) {
                slot[key] = static_cast<int>(acc.size());
                acc.emplace_back(2 * d - 1);
                monos.push_back(m);
            }
            auto& v = acc[slot[key]];
            const auto& x = ca.coeffs();
            const auto& y = cb.coeffs();
            for (int i = 0; i < d; ++i) {
                if (x[i] == 0) continue;
                for (int j = 0; j < d; ++j)
                    if (y[j] != 0) v[i + j] += x[i] * y[j];
            }
        }
    }
    std::vector<HomoPoly::Term> out;
    for (size_t k = 0; k < acc.size(); ++k) {
        FieldElement c(a.field_, std::move(acc[k]));
        if (!c.is_zero()) out.emplace_back(monos[k], std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const HomoPoly::Term& s, const HomoPoly::Term& t) {
        return glex_greater(s.first, t.first);
    });
    return HomoPolyBuilder::raw(a.field_, a.arity_, std::move(out));
}

HomoPoly HomoPoly::scaled(const FieldElement& s) const {
    if (s.is_zero()) return HomoPoly(field_, arity_);
    HomoPoly r = *this;
    for (auto& t : r.terms_) t.second = t.second * s;
    return r;
}

HomoPoly HomoPoly::pow(unsigned e) const {
    HomoPoly r = constant(field_, arity_, FieldElement(field_, 1)), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

HomoPoly HomoPoly::normalized() const {
    if (is_zero()) return *this;
    const FieldElement& lc = terms_.front().second;
    if (lc.is_one()) return *this;
    return scaled(lc.inv());
}

HomoPoly HomoPoly::derivative(int var) const {
    std::vector<Term> out;
    for (auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        Mono n = m;
        n[var] -= 1;
        out.emplace_back(n, c.scaled(Rational(m[var])));
    }
    if (out.empty()) return HomoPoly(field_, arity_);
    return HomoPolyBuilder::raw(field_, arity_, std::move(out));
}

FieldElement HomoPoly::eval(const std::vector<FieldElement>& pt) const {
    if (static_cast<int>(pt.size()) != arity_) fail(ErrorKind::InvalidArgument, "point arity mismatch");
    FieldElement s(field_, 0);
    std::vector<std::vector<FieldElement>> pw(arity_);
    for (int i = 0; i < arity_; ++i) {
        pw[i].push_back(FieldElement(field_, 1));
        for (int k = 1; k <= degree_; ++k) pw[i].push_back(pw[i].back() * pt[i]);
    }
    for (auto& [m, c] : terms_) {
        FieldElement t = c;
        for (int i = 0; i < arity_; ++i)
            if (m[i]) t *= pw[i][m[i]];
        s += t;
    }
    return s;
}

HomoPoly HomoPoly::shifted(int var, int k) const {
    HomoPoly r = *this;
    for (auto& t : r.terms_) t.first[var] += k;
    if (!r.terms_.empty()) r.degree_ += k;
    return r;
}

std::string HomoPoly::to_string() const {
    static const char* names[] = {"x", "y", "z"};
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        std::string mono;
        for (int i = 0; i < arity_; ++i) {
            if (m[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[i];
            if (m[i] > 1) mono += "^" + std::to_string(m[i]);
        }
        if (c.is_rational()) {
            Rational q = c.coeffs()[0];
            os << (first ? (q < 0 ? "-" : "") : (q < 0 ? " - " : " + "));
            Rational aq = abs(q);
            if (mono.empty())
                os << aq.get_str();
            else if (aq == 1)
                os << mono;
            else
                os << aq.get_str() << "*" << mono;
        } else {
            os << (first ? "" : " + ") << c.to_string();
            if (!mono.empty()) os << "*" << mono;
        }
        first = false;
    }
    return os.str();
}

HomoPoly poly_add(const HomoPoly& p, const HomoPoly& q) { return p + q; }
HomoPoly poly_mul(const HomoPoly& p, const HomoPoly& q) { return p * q; }

HomoPoly poly_substitute(const HomoPoly& p, const HomoPoly& g0, const HomoPoly& g1, const HomoPoly& g2) {
    if (p.arity() != 3) fail(ErrorKind::InvalidArgument, "substitution needs a ternary form");
    const HomoPoly* g[3] = {&g0, &g1, &g2};
    int e = -1;
    for (auto* gi : g) {
        if (!gi->field()->same_as(*p.field())) fail(ErrorKind::SpecMismatch, "substitution across fields");
        if (gi->arity() != g0.arity()) fail(ErrorKind::InvalidArgument, "substituted forms differ in arity");
        if (gi->is_zero()) continue;
        if (e < 0)
            e = gi->degree();
        else if (gi->degree() != e)
            fail(ErrorKind::DegreeMismatch, "substituted forms have different degrees");
    }
    const FieldPtr& f = p.field();
    const int ar = g0.arity();
    std::vector<std::vector<HomoPoly>> pw(3);
    for (int i = 0; i < 3; ++i) {
        pw[i].push_back(HomoPoly::constant(f, ar, FieldElement(f, 1)));
        for (int k = 1; k <= p.max_exponent(i); ++k) pw[i].push_back(pw[i].back() * *g[i]);
    }
    HomoPoly r(f, ar);
    for (auto& [m, c] : p.terms()) {
        HomoPoly t = pw[0][m[0]];
        if (m[1]) t = t * pw[1][m[1]];
        if (m[2]) t = t * pw[2][m[2]];
        r = r + t.scaled(c);
    }
    return r;
}

HomoPoly poly_linear_substitute(const HomoPoly& p, const std::vector<std::vector<FieldElement>>& M) {
    const FieldPtr& f = p.field();
    std::vector<HomoPoly> L;
    for (int i = 0; i < 3; ++i) {
        std::vector<HomoPoly::Term> t;
        for (int j = 0; j < 3; ++j) {
            Mono m{0, 0, 0};
            m[j] = 1;
            t.emplace_back(m, M[i][j]);
        }
        L.push_back(HomoPoly::from_terms(f, 3, std::move(t)));
    }
    return poly_substitute(p, L[0], L[1], L[2]);
}

namespace {

HomoPoly divexact_generic(const HomoPoly& p, const HomoPoly& q, bool* ok) {
    *ok = true;
    const FieldPtr& f = p.field();
    if (p.is_zero()) return HomoPoly(f, p.arity());
    const Mono lm = q.leading().first;
    const FieldElement lc_inv = q.leading().second.inv();
    TermMap r;
    for (auto& [m, c] : p.terms()) r.emplace(m, c);
    std::vector<HomoPoly::Term> out;
    while (!r.empty()) {
        auto it = r.begin();
        Mono m = it->first;
        Mono d{m[0] - lm[0], m[1] - lm[1], m[2] - lm[2]};
        if (d[0] < 0 || d[1] < 0 || d[2] < 0) {
            *ok = false;
            return HomoPoly(f, p.arity());
        }
        FieldElement t = it->second * lc_inv;
        for (auto& [mq, cq] : q.terms()) {
            Mono k{d[0] + mq[0], d[1] + mq[1], d[2] + mq[2]};
            auto jt = r.find(k);
            FieldElement v = t * cq;
            if (jt == r.end()) {
                r.emplace(k, -v);
            } else {
                jt->second -= v;
                if (jt->second.is_zero()) r.erase(jt);
            }
        }
        out.emplace_back(d, std::move(t));
    }
    return HomoPoly::from_terms(f, p.arity(), std::move(out));
}

bool divexact_dense(const HomoPoly& p, const HomoPoly& q, HomoPoly* out) {
    Scaled sp = to_z(p), sq = to_z(q);
    mpz_class ct = sq.z.content();
    for (auto& v : sq.z.c)
        if (v != 0) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), ct.get_mpz_t());
    auto z = zdivexact(sp.z, sq.z);
    if (!z) return false;
    Rational scale(sq.denom, sp.denom * ct);
    scale.canonicalize();
    *out = from_z(*z, scale, p.field());
    return true;
}

} // namespace

HomoPoly poly_divexact(const HomoPoly& p, const HomoPoly& q) {
    p.check_compat(q);
    if (q.is_zero()) fail(ErrorKind::InvalidArgument, "division by zero polynomial");
    if (p.is_zero()) return p;
    if (q.degree() > p.degree()) fail(ErrorKind::InexactDivision, "divisor degree exceeds dividend degree");
    if (use_dense_path(p, q)) {
        HomoPoly r;
        if (!divexact_dense(p, q, &r)) fail(ErrorKind::InexactDivision, "polynomial does not divide");
        return r;
    }
    bool ok;
    HomoPoly r = divexact_generic(p, q, &ok);
    if (!ok) fail(ErrorKind::InexactDivision, "polynomial does not divide");
    return r;
}

bool poly_divides(const HomoPoly& q, const HomoPoly& p) {
    try {
        poly_divexact(p, q);
        return true;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::InexactDivision) return false;
        throw;
    }
}

// ---- subresultant gcd over K[s][t] ----
namespace {

using UK = std::vector<FieldElement>;

void uk_trim(UK& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

UK uk_add(const UK& a, const UK& b, const FieldPtr& f) {
    UK r(std::max(a.size(), b.size()), FieldElement(f, 0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    uk_trim(r);
    return r;
}

UK uk_neg(UK a) {
    for (auto& x : a) x = -x;
    return a;
}

UK uk_mul(const UK& a, const UK& b, const FieldPtr& f) {
    if (a.empty() || b.empty()) return {};
    UK r(a.size() + b.size() - 1, FieldElement(f, 0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    uk_trim(r);
    return r;
}

std::pair<UK, UK> uk_divmod(UK a, const UK& b, const FieldPtr& f) {
    if (a.size() < b.size()) return {{}, a};
    const int db = static_cast<int>(b.size()) - 1;
    FieldElement inv = b.back().inv();
    UK q(a.size() - b.size() + 1, FieldElement(f, 0));
    for (int k = static_cast<int>(a.size()) - 1; k >= db; --k) {
        if (a[k].is_zero()) continue;
        FieldElement t = a[k] * inv;
        q[k - db] = t;
        for (int j = 0; j <= db; ++j) a[k - db + j] -= t * b[j];
    }
    a.resize(db);
    uk_trim(a);
    uk_trim(q);
    return {q, a};
}

UK uk_divexact(const UK& a, const UK& b, const FieldPtr& f) {
    auto [q, r] = uk_divmod(a, b, f);
    if (!r.empty()) fail(ErrorKind::InexactDivision, "internal: inexact division in K[s]");
    return q;
}

UK uk_monic(UK a) {
    if (a.empty()) return a;
    FieldElement inv = a.back().inv();
    for (auto& x : a) x *= inv;
    return a;
}

UK uk_gcd(UK a, UK b, const FieldPtr& f) {
    while (!b.empty()) {
        UK r = uk_divmod(a, b, f).second;
        a = std::move(b);
        b = std::move(r);
    }
    return uk_monic(a);
}

UK uk_pow(const UK& a, int e, const FieldPtr& f) {
    UK r{FieldElement(f, 1)};
    for (int i = 0; i < e; ++i) r = uk_mul(r, a, f);
    return r;
}

using BK = std::vector<UK>;  // coefficients in K[s], indexed by t-degree

void bk_trim(BK& a) {
    while (!a.empty() && a.back().empty()) a.pop_back();
}

UK bk_content(const BK& a, const FieldPtr& f) {
    UK g;
    for (auto& c : a) {
        if (c.empty()) continue;
        g = g.empty() ? uk_monic(c) : uk_gcd(g, c, f);
        if (g.size() == 1) break;
    }
    return g;
}

BK bk_div_scalar(const BK& a, const UK& c, const FieldPtr& f) {
    BK r;
    for (auto& x : a) r.push_back(x.empty() ? UK{} : uk_divexact(x, c, f));
    return r;
}

BK bk_mul_scalar(const BK& a, const UK& c, const FieldPtr& f) {
    BK r;
    for (auto& x : a) r.push_back(uk_mul(x, c, f));
    bk_trim(r);
    return r;
}

BK bk_prem(const BK& A, const BK& B, const FieldPtr& f) {
    BK r = A;
    const int db = static_cast<int>(B.size()) - 1;
    const UK& lcB = B.back();
    int e = static_cast<int>(A.size()) - db;
    while (!r.empty() && static_cast<int>(r.size()) - 1 >= db) {
        UK lr = r.back();
        const int k = static_cast<int>(r.size()) - 1 - db;
        BK nr(r.size() - 1);
        for (size_t i = 0; i + 1 < r.size(); ++i) nr[i] = uk_mul(lcB, r[i], f);
        for (int j = 0; j < db; ++j) nr[k + j] = uk_add(nr[k + j], uk_neg(uk_mul(lr, B[j], f)), f);
        bk_trim(nr);
        r = std::move(nr);
        --e;
    }
    if (e > 0 && !r.empty()) r = bk_mul_scalar(r, uk_pow(lcB, e, f), f);
    return r;
}

BK bk_primitive(const BK& a, const FieldPtr& f) {
    UK c = bk_content(a, f);
    return bk_div_scalar(a, c, f);
}

BK bk_gcd(BK A, BK B, const FieldPtr& f) {
    bk_trim(A);
    bk_trim(B);
    if (A.empty()) return B;
    if (B.empty()) return A;
    if (B.size() > A.size()) std::swap(A, B);
    UK a = bk_content(A, f), b = bk_content(B, f);
    UK d = uk_gcd(a, b, f);
    A = bk_div_scalar(A, a, f);
    B = bk_div_scalar(B, b, f);
    UK g{FieldElement(f, 1)}, h{FieldElement(f, 1)};
    while (true) {
        const int delta = static_cast<int>(A.size()) - static_cast<int>(B.size());
        BK R = bk_prem(A, B, f);
        if (R.empty()) return bk_mul_scalar(bk_primitive(B, f), d, f);
        if (R.size() == 1) return BK{d};
        A = B;
        B = bk_div_scalar(R, uk_mul(g, uk_pow(h, delta, f), f), f);
        g = A.back();
        if (delta == 0) {
        } else if (delta == 1) {
            h = g;
        } else {
            h = uk_divexact(uk_pow(g, delta, f), uk_pow(h, delta - 1, f), f);
        }
    }
}

} // namespace

HomoPoly poly_gcd_subresultant(const HomoPoly& p, const HomoPoly& q) {
    p.check_compat(q);
    const FieldPtr& f = p.field();
    if (p.is_zero()) return q.normalized();
    if (q.is_zero()) return p.normalized();
    const int ar = p.arity();
    // Dehomogenization variable: the last one present in both.
    int v = ar - 1;
    for (int i = ar - 1; i >= 0; --i)
        if (p.max_exponent(i) > 0 && q.max_exponent(i) > 0) {
            v = i;
            break;
        }
    const int vpow = std::min(p.min_exponent(v), q.min_exponent(v));
    std::vector<int> rest;
    for (int i = 0; i < ar; ++i)
        if (i != v) rest.push_back(i);
    std::vector<HomoPoly::Term> out;
    if (ar == 2) {
        const int t = rest[0];
        auto to_uk = [&](const HomoPoly& h) {
            UK u(h.max_exponent(t) + 1, FieldElement(f, 0));
            for (auto& [m, c] : h.terms()) u[m[t]] += c;
            uk_trim(u);
            return u;
        };
        UK g = uk_gcd(to_uk(p), to_uk(q), f);
        const int e = static_cast<int>(g.size()) - 1;
        for (int i = 0; i <= e; ++i) {
            if (g[i].is_zero()) continue;
            Mono m{0, 0, 0};
            m[t] = i;
            m[v] = e - i + vpow;
            out.emplace_back(m, g[i]);
        }
    } else {
        const int t = rest[0], s = rest[1];
        auto to_bk = [&](const HomoPoly& h) {
            BK b(h.max_exponent(t) + 1);
            for (auto& [m, c] : h.terms()) {
                UK& u = b[m[t]];
                if (static_cast<int>(u.size()) <= m[s]) u.resize(m[s] + 1, FieldElement(f, 0));
                u[m[s]] += c;
            }
            for (auto& u : b) uk_trim(u);
            bk_trim(b);
            return b;
        };
        BK g = bk_gcd(to_bk(p), to_bk(q), f);
        int e = 0;
        for (size_t i = 0; i < g.size(); ++i)
            if (!g[i].empty()) e = std::max(e, static_cast<int>(i + g[i].size() - 1));
        for (size_t i = 0; i < g.size(); ++i)
            for (size_t j = 0; j < g[i].size(); ++j) {
                if (g[i][j].is_zero()) continue;
                Mono m{0, 0, 0};
                m[t] = static_cast<int>(i);
                m[s] = static_cast<int>(j);
                m[v] = e - static_cast<int>(i + j) + vpow;
                out.emplace_back(m, g[i][j]);
            }
    }
    return HomoPoly::from_terms(f, ar, std::move(out)).normalized();
}

HomoPoly poly_gcd_modular(const std::vector<HomoPoly>& ps) {
    if (ps.empty()) fail(ErrorKind::InvalidArgument, "gcd of an empty list");
    const FieldPtr& f = ps[0].field();
    if (!f->is_rational() || ps[0].arity() != 3)
        fail(ErrorKind::InvalidArgument, "modular gcd needs ternary forms over Q");
    std::vector<ZPoly> zs;
    for (auto& p : ps) zs.push_back(p.is_zero() ? ZPoly() : to_z(p).z);
    ZGcdResult r = zgcd(zs);
    if (r.g.deg < 0) return HomoPoly(f, 3);
    return from_z(r.g, 1, f).normalized();
}

HomoPoly poly_gcd(const HomoPoly& p, const HomoPoly& q) { return poly_gcd(std::vector<HomoPoly>{p, q}); }

HomoPoly poly_gcd(const std::vector<HomoPoly>& ps) {
    if (ps.empty()) fail(ErrorKind::InvalidArgument, "gcd of an empty list");
    for (auto& p : ps) ps[0].check_compat(p);
    if (ps[0].field()->is_rational() && ps[0].arity() == 3) return poly_gcd_modular(ps);
    HomoPoly g(ps[0].field(), ps[0].arity());
    for (auto& p : ps) {
        g = poly_gcd_subresultant(g, p);
        if (g.is_constant()) break;
    }
    return g;
}

GcdCofactors poly_gcd_cofactors(const std::vector<HomoPoly>& ps) {
    if (ps.empty()) fail(ErrorKind::InvalidArgument, "gcd of an empty list");
    const FieldPtr& f = ps[0].field();
    GcdCofactors out;
    if (f->is_rational() && ps[0].arity() == 3) {
        std::vector<ZPoly> zs;
        std::vector<mpz_class> den;
        for (auto& p : ps) {
            ps[0].check_compat(p);
            if (p.is_zero()) {
                zs.emplace_back();
                den.emplace_back(1);
            } else {
                Scaled s = to_z(p);
                zs.push_back(std::move(s.z));
                den.push_back(s.denom);
            }
        }
        ZGcdResult r = zgcd(zs);
        if (r.g.deg < 0) {
            out.g = HomoPoly(f, 3);
            for (size_t i = 0; i < ps.size(); ++i) out.cofactors.emplace_back(f, 3);
            return out;
        }
        // Normalize g to leading coefficient 1 and move the scale to the cofactors.
        HomoPoly graw = from_z(r.g, 1, f);
        Rational lc = graw.leading().second.coeffs()[0];
        out.g = graw.scaled(FieldElement(f, 1 / lc));
        for (size_t i = 0; i < ps.size(); ++i) {
            if (ps[i].is_zero()) {
                out.cofactors.emplace_back(f, 3);
                continue;
            }
            out.cofactors.push_back(from_z(r.cofactors[i], Rational(lc / den[i]), f));
        }
        return out;
    }
    out.g = poly_gcd(ps);
    for (auto& p : ps) out.cofactors.push_back(out.g.is_zero() ? HomoPoly(f, p.arity()) : poly_divexact(p, out.g));
    return out;
}

// ---- parsing ----
namespace {

using SparseKey = std::vector<int>;
using Sparse = std::map<SparseKey, FieldElement>;

class Parser {
public:
    Parser(const std::string& s, FieldPtr f, std::vector<std::string> vars)
        : s_(s), f_(std::move(f)), vars_(std::move(vars)) {}

    Sparse parse() {
        Sparse r = expr();
        skip();
        if (pos_ != s_.size()) error("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    [[noreturn]] void error(const std::string& msg) {
        fail(ErrorKind::ParseError, msg + " at column " + std::to_string(pos_ + 1) + " in \"" + s_ + "\"");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    Sparse constant(const FieldElement& c) {
        Sparse r;
        if (!c.is_zero()) r.emplace(SparseKey(vars_.size(), 0), c);
        return r;
    }
    static void add_into(Sparse& a, const Sparse& b, bool neg) {
        for (auto& [k, v] : b) {
            auto it = a.find(k);
            FieldElement w = neg ? -v : v;
            if (it == a.end())
                a.emplace(k, w);
            else {
                it->second += w;
                if (it->second.is_zero()) a.erase(it);
            }
        }
    }
    Sparse mul(const Sparse& a, const Sparse& b) {
        Sparse r;
        for (auto& [ka, va] : a)
            for (auto& [kb, vb] : b) {
                SparseKey k(ka.size());
                for (size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
                Sparse t;
                t.emplace(k, va * vb);
                add_into(r, t, false);
            }
        return r;
    }
    Sparse expr() {
        Sparse r;
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        add_into(r, term(), neg);
        while (true) {
            if (eat('+'))
                add_into(r, term(), false);
            else if (eat('-'))
                add_into(r, term(), true);
            else
                break;
        }
        return r;
    }
    Sparse term() {
        Sparse r = factor();
        while (true) {
            if (eat('*')) {
                r = mul(r, factor());
            } else if (eat('/')) {
                Sparse d = factor();
                if (d.size() != 1 || d.begin()->first != SparseKey(vars_.size(), 0))
                    error("division only by nonzero constants");
                r = mul(r, constant(d.begin()->second.inv()));
            } else {
                break;
            }
        }
        return r;
    }
    Sparse factor() {
        Sparse b = primary();
        if (eat('^')) {
            skip();
            size_t st = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (st == pos_) error("expected exponent");
            int e = std::stoi(s_.substr(st, pos_ - st));
            Sparse r = constant(FieldElement(f_, 1));
            for (int i = 0; i < e; ++i) r = mul(r, b);
            return r;
        }
        return b;
    }
    Rational rational_literal() {
        skip();
        size_t st = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        std::string tok = s_.substr(st, pos_ - st);
        if (tok.empty() || tok == "-" || tok == "+") error("expected rational literal");
        if (tok[0] == '+') tok = tok.substr(1);
        Rational q;
        if (q.set_str(tok, 10) != 0) error("bad rational literal '" + tok + "'");
        q.canonicalize();
        return q;
    }
    Sparse primary() {
        skip();
        if (pos_ >= s_.size()) error("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Sparse r = expr();
            if (!eat(')')) error("expected ')'");
            return r;
        }
        if (c == '[') {
            ++pos_;
            std::vector<Rational> v;
            v.push_back(rational_literal());
            while (eat(',')) v.push_back(rational_literal());
            if (!eat(']')) error("expected ']'");
            if (static_cast<int>(v.size()) > f_->degree()) error("residue vector longer than field degree");
            return constant(FieldElement(f_, std::move(v)));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t st = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            Rational q(mpz_class(s_.substr(st, pos_ - st), 10));
            return constant(FieldElement(f_, q));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t st = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string id = s_.substr(st, pos_ - st);
            for (size_t i = 0; i < vars_.size(); ++i)
                if (vars_[i] == id) {
                    SparseKey k(vars_.size(), 0);
                    k[i] = 1;
                    Sparse r;
                    r.emplace(k, FieldElement(f_, 1));
                    return r;
                }
            if (id == f_->gen_name() && !f_->is_rational()) return constant(FieldElement::gen(f_));
            pos_ = st;
            error("unknown identifier '" + id + "'");
        }
        error("unexpected character '" + std::string(1, c) + "'");
    }

    const std::string& s_;
    FieldPtr f_;
    std::vector<std::string> vars_;
    size_t pos_ = 0;
};

} // namespace

HomoPoly parse_homopoly(const std::string& text, FieldPtr f, int arity, const std::vector<std::string>& vars) {
    if (static_cast<int>(vars.size()) < arity) fail(ErrorKind::InvalidArgument, "not enough variable names");
    std::vector<std::string> names(vars.begin(), vars.begin() + arity);
    Parser ps(text, f, names);
    Sparse sp = ps.parse();
    std::vector<HomoPoly::Term> terms;
    int deg = -1;
    for (auto& [k, v] : sp) {
        Mono m{0, 0, 0};
        int d = 0;
        for (int i = 0; i < arity; ++i) {
            m[i] = k[i];
            d += k[i];
        }
        if (deg < 0)
            deg = d;
        else if (d != deg)
            fail(ErrorKind::ParseError, "polynomial is not homogeneous: \"" + text + "\"");
        terms.emplace_back(m, v);
    }
    return HomoPoly::from_terms(f, arity, std::move(terms));
}

UniPoly parse_unipoly(const std::string& text, const std::string& var) {
    Parser ps(text, FieldSpec::rationals(), {var});
    Sparse sp = ps.parse();
    std::vector<Rational> c;
    for (auto& [k, v] : sp) {
        if (static_cast<int>(c.size()) <= k[0]) c.resize(k[0] + 1);
        c[k[0]] += v.coeffs()[0];
    }
    return UniPoly(std::move(c));
}

} // namespace crem
