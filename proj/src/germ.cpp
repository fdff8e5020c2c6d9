#include "crem/germ.hpp"

#include <sstream>

#include "crem/error.hpp"

namespace crem {

Series2::Series2(FieldPtr f, int T, std::pair<std::string, std::string> names)
    : f_(std::move(f)), T_(T), names_(std::move(names)) {
    if (T < 0) fail(ErrorKind::InvalidArgument, "negative truncation order");
    c_.assign(static_cast<size_t>((T + 1) * (T + 2) / 2), FieldElement(f_, 0));
}

Series2 Series2::constant(FieldPtr f, int T, const FieldElement& c, std::pair<std::string, std::string> names) {
    Series2 s(std::move(f), T, std::move(names));
    s.set(0, 0, c);
    return s;
}

Series2 Series2::var(FieldPtr f, int T, int v, std::pair<std::string, std::string> names) {
    Series2 s(f, T, std::move(names));
    if (T >= 1) s.set(v == 0 ? 1 : 0, v == 0 ? 0 : 1, FieldElement(f, 1));
    return s;
}

Series2 Series2::from_triples(FieldPtr f, int T, const std::vector<std::tuple<int, int, FieldElement>>& t,
                              std::pair<std::string, std::string> names) {
    Series2 s(std::move(f), T, std::move(names));
    for (auto& [i, j, c] : t) {
        if (i < 0 || j < 0) fail(ErrorKind::InvalidArgument, "negative exponent in series literal");
        if (i + j > T) continue;
        s.set(i, j, s.coeff(i, j) + c);
    }
    return s;
}

FieldElement Series2::coeff(int i, int j) const {
    if (i < 0 || j < 0 || i + j > T_) return FieldElement(f_, 0);
    return c_[idx(i, j)];
}

void Series2::set(int i, int j, const FieldElement& c) {
    if (i < 0 || j < 0 || i + j > T_) fail(ErrorKind::InvalidArgument, "exponent outside truncation range");
    if (!c.field()->same_as(*f_)) fail(ErrorKind::SpecMismatch, "series coefficient over another field");
    c_[idx(i, j)] = c;
}

std::vector<std::tuple<int, int, FieldElement>> Series2::terms() const {
    std::vector<std::tuple<int, int, FieldElement>> out;
    for (int t = 0; t <= T_; ++t)
        for (int j = 0; j <= t; ++j)
            if (!c_[idx(t - j, j)].is_zero()) out.emplace_back(t - j, j, c_[idx(t - j, j)]);
    return out;
}

bool Series2::is_zero() const {
    for (auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

Series2 Series2::truncated(int T) const {
    if (T > T_) fail(ErrorKind::OrderTooLow, "cannot raise truncation order");
    Series2 r(f_, T, names_);
    for (int t = 0; t <= T; ++t)
        for (int j = 0; j <= t; ++j) r.c_[r.idx(t - j, j)] = c_[idx(t - j, j)];
    return r;
}

Series2 Series2::renamed(std::pair<std::string, std::string> names) const {
    Series2 r = *this;
    r.names_ = std::move(names);
    return r;
}

void Series2::check(const Series2& b) const {
    if (T_ != b.T_) fail(ErrorKind::InvalidArgument, "series with different truncation orders");
    if (!f_->same_as(*b.f_)) fail(ErrorKind::SpecMismatch, "series over different fields");
}

Series2 Series2::operator-() const {
    Series2 r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Series2 operator+(const Series2& a, const Series2& b) {
    a.check(b);
    Series2 r = a;
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
}

Series2 operator-(const Series2& a, const Series2& b) { return a + (-b); }

Series2 operator*(const Series2& a, const Series2& b) {
    a.check(b);
    const int T = a.T_;
    Series2 r(a.f_, T, a.names_);
    for (int s = 0; s <= T; ++s)
        for (int j1 = 0; j1 <= s; ++j1) {
            const FieldElement& x = a.c_[a.idx(s - j1, j1)];
            if (x.is_zero()) continue;
            for (int t = 0; s + t <= T; ++t)
                for (int j2 = 0; j2 <= t; ++j2) {
                    const FieldElement& y = b.c_[b.idx(t - j2, j2)];
                    if (y.is_zero()) continue;
                    r.c_[r.idx(s - j1 + t - j2, j1 + j2)] += x * y;
                }
        }
    return r;
}

bool operator==(const Series2& a, const Series2& b) { return a.T_ == b.T_ && a.c_ == b.c_; }

Series2 Series2::scaled(const FieldElement& s) const {
    Series2 r = *this;
    for (auto& c : r.c_) c = c * s;
    return r;
}

Series2 Series2::pow(int e) const {
    Series2 r = constant(f_, T_, FieldElement(f_, 1), names_);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

std::string Series2::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (auto& [i, j, c] : terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")";
        if (i) os << "*" << names_.first << (i > 1 ? "^" + std::to_string(i) : "");
        if (j) os << "*" << names_.second << (j > 1 ? "^" + std::to_string(j) : "");
    }
    if (first) os << "0";
    os << " + O(" << T_ + 1 << ")";
    return os.str();
}

Series2 series_invert_unit(const Series2& s) {
    const FieldElement c = s.constant_term();
    if (c.is_zero()) fail(ErrorKind::NonUnit, "series has zero constant term");
    const FieldElement ci = c.inv();
    // 1/s = c^-1 sum (-u)^k with u = s/c - 1.
    Series2 u = s.scaled(ci) - Series2::constant(s.field(), s.order(), FieldElement(s.field(), 1), s.names());
    Series2 mu = -u;
    Series2 r = Series2::constant(s.field(), s.order(), FieldElement(s.field(), 1), s.names());
    Series2 p = r;
    for (int k = 1; k <= s.order(); ++k) {
        p = p * mu;
        r = r + p;
    }
    return r.scaled(ci);
}

Series2 series_substitute(const Series2& a, const Series2& u, const Series2& v) {
    if (!u.constant_term().is_zero() || !v.constant_term().is_zero())
        fail(ErrorKind::OriginNotFixed, "substituted series must vanish at the origin");
    const int T = u.order();
    if (a.order() < T) fail(ErrorKind::OrderTooLow, "outer series has lower order than the substitution");
    std::vector<Series2> up{Series2::constant(u.field(), T, FieldElement(u.field(), 1), u.names())};
    std::vector<Series2> vp = up;
    for (int k = 1; k <= T; ++k) {
        up.push_back(up.back() * u);
        vp.push_back(vp.back() * v);
    }
    Series2 r(u.field(), T, u.names());
    for (auto& [i, j, c] : a.terms()) {
        if (i + j > T) continue;
        r = r + (up[i] * vp[j]).scaled(c);
    }
    return r;
}

std::string Germ2::to_string() const { return "(" + first.to_string() + ", " + second.to_string() + ")"; }

Germ2 germ_identity(FieldPtr f, int T, std::pair<std::string, std::string> names) {
    return {Series2::var(f, T, 0, names), Series2::var(f, T, 1, names)};
}

Germ2 germ_compose(const Germ2& g, const Germ2& h) {
    if (!h.fixes_origin()) fail(ErrorKind::OriginNotFixed, "inner germ does not fix the origin");
    if (g.order() != h.order()) fail(ErrorKind::InvalidArgument, "germs with different truncation orders");
    return {series_substitute(g.first, h.first, h.second).renamed(g.first.names()),
            series_substitute(g.second, h.first, h.second).renamed(g.first.names())};
}

Germ2 germ_inverse(const Germ2& g) {
    if (!g.fixes_origin()) fail(ErrorKind::OriginNotFixed, "germ does not fix the origin");
    const FieldPtr& f = g.first.field();
    const int T = g.order();
    const FieldElement a = g.m(1, 0), b = g.m(0, 1), c = g.n(1, 0), d = g.n(0, 1);
    const FieldElement det = a * d - b * c;
    if (det.is_zero()) fail(ErrorKind::NonUnit, "linear part of the germ is singular");
    const FieldElement di = det.inv();
    const FieldElement ia = d * di, ib = -b * di, ic = -c * di, id = a * di;
    auto names = g.first.names();
    Germ2 x = germ_identity(f, T, names);
    // Fixed point h = L^-1 (x - N(h)), N = g - L; each pass fixes one more order.
    Germ2 h = {x.first.scaled(ia) + x.second.scaled(ib), x.first.scaled(ic) + x.second.scaled(id)};
    for (int k = 1; k < T; ++k) {
        Germ2 gh = germ_compose(g, h);
        Series2 n1 = gh.first - (h.first.scaled(a) + h.second.scaled(b));
        Series2 n2 = gh.second - (h.first.scaled(c) + h.second.scaled(d));
        Series2 r1 = x.first - n1, r2 = x.second - n2;
        h = {r1.scaled(ia) + r2.scaled(ib), r1.scaled(ic) + r2.scaled(id)};
    }
    return h;
}

std::pair<std::string, std::string> chart_names(int chart) {
    switch (chart) {
    case 0: return {"y", "z"};
    case 1: return {"x", "z"};
    case 2: return {"x", "y"};
    }
    fail(ErrorKind::InvalidArgument, "chart index must be 0, 1 or 2");
}

namespace {

std::pair<int, int> chart_vars(int chart) {
    switch (chart) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    case 2: return {0, 1};
    }
    fail(ErrorKind::InvalidArgument, "chart index must be 0, 1 or 2");
}

using Triple = std::array<Series2, 3>;

Triple eval_on_series(const RationalMapP2& f, const Triple& X) {
    const FieldPtr& K = f.field();
    const int T = X[0].order();
    std::array<std::vector<Series2>, 3> pw;
    const int d = f.degree();
    for (int i = 0; i < 3; ++i) {
        pw[i].push_back(Series2::constant(K, T, FieldElement(K, 1), X[0].names()));
        for (int k = 1; k <= d; ++k) pw[i].push_back(pw[i].back() * X[i]);
    }
    Triple out;
    for (int c = 0; c < 3; ++c) {
        Series2 acc(K, T, X[0].names());
        for (auto& [m, coef] : f[c].terms()) acc = acc + (pw[0][m[0]] * pw[1][m[1]] * pw[2][m[2]]).scaled(coef);
        out[c] = std::move(acc);
    }
    return out;
}

Triple start_triple(const ProjPoint& p, int chart_p, int T) {
    const FieldPtr& K = p.field();
    if (p[chart_p].is_zero())
        fail(ErrorKind::ChartMismatch, p.to_string() + " is not in chart " + std::to_string(chart_p));
    auto names = chart_names(chart_p);
    auto [va, vb] = chart_vars(chart_p);
    const FieldElement s = p[chart_p].inv();
    Triple X;
    X[chart_p] = Series2::constant(K, T, FieldElement(K, 1), names);
    X[va] = Series2::constant(K, T, p[va] * s, names) + Series2::var(K, T, 0, names);
    X[vb] = Series2::constant(K, T, p[vb] * s, names) + Series2::var(K, T, 1, names);
    return X;
}

Germ2 dehomogenize(const Triple& F, int chart_q) {
    if (!F[chart_q].is_unit()) fail(ErrorKind::ChartMismatch, "image point is not in chart " + std::to_string(chart_q));
    auto [va, vb] = chart_vars(chart_q);
    Series2 inv = series_invert_unit(F[chart_q]);
    return {F[va] * inv, F[vb] * inv};
}

Germ2 finish_triple(const Triple& F, const ProjPoint& q, int chart_q, int T) {
    const FieldPtr& K = q.field();
    if (q[chart_q].is_zero())
        fail(ErrorKind::ChartMismatch, q.to_string() + " is not in chart " + std::to_string(chart_q));
    auto [va, vb] = chart_vars(chart_q);
    Germ2 g = dehomogenize(F, chart_q);
    const FieldElement s = q[chart_q].inv();
    Series2 a = g.first, b = g.second;
    const FieldElement qa = q[va] * s, qb = q[vb] * s;
    if (a.constant_term() != qa || b.constant_term() != qb)
        fail(ErrorKind::InvalidArgument, "the map does not send the source point to " + q.to_string());
    a = a - Series2::constant(K, T, qa, a.names());
    b = b - Series2::constant(K, T, qb, b.names());
    return {a, b};
}

void check_defined(const Triple& X, size_t step) {
    for (auto& s : X)
        if (s.is_unit()) return;
    fail(ErrorKind::IndeterminacyHit, "intermediate image at step " + std::to_string(step) + " is an indeterminacy point");
}

// Rescale so the first unit component has constant term 1; keeps numbers small.
void rescale(Triple& X) {
    for (auto& s : X)
        if (s.is_unit()) {
            FieldElement c = s.constant_term().inv();
            for (auto& t : X) t = t.scaled(c);
            return;
        }
}

} // namespace

Germ2 germ_of_map_at(const RationalMapP2& f, const ProjPoint& p, const ProjPoint& q, int chart_p, int chart_q, int T) {
    return germ_of_chain({f}, p, q, chart_p, chart_q, T);
}

Germ2 germ_of_map_uncentered(const RationalMapP2& f, const ProjPoint& p, int chart_p, int chart_q, int T) {
    Triple X = eval_on_series(f, start_triple(p, chart_p, T));
    check_defined(X, 0);
    return dehomogenize(X, chart_q);
}

Germ2 germ_of_chain(const std::vector<RationalMapP2>& maps, const ProjPoint& p, const ProjPoint& q, int chart_p,
                    int chart_q, int T) {
    if (maps.empty()) fail(ErrorKind::InvalidArgument, "empty map chain");
    Triple X = start_triple(p, chart_p, T);
    for (size_t k = 0; k < maps.size(); ++k) {
        X = eval_on_series(maps[k], X);
        check_defined(X, k);
        rescale(X);
    }
    return finish_triple(X, q, chart_q, T);
}

LiftResult lift_through_omega_d(const Germ2& g, int d) {
    if (d < 1) fail(ErrorKind::InvalidArgument, "d must be positive");
    const int T = g.order();
    if (T < d + 1) fail(ErrorKind::OrderTooLow, "germ order " + std::to_string(T) + " < d + 1");
    LiftResult res;
    res.conditions.emplace_back("alpha_00", g.m(0, 0));
    res.conditions.emplace_back("beta_00", g.n(0, 0));
    for (int j = 1; j < d; ++j) res.conditions.emplace_back("alpha_0" + std::to_string(j), g.m(0, j));
    res.liftable = true;
    for (auto& c : res.conditions)
        if (!c.second.is_zero()) res.liftable = false;
    if (!res.liftable) return res;
    if (g.n(0, 1).is_zero()) fail(ErrorKind::GuardViolation, "lifting conditions hold but beta_01 = 0");

    const FieldPtr& K = g.first.field();
    const int To = T - d;
    auto names = g.first.names();
    Series2 num(K, To, names), den(K, To, names), second(K, To, names);
    for (auto& [i, j, c] : g.first.terms()) {
        // alpha_ij eta^i mu^(d(i-1)+j), (i, j) outside I_d.
        if (i == 0 && j < d) continue;
        const int e = d * (i - 1) + j;
        if (i + e <= To) num.set(i, e, num.coeff(i, e) + c);
    }
    for (auto& [i, j, c] : g.second.terms()) {
        if (i == 0 && j < 1) continue;
        const int e1 = d * i + j - 1, e2 = d * i + j;
        if (i + e1 <= To) den.set(i, e1, den.coeff(i, e1) + c);
        if (i + e2 <= To) second.set(i, e2, second.coeff(i, e2) + c);
    }
    Series2 first = num * series_invert_unit(den).pow(d);
    res.lifted = Germ2{first, second};
    return res;
}

Germ2 blowdown_pullback(const Germ2& g, int d) {
    const FieldPtr& K = g.first.field();
    const int To = g.order() - d;
    if (To < 0) fail(ErrorKind::OrderTooLow, "germ order below d");
    auto names = g.first.names();
    Germ2 r{Series2(K, To, names), Series2(K, To, names)};
    auto push = [&](const Series2& s, Series2& out) {
        for (auto& [i, j, c] : s.terms()) {
            const int e = d * i + j;
            if (i + e <= To) out.set(i, e, out.coeff(i, e) + c);
        }
    };
    push(g.first, r.first);
    push(g.second, r.second);
    return r;
}

Germ2 blowdown_pushforward(const Germ2& lifted, int d) {
    return {lifted.first * lifted.second.pow(d), lifted.second};
}

std::string GluingFamily::id() const {
    switch (kind) {
    case GluingKind::PhiN: return "PHI_N(" + std::to_string(n) + ")";
    case GluingKind::Phi2Quadratic: return "PHI_2_QUADRATIC";
    case GluingKind::CubicQuadratic: return "CUBIC_QUADRATIC";
    case GluingKind::StabZeta2: return "STAB_ZETA2";
    }
    return "?";
}

int GluingFamily::default_order() const {
    if (kind == GluingKind::PhiN) return std::max(n, 4) + 1;
    return 5;
}

std::string GluingReport::to_string() const {
    std::ostringstream os;
    os << family << ": " << (pass ? "pass" : "FAIL");
    for (auto& [name, v] : residuals) os << "\n  " << name << " = " << v.to_string();
    return os.str();
}

GluingReport check_gluing(const Germ2& g, const GluingFamily& fam) {
    const int need = fam.kind == GluingKind::PhiN ? std::max(fam.n, 4) : 4;
    if (g.order() < need)
        fail(ErrorKind::OrderTooLow, fam.id() + " needs germ order >= " + std::to_string(need));
    auto m = [&](int i, int j) { return g.m(i, j); };
    auto n = [&](int i, int j) { return g.n(i, j); };
    GluingReport rep;
    rep.family = fam.id();
    auto& r = rep.residuals;
    switch (fam.kind) {
    case GluingKind::PhiN: {
        const int N = fam.n;
        if (N < 3) fail(ErrorKind::UnsupportedN, "PHI_N needs n >= 3");
        r.emplace_back("m00", m(0, 0));
        r.emplace_back("n00", n(0, 0));
        r.emplace_back("n10", n(1, 0));
        r.emplace_back("m10^" + std::to_string(N) + " + n01^" + std::to_string(N - 1),
                       m(1, 0).pow(N) + n(0, 1).pow(N - 1));
        if (N == 3) {
            if (m(1, 0).is_zero()) fail(ErrorKind::GuardViolation, "PHI_N(3) needs m10 != 0");
            r.emplace_back("2*m10*n20 - 3*m01*n01",
                           (m(1, 0) * n(2, 0)).scaled(2) - (m(0, 1) * n(0, 1)).scaled(3));
        } else {
            r.emplace_back("m01", m(0, 1));
            r.emplace_back("n20", n(2, 0));
        }
        break;
    }
    case GluingKind::Phi2Quadratic:
        r.emplace_back("m00", m(0, 0));
        r.emplace_back("n00", n(0, 0));
        r.emplace_back("n10", n(1, 0));
        r.emplace_back("m10^2 - n20 + n01", m(1, 0).pow(2) - n(2, 0) + n(0, 1));
        break;
    case GluingKind::CubicQuadratic:
        r.emplace_back("m00", m(0, 0));
        r.emplace_back("n00", n(0, 0));
        r.emplace_back("n01", n(0, 1));
        r.emplace_back("n02 + n10 + m01^2", n(0, 2) + n(1, 0) + m(0, 1).pow(2));
        r.emplace_back("n03 + n11 + 2*m01*(m02 + m10)",
                       n(0, 3) + n(1, 1) + (m(0, 1) * (m(0, 2) + m(1, 0))).scaled(2));
        break;
    case GluingKind::StabZeta2:
        r.emplace_back("m00", m(0, 0));
        r.emplace_back("n00", n(0, 0));
        r.emplace_back("m01", m(0, 1));
        r.emplace_back("m02 + m10 - n01^2", m(0, 2) + m(1, 0) - n(0, 1).pow(2));
        r.emplace_back("m03 + m11 - 2*n01*(n02 + n10)",
                       m(0, 3) + m(1, 1) - (n(0, 1) * (n(0, 2) + n(1, 0))).scaled(2));
        break;
    }
    rep.pass = true;
    for (auto& [name, v] : r)
        if (!v.is_zero()) rep.pass = false;
    return rep;
}

} // namespace crem
