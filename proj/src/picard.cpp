#include "crem/picard.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "crem/error.hpp"

namespace crem {

PicLatticeMatrix::PicLatticeMatrix(int n, std::vector<std::string> basis)
    : dim(n), entries(n, std::vector<Integer>(n, 0)), labels(std::move(basis)) {
    if (static_cast<int>(labels.size()) != n) fail(ErrorKind::InvalidArgument, "basis label count differs from dimension");
}

std::string PicLatticeMatrix::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < dim; ++i) {
        os << (i ? "\n" : "") << "[";
        for (int j = 0; j < dim; ++j) os << (j ? " " : "") << entries[i][j].get_str();
        os << "]  " << labels[i];
    }
    return os.str();
}

namespace {

// Basis: Delta, then per level the 2n-1 labels, domain labels at level 1.
std::vector<std::string> thm3x_labels(int n, int levels) {
    auto sup = [](const std::string& s, int k) { return s + "^" + std::to_string(k); };
    std::vector<std::string> l{"Delta", "E", "F"};
    for (int k = 1; k <= n - 2; ++k) l.push_back(sup("G", k));
    l.push_back("H");
    for (int k = 1; k <= n - 2; ++k) l.push_back(sup("L", k));
    std::vector<std::string> range{"E", "F"};
    for (int k = 1; k <= n - 2; ++k) range.push_back(sup("G", k));
    range.push_back("K");
    for (int k = 1; k <= n - 2; ++k) range.push_back(sup("M", k));
    for (auto& r : range) l.push_back("phi " + r);
    if (levels == 3)
        for (auto& r : range) l.push_back("phi Phi_n phi " + r);
    return l;
}

PicLatticeMatrix build_thm3x(int n, int levels) {
    const int m = 2 * n - 1;
    const int N = 1 + levels * m;
    PicLatticeMatrix M(N, thm3x_labels(n, levels));
    const int o1 = 1, o2 = 1 + m, o3 = 1 + 2 * m;
    // Within a level: E = 0, G^k = 1 + k (F = G^0), L^l or M^l = n + l (H = L^0, K = M^0).
    auto E = [] { return 0; };
    auto G = [](int k) { return 1 + k; };
    auto LM = [n](int l) { return n + l; };
    std::vector<long> mult{1, 2};
    for (int k = 1; k <= n - 2; ++k) mult.push_back(k + 2);
    mult.push_back(n);
    for (int k = 1; k <= n - 2; ++k) mult.push_back(n);

    // Delta -> phi M^{n-2}
    M.at(o2 + LM(n - 2), 0) = 1;
    std::vector<std::pair<int, int>> swaps{{E(), E()}, {G(n - 2), G(n - 2)}};
    for (int k = 0; k <= n - 3; ++k) swaps.emplace_back(G(k), LM(n - 3 - k));
    for (int l = 0; l <= n - 3; ++l) swaps.emplace_back(LM(l), G(n - 3 - l));
    for (auto [src, dst] : swaps) M.at(o2 + dst, o1 + src) = 1;
    // L^{n-2} goes to the class of phi(Delta).
    const int c = o1 + LM(n - 2);
    M.at(0, c) = 1;
    for (int i = 0; i < m; ++i) {
        M.at(o1 + i, c) += mult[i];
        M.at(o2 + i, c) -= mult[i];
    }
    if (levels == 3) {
        for (int i = 0; i < m; ++i) {
            M.at(o3 + i, o2 + i) = 1;
            M.at(o1 + i, o3 + i) += 1;
        }
    } else {
        for (int i = 0; i < m; ++i) M.at(o1 + i, o2 + i) += 1;
    }
    return M;
}

const char* const kThm43Rows[16] = {
    "0 0 2 0 0 1 0 0 0 0 0 0 0 0 0 0",   "0 0 2 0 0 1 0 0 0 0 0 0 1 0 0 0",
    "0 0 2 0 0 1 0 0 0 0 0 1 0 0 0 0",   "0 0 2 0 0 1 0 0 0 0 0 0 0 1 0 0",
    "0 0 2 0 0 1 0 0 0 0 0 0 0 0 1 0",   "0 0 2 0 0 1 0 0 0 0 0 0 0 0 0 1",
    "0 0 -1 0 0 -1 0 0 0 0 0 0 0 0 0 0", "0 0 -1 0 1 -1 0 0 0 0 0 0 0 0 0 0",
    "0 0 -2 1 0 -1 0 0 0 0 0 0 0 0 0 0", "0 1 -3 0 0 -1 0 0 0 0 0 0 0 0 0 0",
    "1 0 -4 0 0 -1 0 0 0 0 0 0 0 0 0 0", "0 0 0 0 0 0 1 0 0 0 0 0 0 0 0 0",
    "0 0 0 0 0 0 0 1 0 0 0 0 0 0 0 0",   "0 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0",
    "0 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0",   "0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0",
};

PicLatticeMatrix build_thm43() {
    PicLatticeMatrix M(16, {"Delta'", "E", "F", "H", "L", "N", "phi E", "phi G", "phi K", "phi M", "phi Omega",
                            "phi f phi E", "phi f phi G", "phi f phi K", "phi f phi M", "phi f phi Omega"});
    for (int i = 0; i < 16; ++i) {
        std::istringstream is(kThm43Rows[i]);
        for (int j = 0; j < 16; ++j) {
            long v;
            is >> v;
            M.at(i, j) = v;
        }
    }
    return M;
}

} // namespace

PicLatticeMatrix build_matrix(PicardFamily fam, int n) {
    switch (fam) {
    case PicardFamily::Thm31:
        if (n < 3) fail(ErrorKind::UnsupportedN, "THM31 needs n >= 3");
        return build_thm3x(n, 3);
    case PicardFamily::Thm33:
        if (n < 4) fail(ErrorKind::UnsupportedN, "THM33 needs n >= 4");
        return build_thm3x(n, 2);
    case PicardFamily::Thm43:
        return build_thm43();
    }
    fail(ErrorKind::InvalidArgument, "unknown family");
}

Integer det_bareiss(std::vector<std::vector<Integer>> a) {
    const int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = std::move(t);
            }
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

UniPoly char_poly(const PicLatticeMatrix& m) {
    const int n = m.dim;
    // Values at X = 0..n, then Newton interpolation over Q.
    std::vector<Rational> xs, ys;
    for (int x = 0; x <= n; ++x) {
        auto a = m.entries;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a[i][j] = (i == j ? Integer(x) : Integer(0)) - a[i][j];
        xs.emplace_back(x);
        ys.emplace_back(det_bareiss(std::move(a)));
    }
    std::vector<Rational> dd = ys;
    for (int lvl = 1; lvl <= n; ++lvl)
        for (int j = n; j >= lvl; --j) {
            dd[j] = (dd[j] - dd[j - 1]) / (xs[j] - xs[j - lvl]);
        }
    UniPoly p(dd[n]);
    for (int j = n - 1; j >= 0; --j) p = p * (UniPoly::X() - UniPoly(xs[j])) + UniPoly(dd[j]);
    if (!p.is_integral() || !p.is_monic()) fail(ErrorKind::InvalidArgument, "internal: characteristic polynomial not monic integral");
    return p;
}

std::vector<UniPoly> squarefree_decomposition(const UniPoly& p) {
    if (p.is_zero()) fail(ErrorKind::InvalidArgument, "squarefree decomposition of zero");
    std::vector<UniPoly> out;
    UniPoly f = p.monic();
    if (f.degree() == 0) return out;
    UniPoly a = gcd(f, f.derivative());
    UniPoly b = divexact(f, a);
    UniPoly c = divexact(f.derivative(), a);
    UniPoly d = c - b.derivative();
    while (b.degree() > 0) {
        UniPoly g = gcd(b, d);
        out.push_back(g);
        b = divexact(b, g);
        c = divexact(d, g);
        d = c - b.derivative();
    }
    while (!out.empty() && out.back().degree() == 0) out.pop_back();
    return out;
}

std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
    std::vector<UniPoly> s{p, p.derivative()};
    while (!s.back().is_zero() && s.back().degree() > 0) {
        UniPoly r = divmod(s[s.size() - 2], s.back()).second;
        if (r.is_zero()) break;
        s.push_back(-r);
    }
    return s;
}

namespace {

int sign_changes(const std::vector<UniPoly>& seq, const Rational& x) {
    int changes = 0, last = 0;
    for (auto& q : seq) {
        int s = sgn(q.eval(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

Rational cauchy_bound(const UniPoly& p) {
    Rational m = 0;
    for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coeff(i) / p.lead())));
    return m + 1;
}

} // namespace

int sturm_count(const std::vector<UniPoly>& seq, const Rational& a, const Rational& b) {
    return sign_changes(seq, a) - sign_changes(seq, b);
}

std::vector<IsolatedRoot> sturm_isolate(const UniPoly& p) {
    if (p.is_zero()) fail(ErrorKind::InvalidArgument, "cannot isolate roots of the zero polynomial");
    std::vector<IsolatedRoot> out;
    if (p.degree() == 0) return out;
    std::vector<UniPoly> parts = squarefree_decomposition(p);
    UniPoly sqf(1);
    for (auto& s : parts) sqf = sqf * s;
    auto seq = sturm_sequence(sqf);
    // A power of two keeps bisection points on the integers down to unit width.
    Rational B = 1;
    for (const Rational c = cauchy_bound(sqf); B < c;) B *= 2;
    struct Job {
        Rational a, b;
    };
    std::vector<Job> stack{{-B, B}};
    while (!stack.empty()) {
        Job j = stack.back();
        stack.pop_back();
        const int c = sturm_count(seq, j.a, j.b);
        if (c == 0) continue;
        if (c == 1 && j.b - j.a <= 1) {
            IsolatedRoot r{p, j.a, j.b, 1};
            if (sqf.eval(j.b) == 0) r.lo = j.b;
            out.push_back(r);
            continue;
        }
        Rational mid = (j.a + j.b) / 2;
        stack.push_back({mid, j.b});
        stack.push_back({j.a, mid});
    }
    std::sort(out.begin(), out.end(), [](const IsolatedRoot& x, const IsolatedRoot& y) { return x.hi < y.hi; });
    for (auto& r : out) {
        for (size_t i = 0; i < parts.size(); ++i) {
            const UniPoly& s = parts[i];
            if (s.degree() < 1) continue;
            bool has = r.lo == r.hi ? s.eval(r.lo) == 0 : sturm_count(sturm_sequence(s), r.lo, r.hi) > 0;
            if (has) {
                r.multiplicity = static_cast<int>(i) + 1;
                break;
            }
        }
    }
    return out;
}

IsolatedRoot refine_root(const IsolatedRoot& r, unsigned bits) {
    IsolatedRoot o = r;
    if (o.lo == o.hi) return o;
    std::vector<UniPoly> parts = squarefree_decomposition(r.polynomial);
    UniPoly sqf(1);
    for (auto& s : parts) sqf = sqf * s;
    Rational width;
    mpq_set_ui(width.get_mpq_t(), 1, 1);
    mpq_div_2exp(width.get_mpq_t(), width.get_mpq_t(), bits);
    int slo = sgn(sqf.eval(o.lo));
    if (slo == 0) {
        // lo endpoint is a root of another factor; move it inward using the Sturm count.
        auto seq = sturm_sequence(sqf);
        Rational a = o.lo, b = o.hi;
        Rational m = (a + b) / 2;
        while (sturm_count(seq, m, b) == 0 || sgn(sqf.eval(m)) == 0) m = (a + m) / 2;
        o.lo = m;
        slo = sgn(sqf.eval(o.lo));
    }
    while (o.hi - o.lo > width) {
        Rational m = (o.lo + o.hi) / 2;
        int s = sgn(sqf.eval(m));
        if (s == 0) {
            o.lo = o.hi = m;
            return o;
        }
        if (s == slo)
            o.lo = m;
        else
            o.hi = m;
    }
    return o;
}

std::string FactorReport::to_string(const std::string& var) const {
    std::string s;
    auto wrap = [&](const UniPoly& q, int e) {
        std::string t = "(" + q.to_string(var) + ")";
        if (e > 1) t += "^" + std::to_string(e);
        return t;
    };
    if (rest.degree() > 0) s += wrap(rest, 1);
    for (auto& c : cyclotomic) s += wrap(crem::cyclotomic(c.order), c.multiplicity);
    if (s.empty()) s = "1";
    return s;
}

FactorReport factor_cyclotomic(const UniPoly& p) {
    FactorReport r;
    UniPoly q = p.monic();
    const int D = q.degree();
    auto phi = [](unsigned m) {
        unsigned r = 0;
        for (unsigned k = 1; k <= m; ++k)
            if (std::gcd(k, m) == 1) ++r;
        return r;
    };
    // phi(m) <= D forces m <= 2 D^2.
    for (unsigned m = 1; m <= static_cast<unsigned>(2 * D * D) && q.degree() > 0; ++m) {
        if (phi(m) > static_cast<unsigned>(q.degree())) continue;
        UniPoly c = cyclotomic(m);
        int e = 0;
        while (q.degree() >= c.degree()) {
            auto [quo, rem] = divmod(q, c);
            if (!rem.is_zero()) break;
            q = quo;
            ++e;
        }
        if (e) r.cyclotomic.push_back({m, e});
    }
    r.rest = q;
    return r;
}

SpectralRadius spectral_radius(const UniPoly& cp, unsigned bits) {
    SpectralRadius out;
    out.factors = factor_cyclotomic(cp);
    const UniPoly& rest = out.factors.rest;
    if (rest.degree() <= 0) {
        // All roots on the unit circle.
        out.root = IsolatedRoot{cp, 1, 1, 0};
        for (auto& c : out.factors.cyclotomic)
            if (c.order == 1) out.root.multiplicity = c.multiplicity;
        out.certificate = "trivial";
        return out;
    }
    auto roots = sturm_isolate(rest);
    if (roots.empty()) fail(ErrorKind::DominanceUnresolved, "non-cyclotomic cofactor has no real root");
    // Largest absolute value among real roots of the cofactor.
    IsolatedRoot best = roots.back();
    IsolatedRoot neg = roots.front();
    if (neg.lo < 0 && -neg.lo > best.hi) best = neg;
    best = refine_root(best, bits + 2);
    Rational mag_lo = best.lo >= 0 ? best.lo : Rational(-best.hi);
    if (mag_lo <= 1) fail(ErrorKind::DominanceUnresolved, "real roots do not exceed 1 in modulus");
    if (rest.degree() == 2) {
        // The other root is c0 / root (monic quadratic); both are real here.
        const Rational c0 = rest.coeff(0);
        if (abs(c0) < mag_lo * mag_lo) {
            out.certificate = out.factors.cyclotomic.empty() ? "quadratic-cofactor" : "cyclotomic";
        } else {
            fail(ErrorKind::DominanceUnresolved, "quadratic cofactor roots do not separate");
        }
    } else {
        fail(ErrorKind::DominanceUnresolved,
             "non-cyclotomic cofactor of degree " + std::to_string(rest.degree()) + " is not handled");
    }
    best.polynomial = cp;
    best.multiplicity = 1;
    out.root = refine_root(best, bits);
    return out;
}

SpectralRadius spectral_radius(const PicLatticeMatrix& m, unsigned bits) {
    return spectral_radius(char_poly(m), bits);
}

bool is_reciprocal_up_to_sign(const UniPoly& p) {
    if (p.is_zero() || p.coeff(0) == 0) fail(ErrorKind::ZeroConstantTerm, "reciprocity needs p(0) != 0");
    UniPoly r = p.reversed();
    return r == p || r == -p;
}

UniPoly thm31_expected_charpoly(int n) {
    UniPoly X = UniPoly::X();
    UniPoly one(1);
    return (X * X - X.scaled(n) + one) * (X * X - X + one).pow(n - 2) * (X + one).pow(n - 1) *
           (X * X + X + one).pow(n) * (X - one).pow(n + 1);
}

UniPoly thm33_dominant_factor(int n) {
    UniPoly X = UniPoly::X();
    return X * X - X.scaled(n - 1) + UniPoly(1);
}

UniPoly thm43_expected_charpoly() {
    UniPoly X = UniPoly::X();
    UniPoly one(1);
    return (X - one).pow(4) * (X + one).pow(2) * (X * X - X + one) * (X * X + X + one).pow(3) *
           (X * X - X.scaled(3) + one);
}

} // namespace crem
