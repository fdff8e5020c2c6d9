#include "crem/zpoly.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "crem/error.hpp"

namespace crem {

bool ZPoly::is_zero() const {
    for (auto& v : c)
        if (v != 0) return false;
    return true;
}

size_t ZPoly::nnz() const {
    size_t n = 0;
    for (auto& v : c) n += (v != 0);
    return n;
}

mpz_class ZPoly::content() const {
    mpz_class g = 0;
    for (auto& v : c)
        if (v != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    return g;
}

namespace {

struct Entry {
    int a, b;
    const mpz_class* v;
};

std::vector<Entry> entries(const ZPoly& p) {
    std::vector<Entry> out;
    for (int a = 0; a <= p.deg; ++a)
        for (int b = 0; a + b <= p.deg; ++b)
            if (p.at(a, b) != 0) out.push_back({a, b, &p.at(a, b)});
    return out;
}

} // namespace

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.deg < 0 || b.deg < 0) return ZPoly();
    ZPoly r(a.deg + b.deg);
    auto ea = entries(a), eb = entries(b);
    for (auto& s : ea)
        for (auto& t : eb)
            mpz_addmul(r.at(s.a + t.a, s.b + t.b).get_mpz_t(), s.v->get_mpz_t(), t.v->get_mpz_t());
    return r;
}

std::optional<ZPoly> zdivexact(const ZPoly& a, const ZPoly& g) {
    if (g.deg < 0) fail(ErrorKind::InvalidArgument, "division by zero polynomial");
    if (a.deg < 0) return ZPoly();
    if (a.is_zero()) return ZPoly(a.deg - g.deg);
    if (g.deg > a.deg) return std::nullopt;
    // Lex order: larger x exponent first, then larger y exponent.
    int la = -1, lb = -1;
    for (int x = g.deg; x >= 0 && la < 0; --x)
        for (int y = g.deg - x; y >= 0; --y)
            if (g.at(x, y) != 0) {
                la = x;
                lb = y;
                break;
            }
    const int lc_z = g.deg - la - lb;
    const mpz_class& lc = g.at(la, lb);
    auto eg = entries(g);
    ZPoly r = a;
    ZPoly q(a.deg - g.deg);
    mpz_class t;
    for (int x = a.deg; x >= 0; --x) {
        for (int y = a.deg - x; y >= 0; --y) {
            mpz_class& cur = r.at(x, y);
            if (cur == 0) continue;
            const int z = a.deg - x - y;
            if (x < la || y < lb || z < lc_z) return std::nullopt;
            if (!mpz_divisible_p(cur.get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
            mpz_divexact(t.get_mpz_t(), cur.get_mpz_t(), lc.get_mpz_t());
            const int qa = x - la, qb = y - lb;
            q.at(qa, qb) = t;
            for (auto& e : eg) mpz_submul(r.at(qa + e.a, qb + e.b).get_mpz_t(), t.get_mpz_t(), e.v->get_mpz_t());
        }
    }
    return q;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }
u64 addmod(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    return s >= p ? s - p : s;
}
u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}
u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (n % q == 0) return n == q;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

const std::vector<u64>& primes() {
    static const std::vector<u64> ps = [] {
        std::vector<u64> v;
        for (u64 n = (1ull << 62) - 1; v.size() < 400; n -= 2)
            if (is_prime_u64(n)) v.push_back(n);
        return v;
    }();
    return ps;
}

using UP = std::vector<u64>;

void trim(UP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

UP urem(UP a, const UP& b, u64 p) {
    const int db = static_cast<int>(b.size()) - 1;
    const u64 inv = invmod(b.back(), p);
    for (int k = static_cast<int>(a.size()) - 1; k >= db; --k) {
        if (a[k] == 0) continue;
        u64 t = mulmod(a[k], inv, p);
        for (int j = 0; j <= db; ++j) a[k - db + j] = submod(a[k - db + j], mulmod(t, b[j], p), p);
    }
    a.resize(std::min<size_t>(a.size(), db));
    trim(a);
    return a;
}

UP ugcd(UP a, UP b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UP r = urem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        u64 inv = invmod(a.back(), p);
        for (auto& x : a) x = mulmod(x, inv, p);
    }
    return a;
}

// In-place Taylor shift q(t) -> q(t + s).
template <class T, class Mul>
void taylor_shift(std::vector<T>& q, const T& s, Mul&& muladd) {
    const int m = static_cast<int>(q.size()) - 1;
    for (int i = 0; i < m; ++i)
        for (int j = m - 1; j >= i; --j) muladd(q[j], s, q[j + 1]);
}

// y -> y + s*x (which = 1) or z -> z + s*x (which = 2) on a dense layout.
template <class T, class Mul>
void shift_var(int deg, std::vector<T>& c, int which, const T& s, Mul&& muladd) {
    auto at = [&](int a, int b) -> T& { return c[static_cast<size_t>(a) * (deg + 1) + b]; };
    std::vector<T> q;
    for (int fixed = 0; fixed <= deg; ++fixed) {
        const int m = deg - fixed;
        q.assign(m + 1, T(0));
        for (int j = 0; j <= m; ++j) q[j] = which == 1 ? at(m - j, j) : at(m - j, fixed);
        taylor_shift(q, s, muladd);
        for (int j = 0; j <= m; ++j) (which == 1 ? at(m - j, j) : at(m - j, fixed)) = q[j];
    }
}

ZPoly shifted_z(const ZPoly& p, long sy, long sz) {
    ZPoly r = p;
    auto muladd = [](mpz_class& acc, const mpz_class& s, const mpz_class& v) { acc += s * v; };
    if (sz != 0) shift_var(r.deg, r.c, 2, mpz_class(sz), muladd);
    if (sy != 0) shift_var(r.deg, r.c, 1, mpz_class(sy), muladd);
    return r;
}

mpz_class eval_1ab(const ZPoly& p, long sy, long sz) {
    std::vector<mpz_class> py(p.deg + 1), pz(p.deg + 1);
    py[0] = pz[0] = 1;
    for (int i = 1; i <= p.deg; ++i) {
        py[i] = py[i - 1] * sy;
        pz[i] = pz[i - 1] * sz;
    }
    mpz_class s = 0;
    for (int a = 0; a <= p.deg; ++a)
        for (int b = 0; a + b <= p.deg; ++b)
            if (p.at(a, b) != 0) s += p.at(a, b) * py[b] * pz[p.deg - a - b];
    return s;
}

ZPoly normalize_sign(ZPoly g) {
    mpz_class ct = g.content();
    if (ct == 0) return g;
    for (int a = g.deg; a >= 0; --a)
        for (int b = g.deg - a; b >= 0; --b)
            if (g.at(a, b) != 0) {
                if (g.at(a, b) < 0) ct = -ct;
                for (auto& v : g.c)
                    if (v != 0) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), ct.get_mpz_t());
                return g;
            }
    return g;
}

} // namespace

ZGcdResult zgcd(const std::vector<ZPoly>& polys) {
    std::vector<const ZPoly*> in;
    for (auto& p : polys)
        if (p.deg >= 0 && !p.is_zero()) in.push_back(&p);
    ZGcdResult res;
    if (in.empty()) {
        res.cofactors = polys;
        return res;
    }
    auto finish_with = [&](const ZPoly& g) -> bool {
        std::vector<ZPoly> cof;
        for (auto& p : polys) {
            if (p.deg < 0 || p.is_zero()) {
                cof.push_back(ZPoly(p.deg < 0 ? -1 : p.deg - g.deg));
                continue;
            }
            auto q = zdivexact(p, g);
            if (!q) return false;
            cof.push_back(std::move(*q));
        }
        res.g = g;
        res.cofactors = std::move(cof);
        return true;
    };
    ZPoly one(0);
    one.at(0, 0) = 1;
    for (auto* p : in)
        if (p->deg == 0) {
            finish_with(one);
            return res;
        }
    if (in.size() == 1) {
        finish_with(normalize_sign(*in[0]));
        return res;
    }

    // Linear change y -> y + sy x, z -> z + sz x making every input monic in x.
    long sy = 0, sz = 0;
    std::vector<mpz_class> lcs;
    for (int attempt = 0;; ++attempt) {
        sy = attempt % 5;
        sz = attempt / 5;
        lcs.clear();
        bool ok = true;
        for (auto* p : in) {
            lcs.push_back(eval_1ab(*p, sy, sz));
            if (lcs.back() == 0) ok = false;
        }
        if (ok) break;
        if (attempt > 200) fail(ErrorKind::InvalidArgument, "no admissible shift for modular gcd");
    }
    mpz_class gamma = 0;
    for (auto& l : lcs) mpz_gcd(gamma.get_mpz_t(), gamma.get_mpz_t(), l.get_mpz_t());

    int e_best = std::numeric_limits<int>::max();
    std::vector<mpz_class> crt;  // coefficients of the homogenized image, layout (e+1)^2
    mpz_class modulus = 1;
    std::vector<mpz_class> last_lift;

    for (u64 p : primes()) {
        if (mpz_fdiv_ui(gamma.get_mpz_t(), p) == 0) continue;
        bool bad = false;
        for (auto& l : lcs)
            if (mpz_fdiv_ui(l.get_mpz_t(), p) == 0) bad = true;
        if (bad) continue;

        auto muladd = [p](u64& acc, const u64& s, const u64& v) { acc = addmod(acc, mulmod(s, v, p), p); };
        std::vector<std::vector<u64>> imgs;
        for (auto* q : in) {
            std::vector<u64> c(q->c.size());
            for (size_t i = 0; i < c.size(); ++i) c[i] = mpz_fdiv_ui(q->c[i].get_mpz_t(), p);
            if (sz) shift_var(q->deg, c, 2, static_cast<u64>(sz), muladd);
            if (sy) shift_var(q->deg, c, 1, static_cast<u64>(sy), muladd);
            imgs.push_back(std::move(c));
        }
        const u64 gam = mpz_fdiv_ui(gamma.get_mpz_t(), p);

        int e = std::numeric_limits<int>::max();
        std::vector<u64> pts;
        std::vector<UP> vals;
        int maxdeg = 0;
        for (auto* q : in) maxdeg = std::max(maxdeg, q->deg);
        // Points depend on p so that an unlucky point does not recur for every prime.
        std::mt19937_64 pick(p);
        for (int trial = 0; trial < 4 * maxdeg + 40; ++trial) {
            const u64 y0 = 1 + pick() % (p - 1);
            if (std::find(pts.begin(), pts.end(), y0) != pts.end()) continue;
            UP g;
            bool first = true;
            for (size_t i = 0; i < in.size(); ++i) {
                const int d = in[i]->deg;
                UP u(d + 1, 0);
                const auto& c = imgs[i];
                for (int a = 0; a <= d; ++a) {
                    u64 acc = 0;
                    for (int b = d - a; b >= 0; --b) acc = addmod(mulmod(acc, y0, p), c[static_cast<size_t>(a) * (d + 1) + b], p);
                    u[a] = acc;
                }
                g = first ? u : ugcd(g, u, p);
                first = false;
                if (g.size() == 1) break;
            }
            if (g.empty()) continue;
            int dg = static_cast<int>(g.size()) - 1;
            if (dg < e) {
                e = dg;
                pts.clear();
                vals.clear();
            }
            if (dg > e) continue;
            for (auto& x : g) x = mulmod(x, gam, p);
            pts.push_back(y0);
            vals.push_back(std::move(g));
            if (e == 0 || static_cast<int>(pts.size()) == e + 1) break;
        }
        if (e == 0) {
            finish_with(one);
            return res;
        }
        if (static_cast<int>(pts.size()) != e + 1) continue;

        // Newton interpolation in y for each x-degree k.
        std::vector<u64> img(static_cast<size_t>(e + 1) * (e + 1), 0);
        bool total_ok = true;
        for (int k = 0; k <= e && total_ok; ++k) {
            std::vector<u64> dd(e + 1);
            for (int j = 0; j <= e; ++j) dd[j] = vals[j][k];
            for (int lvl = 1; lvl <= e; ++lvl)
                for (int j = e; j >= lvl; --j)
                    dd[j] = mulmod(submod(dd[j], dd[j - 1], p), invmod(submod(pts[j], pts[j - lvl], p), p), p);
            std::vector<u64> poly(1, dd[e]);
            for (int j = e - 1; j >= 0; --j) {
                std::vector<u64> np(poly.size() + 1, 0);
                for (size_t t = 0; t < poly.size(); ++t) {
                    np[t + 1] = addmod(np[t + 1], poly[t], p);
                    np[t] = submod(np[t], mulmod(poly[t], pts[j], p), p);
                }
                np[0] = addmod(np[0], dd[j], p);
                poly = std::move(np);
            }
            for (int b = 0; b < static_cast<int>(poly.size()); ++b) {
                if (poly[b] == 0) continue;
                if (k + b > e) {
                    total_ok = false;
                    break;
                }
                img[static_cast<size_t>(k) * (e + 1) + b] = poly[b];
            }
        }
        if (!total_ok) continue;

        if (e < e_best) {
            e_best = e;
            crt.assign(img.size(), 0);
            modulus = 1;
            last_lift.clear();
        } else if (e > e_best) {
            continue;
        }
        // CRT: x = crt (mod modulus), x = img (mod p).
        mpz_class pz;
        mpz_set_ui(pz.get_mpz_t(), p);
        mpz_class minv;
        mpz_class mm = modulus % pz;
        mpz_invert(minv.get_mpz_t(), mm.get_mpz_t(), pz.get_mpz_t());
        for (size_t i = 0; i < img.size(); ++i) {
            mpz_class cur = crt[i] % pz;
            if (cur < 0) cur += pz;
            mpz_class ip;
            mpz_set_ui(ip.get_mpz_t(), img[i]);
            mpz_class t = ((ip - cur) * minv) % pz;
            if (t < 0) t += pz;
            crt[i] += modulus * t;
        }
        modulus *= pz;
        mpz_class half = modulus / 2;
        std::vector<mpz_class> lift(crt.size());
        for (size_t i = 0; i < crt.size(); ++i) lift[i] = crt[i] > half ? crt[i] - modulus : crt[i];
        if (lift == last_lift) {
            ZPoly cand(e);
            // Dehomogenized (x^k y^b) -> homogeneous x^k y^b z^(e-k-b).
            for (int k = 0; k <= e; ++k)
                for (int b = 0; k + b <= e; ++b) cand.at(k, b) = lift[static_cast<size_t>(k) * (e + 1) + b];
            cand = normalize_sign(cand);
            ZPoly back = shifted_z(cand, 0, -sz);
            back = shifted_z(back, -sy, 0);
            back = normalize_sign(back);
            if (finish_with(back)) return res;
        }
        last_lift = std::move(lift);
    }
    fail(ErrorKind::InvalidArgument, "modular gcd did not converge");
}

} // namespace crem
