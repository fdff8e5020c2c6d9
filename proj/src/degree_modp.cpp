#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>

#include "crem/cremona.hpp"
#include "crem/error.hpp"

namespace crem {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Poly = std::vector<u64>;  // ascending, mod p

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    for (a %= p; e; e >>= 1, a = mulmod(a, a, p))
        if (e & 1) r = mulmod(r, a, p);
    return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (n % q == 0) return n == q;
    u64 d = n - 1;
    int s = 0;
    while (!(d & 1)) d >>= 1, ++s;
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s && comp; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) comp = false;
        }
        if (comp) return false;
    }
    return true;
}

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly pmul(const Poly& a, const Poly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    std::vector<u128> acc(a.size() + b.size() - 1, 0);
    Poly r(acc.size());
    // Accumulate in 128 bits and reduce every 64 terms; products are < 2^122.
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + static_cast<u128>(a[i]) * b[j]) % p;
    }
    for (size_t k = 0; k < acc.size(); ++k) r[k] = static_cast<u64>(acc[k]);
    trim(r);
    return r;
}

Poly padd(Poly a, const Poly& b, u64 p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + b[i]) % p;
    trim(a);
    return a;
}

Poly pscale(Poly a, u64 c, u64 p) {
    for (auto& x : a) x = mulmod(x, c, p);
    trim(a);
    return a;
}

// a mod b, b nonzero.
Poly pmod(Poly a, const Poly& b, u64 p) {
    const u64 li = invmod(b.back(), p);
    while (deg(a) >= deg(b)) {
        const u64 c = mulmod(a.back(), li, p);
        const int sh = deg(a) - deg(b);
        for (size_t j = 0; j < b.size(); ++j) a[sh + j] = (a[sh + j] + p - mulmod(c, b[j], p)) % p;
        trim(a);
    }
    return a;
}

Poly pdiv(Poly a, const Poly& b, u64 p) {
    const u64 li = invmod(b.back(), p);
    Poly q(std::max(0, deg(a) - deg(b) + 1), 0);
    while (!a.empty() && deg(a) >= deg(b)) {
        const u64 c = mulmod(a.back(), li, p);
        const int sh = deg(a) - deg(b);
        q[sh] = c;
        for (size_t j = 0; j < b.size(); ++j) a[sh + j] = (a[sh + j] + p - mulmod(c, b[j], p)) % p;
        trim(a);
    }
    return q;
}

Poly pgcd(Poly a, Poly b, u64 p) {
    while (!b.empty()) {
        Poly r = pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) a = pscale(a, invmod(a.back(), p), p);
    return a;
}

Poly ppowmod(Poly base, u64 e, const Poly& m, u64 p) {
    Poly r{1};
    base = pmod(base, m, p);
    for (; e; e >>= 1) {
        if (e & 1) r = pmod(pmul(r, base, p), m, p);
        base = pmod(pmul(base, base, p), m, p);
    }
    return r;
}

std::optional<u64> rat_modp(const Rational& q, u64 p) {
    mpz_class num = q.get_num() % mpz_class(static_cast<unsigned long>(p));
    mpz_class den = q.get_den() % mpz_class(static_cast<unsigned long>(p));
    if (num < 0) num += static_cast<unsigned long>(p);
    if (den == 0) return std::nullopt;
    return mulmod(num.get_ui(), invmod(den.get_ui(), p), p);
}

// A root of the reduced modulus in F_p, via gcd(x^p - x, m) and random splitting.
std::optional<u64> root_modp(const UniPoly& m, u64 p, std::mt19937_64& rng) {
    Poly mp;
    for (auto& c : m.coeffs()) {
        auto v = rat_modp(c, p);
        if (!v) return std::nullopt;
        mp.push_back(*v);
    }
    trim(mp);
    if (deg(mp) != m.degree()) return std::nullopt;
    Poly xp = ppowmod({0, 1}, p, mp, p);
    xp = padd(xp, {0, p - 1}, p);
    Poly h = pgcd(mp, xp, p);
    if (deg(h) < 1) return std::nullopt;
    while (deg(h) > 1) {
        const u64 a = rng() % p;
        Poly w = ppowmod({a, 1}, (p - 1) / 2, h, p);
        w = padd(w, {p - 1}, p);
        Poly g = pgcd(h, w, p);
        if (deg(g) >= 1 && deg(g) < deg(h)) h = deg(g) <= deg(h) / 2 ? g : pdiv(h, g, p);
    }
    return mulmod(p - h[0], invmod(h[1], p), p);
}

} // namespace

std::vector<int> degree_sequence_modp(const RationalMapP2& f, int n, std::uint64_t seed) {
    if (n < 1) return {};
    std::mt19937_64 rng(seed);
    const FieldSpec& fs = *f.field();
    u64 p = (u64{1} << 61) - 1 - 2 * (seed % 1000);
    std::optional<u64> root;
    std::vector<std::vector<u64>> coeffs(3);
    for (;; p -= 2) {
        if (!is_prime(p)) continue;
        root = fs.is_rational() ? std::optional<u64>(0) : root_modp(fs.modulus(), p, rng);
        if (!root) continue;
        bool ok = true;
        for (int c = 0; c < 3 && ok; ++c) {
            coeffs[c].clear();
            for (auto& t : f[c].terms()) {
                u64 v = 0, rp = 1;
                for (auto& q : t.second.coeffs()) {
                    auto w = rat_modp(q, p);
                    if (!w) {
                        ok = false;
                        break;
                    }
                    v = (v + mulmod(*w, rp, p)) % p;
                    rp = mulmod(rp, *root, p);
                }
                coeffs[c].push_back(v);
            }
        }
        if (ok) break;
    }
    const int d = f.degree();
    std::array<Poly, 3> g;
    for (auto& gi : g) {
        gi = {rng() % p, rng() % p};
        trim(gi);
    }
    std::vector<int> out;
    for (int it = 0; it < n; ++it) {
        std::array<std::vector<Poly>, 3> pw;
        for (int v = 0; v < 3; ++v) {
            pw[v] = {Poly{1}};
            for (int e = 1; e <= d; ++e) pw[v].push_back(pmul(pw[v].back(), g[v], p));
        }
        std::array<Poly, 3> h;
        for (int c = 0; c < 3; ++c) {
            const auto& terms = f[c].terms();
            for (size_t k = 0; k < terms.size(); ++k) {
                const auto& e = terms[k].first;
                Poly mono = pmul(pmul(pw[0][e[0]], pw[1][e[1]], p), pw[2][e[2]], p);
                h[c] = padd(h[c], pscale(mono, coeffs[c][k], p), p);
            }
        }
        Poly gg = pgcd(pgcd(h[0], h[1], p), h[2], p);
        int top = 0;
        for (int c = 0; c < 3; ++c) {
            if (!h[c].empty()) h[c] = pdiv(h[c], gg, p);
            top = std::max(top, deg(h[c]));
        }
        if (top < 0) fail(ErrorKind::ZeroMap, "iterate vanishes on the test line");
        out.push_back(top);
        g = h;
    }
    return out;
}

} // namespace crem
