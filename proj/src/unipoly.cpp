#include "crem/unipoly.hpp"

#include <sstream>

#include "crem/error.hpp"

namespace crem {

UniPoly::UniPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

UniPoly::UniPoly(const Rational& c0) {
    if (c0 != 0) c_.push_back(c0);
}

UniPoly UniPoly::monomial(const Rational& c, int k) {
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return UniPoly(std::move(v));
}

UniPoly UniPoly::from_ints(std::initializer_list<long> asc) {
    std::vector<Rational> v;
    for (long x : asc) v.emplace_back(x);
    return UniPoly(std::move(v));
}

void UniPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UniPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
    return c_[k];
}

UniPoly UniPoly::operator-() const {
    UniPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return UniPoly(std::move(r));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(r));
}

UniPoly UniPoly::scaled(const Rational& s) const {
    if (s == 0) return {};
    UniPoly r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

UniPoly UniPoly::monic() const { return is_zero() ? *this : scaled(1 / lead()); }

UniPoly UniPoly::derivative() const {
    std::vector<Rational> r;
    for (size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * static_cast<long>(i));
    return UniPoly(std::move(r));
}

UniPoly UniPoly::pow(unsigned e) const {
    UniPoly r(1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

Rational UniPoly::eval(const Rational& x) const {
    Rational r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

Interval UniPoly::eval(const Interval& x) const {
    Interval r(mpq_class(0));
    for (size_t i = c_.size(); i-- > 0;) r = r * x + Interval(c_[i]);
    return r;
}

CInterval UniPoly::eval(const CInterval& x) const {
    CInterval r(Interval(mpq_class(0)));
    for (size_t i = c_.size(); i-- > 0;) r = r * x + CInterval(Interval(c_[i]));
    return r;
}

UniPoly UniPoly::reversed() const {
    std::vector<Rational> r(c_.rbegin(), c_.rend());
    return UniPoly(std::move(r));
}

bool UniPoly::is_integral() const {
    for (auto& x : c_)
        if (x.get_den() != 1) return false;
    return true;
}

UniPoly UniPoly::primitive() const {
    if (is_zero()) return *this;
    mpz_class l = 1, g = 0;
    for (auto& x : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<Rational> r;
    for (auto& x : c_) {
        mpz_class v = x.get_num() * (l / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        r.emplace_back(v);
    }
    if (c_.back() < 0) g = -g;
    for (auto& x : r) x /= g;
    return UniPoly(std::move(r));
}

std::string UniPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = c_[k];
        if (c == 0) continue;
        Rational a = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (k == 0 || a != 1) {
            os << a.get_str();
            if (k > 0) os << "*";
        }
        if (k > 0) os << var;
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) fail(ErrorKind::InvalidArgument, "division by zero polynomial");
    std::vector<Rational> r = a.coeffs();
    int db = b.degree();
    if (a.degree() < db) return {UniPoly(), a};
    std::vector<Rational> q(a.degree() - db + 1);
    Rational inv = 1 / b.lead();
    for (int k = a.degree(); k >= db; --k) {
        if (r[k] == 0) continue;
        Rational t = r[k] * inv;
        q[k - db] = t;
        for (int j = 0; j <= db; ++j) r[k - db + j] -= t * b.coeffs()[j];
    }
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

UniPoly divexact(const UniPoly& a, const UniPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) fail(ErrorKind::InexactDivision, a.to_string() + " by " + b.to_string());
    return q;
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        UniPoly r = divmod(x, y).second;
        x = std::move(y);
        y = r.is_zero() ? r : r.primitive();
    }
    return x.monic();
}

ExtGcd ext_gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly r0 = a, r1 = b, s0(1), s1, t0, t1(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        UniPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Rational l = 1 / r0.lead();
    return {r0.scaled(l), s0.scaled(l), t0.scaled(l)};
}

UniPoly cyclotomic(unsigned m) {
    if (m == 0) fail(ErrorKind::InvalidArgument, "cyclotomic(0)");
    // X^m - 1 divided by Phi_d for each proper divisor d.
    UniPoly p = UniPoly::monomial(1, static_cast<int>(m)) - UniPoly(1);
    for (unsigned d = 1; d < m; ++d)
        if (m % d == 0) p = divexact(p, cyclotomic(d));
    return p;
}

} // namespace crem
