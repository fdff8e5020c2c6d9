#include "crem/interval.hpp"

#include <algorithm>
#include <array>

#include "crem/error.hpp"

namespace crem {

namespace {

mpq_class floor_dyadic(const mpq_class& q, unsigned bits) {
    mpz_class scaled = q.get_num() << bits;
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
    mpq_class r(f, mpz_class(1) << bits);
    r.canonicalize();
    return r;
}

mpq_class ceil_dyadic(const mpq_class& q, unsigned bits) {
    mpz_class scaled = q.get_num() << bits;
    mpz_class f;
    mpz_cdiv_q(f.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
    mpq_class r(f, mpz_class(1) << bits);
    r.canonicalize();
    return r;
}

} // namespace

Interval Interval::round_out(unsigned bits) const { return {floor_dyadic(lo, bits), ceil_dyadic(hi, bits)}; }

mpq_class Interval::mag() const { return std::max(abs(lo), abs(hi)); }

Interval operator*(const Interval& a, const Interval& b) {
    std::array<mpq_class, 4> p{a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p.begin(), p.end()), *std::max_element(p.begin(), p.end())};
}

Interval Interval::sqr() const {
    if (lo >= 0) return {lo * lo, hi * hi};
    if (hi <= 0) return {hi * hi, lo * lo};
    return {mpq_class(0), std::max(lo * lo, hi * hi)};
}

Interval Interval::inverse() const {
    if (contains_zero()) fail(ErrorKind::InvalidArgument, "interval inverse across zero");
    return {1 / hi, 1 / lo};
}

CInterval CInterval::inverse() const {
    Interval n = re.sqr() + im.sqr();
    Interval ni = n.inverse();
    return {re * ni, -(im * ni)};
}

mpq_class CInterval::width() const { return std::max(re.width(), im.width()); }

std::string to_decimal(const mpq_class& q, int digits, bool round_up) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class num = q.get_num() * scale;
    mpz_class v;
    if (round_up)
        mpz_cdiv_q(v.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
    else
        mpz_fdiv_q(v.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
    bool neg = v < 0;
    if (neg) v = -v;
    std::string s = v.get_str();
    if (static_cast<int>(s.size()) <= digits) s = std::string(digits + 1 - s.size(), '0') + s;
    std::string out = s.substr(0, s.size() - digits);
    if (digits > 0) out += "." + s.substr(s.size() - digits);
    return (neg ? "-" : "") + out;
}

std::string to_string(const Interval& iv, int digits) {
    return "[" + to_decimal(iv.lo, digits, false) + ", " + to_decimal(iv.hi, digits, true) + "]";
}

std::string to_string(const CInterval& iv, int digits) {
    if (iv.im.lo == 0 && iv.im.hi == 0) return to_string(iv.re, digits);
    return to_string(iv.re, digits) + " + i*" + to_string(iv.im, digits);
}

} // namespace crem
