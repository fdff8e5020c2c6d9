#pragma once

#include <gmpxx.h>

#include <string>

namespace crem {

// Closed interval with rational endpoints. Arithmetic is exact; round_out()
// snaps endpoints outward to a dyadic grid to keep sizes bounded.
struct Interval {
    mpq_class lo, hi;

    Interval() = default;
    Interval(const mpq_class& v) : lo(v), hi(v) {}
    Interval(const mpq_class& a, const mpq_class& b) : lo(a), hi(b) {}

    mpq_class width() const { return hi - lo; }
    mpq_class mid() const { return (lo + hi) / 2; }
    bool contains(const mpq_class& v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool subset_interior(const Interval& o) const { return o.lo < lo && hi < o.hi; }
    Interval round_out(unsigned bits) const;
    mpq_class mag() const;

    friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
    friend Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
    friend Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }
    friend Interval operator*(const Interval& a, const Interval& b);
    Interval sqr() const;
    // Throws if o contains zero.
    Interval inverse() const;
};

struct CInterval {
    Interval re, im;

    CInterval() = default;
    CInterval(const Interval& r) : re(r), im(mpq_class(0)) {}
    CInterval(const Interval& r, const Interval& i) : re(r), im(i) {}

    friend CInterval operator+(const CInterval& a, const CInterval& b) { return {a.re + b.re, a.im + b.im}; }
    friend CInterval operator-(const CInterval& a, const CInterval& b) { return {a.re - b.re, a.im - b.im}; }
    friend CInterval operator*(const CInterval& a, const CInterval& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    CInterval inverse() const;
    CInterval round_out(unsigned bits) const { return {re.round_out(bits), im.round_out(bits)}; }
    mpq_class width() const;
    bool subset_interior(const CInterval& o) const {
        return re.subset_interior(o.re) && im.subset_interior(o.im);
    }
    bool contains(const mpq_class& r, const mpq_class& i) const { return re.contains(r) && im.contains(i); }
};

// Decimal rendering with the given number of digits after the point
// (lower endpoint rounded down, upper rounded up).
std::string to_decimal(const mpq_class& q, int digits, bool round_up);
std::string to_string(const Interval& iv, int digits = 12);
std::string to_string(const CInterval& iv, int digits = 12);

} // namespace crem
