#include "crem/field.hpp"

#include <sstream>

#include "crem/error.hpp"

namespace crem {

FieldPtr FieldSpec::make(const UniPoly& modulus, std::optional<EmbeddingHint> hint, std::string gen_name) {
    if (modulus.degree() < 1) fail(ErrorKind::InvalidArgument, "modulus must have degree >= 1");
    if (!modulus.is_monic()) fail(ErrorKind::InvalidArgument, "modulus must be monic: " + modulus.to_string("x"));
    if (gcd(modulus, modulus.derivative()).degree() > 0)
        fail(ErrorKind::InvalidArgument, "modulus is not squarefree: " + modulus.to_string("x"));
    auto f = std::shared_ptr<FieldSpec>(new FieldSpec());
    f->modulus_ = modulus;
    f->hint_ = hint;
    f->gen_name_ = std::move(gen_name);
    return f;
}

FieldPtr FieldSpec::rationals() {
    static const FieldPtr q = make(UniPoly::X(), EmbeddingHint{0, 0}, "w");
    return q;
}

std::string FieldSpec::describe() const {
    if (is_rational()) return "Q";
    return "Q[x]/(" + modulus_.to_string("x") + ")";
}

void reduce_mod(const UniPoly& modulus, std::vector<Rational>& v) {
    const int d = modulus.degree();
    const auto& m = modulus.coeffs();
    for (int i = static_cast<int>(v.size()) - 1; i >= d; --i) {
        if (v[i] == 0) continue;
        Rational t = v[i];
        for (int j = 0; j < d; ++j)
            if (m[j] != 0) v[i - d + j] -= t * m[j];
    }
    v.resize(d);
}

FieldElement::FieldElement(FieldPtr f, const Rational& c) : field_(std::move(f)), c_(field_->degree()) {
    c_[0] = c;
}

FieldElement::FieldElement(FieldPtr f, std::vector<Rational> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) {
    if (static_cast<int>(c_.size()) < field_->degree()) c_.resize(field_->degree());
    reduce_mod(field_->modulus(), c_);
}

FieldElement FieldElement::gen(FieldPtr f) { return FieldElement(f, std::vector<Rational>{0, 1}); }

FieldElement FieldElement::from_poly(FieldPtr f, const UniPoly& p) { return FieldElement(std::move(f), p.coeffs()); }

bool FieldElement::is_zero() const {
    for (auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool FieldElement::is_one() const { return is_rational() && c_[0] == 1; }

bool FieldElement::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rational FieldElement::rational_value() const {
    if (!is_rational()) fail(ErrorKind::InvalidArgument, "element is not rational: " + to_string());
    return c_[0];
}

void FieldElement::check_same(const FieldElement& b) const {
    if (!field_->same_as(*b.field_))
        fail(ErrorKind::SpecMismatch, field_->describe() + " vs " + b.field_->describe());
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& b) {
    check_same(b);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& b) {
    check_same(b);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= b.c_[i];
    return *this;
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    const size_t d = a.c_.size();
    if (d == 1) return FieldElement(a.field_, a.c_[0] * b.c_[0]);
    std::vector<Rational> r(2 * d - 1);
    for (size_t i = 0; i < d; ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < d; ++j)
            if (b.c_[j] != 0) r[i + j] += a.c_[i] * b.c_[j];
    }
    return FieldElement(a.field_, std::move(r));
}

FieldElement& FieldElement::operator*=(const FieldElement& b) { return *this = *this * b; }

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inv(); }

bool operator==(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    return a.c_ == b.c_;
}

FieldElement FieldElement::inv() const {
    if (is_zero()) fail(ErrorKind::ZeroInverse, "inverse of zero");
    if (c_.size() == 1) return FieldElement(field_, 1 / c_[0]);
    ExtGcd e = ext_gcd(lift(), field_->modulus());
    if (e.g.degree() > 0)
        fail(ErrorKind::NonInvertible, to_string() + " shares factor " + e.g.to_string("x") + " with modulus");
    return FieldElement(field_, e.s.coeffs());
}

FieldElement FieldElement::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    FieldElement r(field_, 1), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

FieldElement FieldElement::scaled(const Rational& s) const {
    FieldElement r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

std::string FieldElement::to_string() const {
    if (c_.size() == 1) return c_[0].get_str();
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) os << (i ? ", " : "") << c_[i].get_str();
    os << "]";
    return os.str();
}

FieldElement field_add(const FieldElement& a, const FieldElement& b) { return a + b; }
FieldElement field_mul(const FieldElement& a, const FieldElement& b) { return a * b; }
FieldElement field_neg(const FieldElement& a) { return -a; }
FieldElement field_inv(const FieldElement& a) { return a.inv(); }

namespace {

struct CQ {
    Rational re, im;
};

CQ cmul(const CQ& a, const CQ& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

CQ cinv(const CQ& a) {
    Rational n = a.re * a.re + a.im * a.im;
    return {a.re / n, -a.im / n};
}

CQ ceval(const UniPoly& p, const CQ& x) {
    CQ r{0, 0};
    for (size_t i = p.coeffs().size(); i-- > 0;) {
        r = cmul(r, x);
        r.re += p.coeffs()[i];
    }
    return r;
}

Rational dyadic(const Rational& q, unsigned bits) { return Interval(q).round_out(bits).lo; }

} // namespace

CInterval root_enclosure(const FieldSpec& f, unsigned precision_bits) {
    if (!f.hint()) fail(ErrorKind::NoEmbedding, "field " + f.describe() + " has no embedding hint");
    const UniPoly& p = f.modulus();
    if (p.degree() == 1) {
        Rational r = -p.coeff(0);
        return CInterval(Interval(r));
    }
    const UniPoly dp = p.derivative();
    const bool real = f.hint()->im == 0;
    const unsigned work = precision_bits + 16;
    CQ c{f.hint()->re, f.hint()->im};
    for (int round = 0; round < 8; ++round) {
        for (int it = 0; it < 200; ++it) {
            CQ d = ceval(dp, c);
            if (d.re == 0 && d.im == 0) break;
            CQ step = cmul(ceval(p, c), cinv(d));
            c = {dyadic(c.re - step.re, work), real ? Rational(0) : dyadic(c.im - step.im, work)};
            Rational m = abs(step.re) + abs(step.im);
            if (m * (mpz_class(1) << work) < 1) break;
        }
        CQ d = ceval(dp, c);
        CQ y = cinv(d);
        y = {dyadic(y.re, work), dyadic(y.im, work)};
        CInterval Y(Interval(y.re), Interval(y.im));
        CInterval C(Interval(c.re), Interval(c.im));
        CQ pc = ceval(p, c);
        CInterval PC(Interval(pc.re), Interval(pc.im));
        for (unsigned shift = precision_bits + 4; shift + 40 > precision_bits + 4; shift -= 4) {
            Rational r(mpz_class(1), mpz_class(1) << shift);
            CInterval X(Interval(c.re - r, c.re + r), Interval(c.im - r, c.im + r));
            CInterval one(Interval(Rational(1)));
            CInterval K = C - Y * PC + (one - Y * dp.eval(X)) * (X - C);
            if (K.subset_interior(X)) {
                if (real) K.im = Interval(Rational(0));
                return K;
            }
            if (shift < 8) break;
        }
        c = {dyadic(c.re, work + 32), dyadic(c.im, work + 32)};
    }
    fail(ErrorKind::NoEmbedding, "could not certify the hinted root of " + p.to_string("x"));
}

CInterval embed_approx(const FieldElement& a, unsigned precision_bits) {
    const FieldSpec& f = *a.field();
    if (a.is_rational()) return CInterval(Interval(a.coeffs()[0]));
    if (!f.hint()) fail(ErrorKind::NoEmbedding, "field " + f.describe() + " has no embedding hint");
    const Rational target(mpz_class(1), mpz_class(1) << precision_bits);
    for (unsigned extra = 8; extra < 4096; extra *= 2) {
        CInterval X = root_enclosure(f, precision_bits + extra);
        CInterval v = a.lift().eval(X);
        if (v.width() <= target) return v;
    }
    fail(ErrorKind::NoEmbedding, "precision not reached");
}

} // namespace crem
