#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "crem/interval.hpp"
#include "crem/unipoly.hpp"

namespace crem {

// Approximate complex root used to pick an embedding for reports.
struct EmbeddingHint {
    Rational re, im;
};

// Q[x]/(p) with p monic and squarefree. Irreducibility is not checked.
class FieldSpec {
public:
    static std::shared_ptr<const FieldSpec> make(const UniPoly& modulus,
                                                 std::optional<EmbeddingHint> hint = std::nullopt,
                                                 std::string gen_name = "w");
    static std::shared_ptr<const FieldSpec> rationals();

    const UniPoly& modulus() const { return modulus_; }
    int degree() const { return modulus_.degree(); }
    bool is_rational() const { return degree() == 1; }
    const std::optional<EmbeddingHint>& hint() const { return hint_; }
    const std::string& gen_name() const { return gen_name_; }
    bool same_as(const FieldSpec& o) const { return this == &o || modulus_ == o.modulus_; }

    std::string describe() const;

private:
    FieldSpec() = default;
    UniPoly modulus_;
    std::optional<EmbeddingHint> hint_;
    std::string gen_name_;
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

// Residue class of degree < deg(modulus). Always stored reduced.
class FieldElement {
public:
    FieldElement() : FieldElement(FieldSpec::rationals(), Rational(0)) {}
    FieldElement(FieldPtr f, const Rational& c);
    FieldElement(FieldPtr f, long c) : FieldElement(std::move(f), Rational(c)) {}
    FieldElement(FieldPtr f, std::vector<Rational> coeffs);
    static FieldElement gen(FieldPtr f);
    static FieldElement from_poly(FieldPtr f, const UniPoly& p);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_one() const;
    // True when the residue is a rational constant.
    bool is_rational() const;
    Rational rational_value() const;
    UniPoly lift() const { return UniPoly(c_); }

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& b);
    FieldElement& operator-=(const FieldElement& b);
    FieldElement& operator*=(const FieldElement& b);
    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    friend bool operator==(const FieldElement& a, const FieldElement& b);
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    FieldElement inv() const;
    FieldElement pow(long e) const;
    FieldElement scaled(const Rational& s) const;

    // "5/6" for rationals, "[c0, c1, ...]" otherwise.
    std::string to_string() const;

private:
    void check_same(const FieldElement& b) const;
    FieldPtr field_;
    std::vector<Rational> c_;
};

FieldElement field_add(const FieldElement& a, const FieldElement& b);
FieldElement field_mul(const FieldElement& a, const FieldElement& b);
FieldElement field_neg(const FieldElement& a);
FieldElement field_inv(const FieldElement& a);

// Certified enclosure of the root of the modulus selected by the hint.
CInterval root_enclosure(const FieldSpec& f, unsigned precision_bits);
// Enclosure of the image of a under the hinted embedding, width <= 2^-bits.
CInterval embed_approx(const FieldElement& a, unsigned precision_bits);

// Reduce a dense coefficient vector (any length) mod the modulus in place.
void reduce_mod(const UniPoly& modulus, std::vector<Rational>& v);

} // namespace crem
