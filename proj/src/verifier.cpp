#include "crem/verifier.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "crem/error.hpp"
#include "crem/picard.hpp"
#include "crem/tower.hpp"

namespace crem {

std::string family_name(Family f) {
    switch (f) {
    case Family::Thm31: return "thm31";
    case Family::Thm33: return "thm33";
    case Family::Thm35: return "thm35";
    case Family::Thm43: return "thm43";
    case Family::Sec23: return "sec23";
    }
    return "?";
}

std::optional<Family> family_from_name(const std::string& s) {
    std::string l;
    for (char c : s) l += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (Family f : {Family::Thm31, Family::Thm33, Family::Thm35, Family::Thm43, Family::Sec23})
        if (family_name(f) == l) return f;
    return std::nullopt;
}

RationalMapP2 PhiFamily::automorphism() const { return map_compose_linear_left(phi, base); }

namespace {

EmbeddingHint unit_hint(double angle) {
    return {Rational(std::cos(angle)), Rational(std::sin(angle))};
}

// Root of unity exp(i pi num / den) as a field element over the cyclotomic field it generates.
FieldElement root_of_unity(int num, int den, const std::string& name) {
    const int g = std::gcd(num, 2 * den);
    const unsigned order = static_cast<unsigned>(2 * den / g);
    if (order == 1) return FieldElement(FieldSpec::rationals(), 1);
    if (order == 2) return FieldElement(FieldSpec::rationals(), -1);
    FieldPtr f = FieldSpec::make(cyclotomic(order), unit_hint(M_PI * num / den), name);
    return FieldElement::gen(f);
}

FieldElement fe(const FieldPtr& f, const Rational& q) { return FieldElement(f, q); }

void domain(bool ok, const std::string& what) {
    if (!ok) fail(ErrorKind::DomainViolation, what);
}

std::string qstr(const Rational& q) { return q.get_str(); }

} // namespace

FieldPtr theta_field(int n, int k) { return root_of_unity(2 * k + 1, 3 * n, "t").field(); }
FieldPtr eps_field(int n, int k) { return root_of_unity(2 * k + 1, n, "e").field(); }

FieldPtr sqrt_minus3_field() {
    static FieldPtr f = FieldSpec::make(UniPoly::from_ints({3, 0, 1}), EmbeddingHint{0, Rational(4330127, 2500000)}, "s");
    return f;
}

FieldPtr octic_field() {
    // Roots satisfy a^2 = 2 zeta_5^j; the hint picks sqrt(2) exp(i pi / 5).
    static FieldPtr f = FieldSpec::make(UniPoly::from_ints({16, 0, 8, 0, 4, 0, 2, 0, 1}),
                                        EmbeddingHint{Rational(std::sqrt(2.0) * std::cos(M_PI / 5)),
                                                      Rational(std::sqrt(2.0) * std::sin(M_PI / 5))},
                                        "a");
    return f;
}

PhiFamily build_phi_family(Family fam, const FamilyParams& p) {
    PhiFamily F;
    F.family = fam;
    F.params = p;
    const Rational& a = p.alpha;
    switch (fam) {
    case Family::Thm31: {
        if (p.n < 3) fail(ErrorKind::UnsupportedN, "THM31 needs n >= 3");
        domain(a != 0, "THM31 needs alpha != 0");
        domain(p.k >= 0 && p.k <= 3 * p.n - 1, "THM31 needs 0 <= k <= 3n-1");
        FieldElement theta = root_of_unity(2 * p.k + 1, 3 * p.n, "t");
        FieldPtr f = theta.field();
        FieldElement d = theta - fe(f, 1);
        FieldElement one = fe(f, 1);
        F.field = f;
        F.phi = {{{one, fe(f, 2 * p.beta / a), -(one + d + d * d).scaled(1 / a)},
                  {fe(f, 0), fe(f, -1), fe(f, 0)},
                  {fe(f, a), fe(f, p.beta), d}}};
        F.n = p.n;
        F.k = 2;
        break;
    }
    case Family::Thm33: {
        if (p.n < 4) fail(ErrorKind::UnsupportedN, "THM33 needs n >= 4");
        domain(p.gamma != 0 && p.delta != 0, "THM33 needs gamma, delta != 0");
        domain(a != p.gamma, "THM33 needs alpha != gamma");
        domain(p.beta != 0, "THM33 needs beta != 0 (entries divide by beta)");
        domain(p.k >= 0 && p.k <= p.n - 1, "THM33 needs 0 <= k <= n-1");
        FieldElement eps = root_of_unity(2 * p.k + 1, p.n, "e");
        FieldPtr f = eps.field();
        const Rational &b = p.beta, &g = p.gamma, &dl = p.delta;
        F.field = f;
        F.phi = {{{fe(f, a), fe(f, b), (eps.scaled(g * g) - fe(f, a * a)).scaled(b / (dl * (a - g)))},
                  {fe(f, 0), fe(f, g), fe(f, 0)},
                  {fe(f, dl * (a - g) / b), fe(f, dl), fe(f, -a)}}};
        F.n = p.n;
        F.k = 1;
        break;
    }
    case Family::Thm35: {
        domain(a != 0 && a != 1, "THM35 needs alpha not in {0, 1}");
        FieldPtr f = FieldSpec::rationals();
        F.field = f;
        F.phi = {{{fe(f, a), fe(f, 2 * (1 - a)), fe(f, 2 + a - a * a)},
                  {fe(f, -1), fe(f, 0), fe(f, a + 1)},
                  {fe(f, 1), fe(f, -2), fe(f, 1 - a)}}};
        F.n = 3;
        F.k = 2;
        break;
    }
    case Family::Thm43: {
        domain(a != 0, "THM43 needs alpha != 0");
        FieldPtr f = sqrt_minus3_field();
        FieldElement s = FieldElement::gen(f);
        auto lin = [&](long c1, long c0) { return s.scaled(c1) + fe(f, c0); };  // c1 s + c0
        F.field = f;
        F.phi = {{{lin(37, 3).scaled(2 * a * a * a / 343), fe(f, a), -lin(5, 11).scaled(2 * a * a / 49)},
                  {lin(11, -15).scaled(a * a / 49), fe(f, 1), -lin(5, 11).scaled(a / 14)},
                  // printed with a leading minus; the + sign is the one satisfying the gluing conditions
                  {lin(2, 3).scaled(a / 7), fe(f, 0), fe(f, 0)}}};
        F.n = 3;
        F.k = 2;
        break;
    }
    case Family::Sec23: {
        FieldPtr f = octic_field();
        FieldElement al = FieldElement::gen(f);
        F.field = f;
        F.phi = {{{fe(f, 0), fe(f, 0), -(al * al).scaled(Rational(1, 2))},
                  {fe(f, 0), fe(f, 1), fe(f, 0)},
                  {fe(f, 1), fe(f, 0), al}}};
        F.n = 2;
        F.k = 3;
        break;
    }
    }
    domain(!mat_det(F.phi).is_zero(), "phi is singular for these parameters");
    F.base = fam == Family::Thm43 ? builtin_cubic(F.field) : builtin_phi(F.n, F.field);
    return F;
}

void VerificationReport::add(std::string name, bool pass, std::string detail) {
    checks.push_back({std::move(name), pass, std::move(detail)});
    overall = overall && pass;
}

void VerificationReport::merge(const VerificationReport& o) {
    for (auto& c : o.checks) add(c.name, c.pass, c.detail);
    notes.insert(notes.end(), o.notes.begin(), o.notes.end());
}

std::string VerificationReport::to_string() const {
    std::ostringstream os;
    os << subject;
    for (auto& [k, v] : params) os << " " << k << "=" << v;
    os << ": " << (overall ? "PASS" : "FAIL") << "\n";
    for (auto& c : checks) {
        os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name;
        if (!c.detail.empty()) os << " -- " << c.detail;
        os << "\n";
    }
    for (auto& [k, v] : notes) os << "  " << k << ": " << v << "\n";
    return os.str();
}

namespace {

std::vector<std::pair<std::string, std::string>> param_list(Family fam, const FamilyParams& p) {
    switch (fam) {
    case Family::Thm31:
        return {{"n", std::to_string(p.n)}, {"k", std::to_string(p.k)}, {"alpha", qstr(p.alpha)}, {"beta", qstr(p.beta)}};
    case Family::Thm33:
        return {{"n", std::to_string(p.n)}, {"k", std::to_string(p.k)}, {"alpha", qstr(p.alpha)},
                {"beta", qstr(p.beta)},     {"gamma", qstr(p.gamma)},   {"delta", qstr(p.delta)}};
    case Family::Thm35:
    case Family::Thm43: return {{"alpha", qstr(p.alpha)}};
    case Family::Sec23: return {};
    }
    return {};
}

} // namespace

std::optional<PicLatticeMatrix> family_picard_matrix(Family fam, int n) {
    switch (fam) {
    case Family::Thm31: return build_matrix(PicardFamily::Thm31, n);
    case Family::Thm33: return build_matrix(PicardFamily::Thm33, n);
    case Family::Thm35: return build_matrix(PicardFamily::Thm31, 3);
    case Family::Thm43: return build_matrix(PicardFamily::Thm43);
    case Family::Sec23: return std::nullopt;
    }
    return std::nullopt;
}

namespace {

std::string residual_detail(const GluingReport& g) {
    std::string s;
    for (auto& [name, v] : g.residuals) s += (s.empty() ? "" : ", ") + name + " = " + v.to_string();
    return s;
}

void gluing_check(VerificationReport& rep, const std::vector<RationalMapP2>& maps, const ProjPoint& p,
                  const ProjPoint& q, int cp, int cq, const GluingFamily& gf, int order) {
    const std::string name = "gluing " + gf.id();
    try {
        Germ2 g = germ_of_chain(maps, p, q, cp, cq, order > 0 ? order : gf.default_order());
        GluingReport gr = check_gluing(g, gf);
        rep.add(name, gr.pass, residual_detail(gr));
    } catch (const Error& e) {
        rep.add(name, false, e.what());
    }
}

// Tower points are stored over Q; move them into the family's field.
std::vector<ProjPoint> over(const FieldPtr& f, const std::vector<ProjPoint>& pts) {
    std::vector<ProjPoint> out;
    for (auto& p : pts)
        out.push_back(ProjPoint::make(FieldElement(f, p[0].rational_value()), FieldElement(f, p[1].rational_value()),
                                      FieldElement(f, p[2].rational_value())));
    return out;
}

std::string point_list(const std::vector<ProjPoint>& pts) {
    std::string s;
    for (auto& p : pts) s += (s.empty() ? "" : ", ") + p.to_string();
    return s;
}

void add_lambda_note(VerificationReport& rep, Family fam, int n) {
    auto m = family_picard_matrix(fam, n);
    if (!m) return;
    SpectralRadius sr = spectral_radius(*m, 40);
    rep.notes.emplace_back("lambda", to_string(Interval(sr.root.lo, sr.root.hi), 10));
}

VerificationReport orbit_phi_type(const PhiFamily& F, const OrbitOptions& opt) {
    VerificationReport rep;
    const int n = F.n;
    const int k = opt.exponent.value_or(F.k);
    const FieldPtr& f = F.field;
    const ProjPoint P = ProjPoint::make(f, 1, 0, 0);
    const RationalMapP2 L = RationalMapP2::linear(F.phi);
    const std::string base = "Phi_" + std::to_string(n);

    const int blowups = (k + 1) * (2 * n - 1);
    rep.add("(k+1)(2n-1) >= 10", blowups >= 10, std::to_string(blowups) + " blowups, k = " + std::to_string(k));
    rep.notes.emplace_back("points", std::to_string(blowups));

    std::vector<ProjPoint> orbit{map_apply(L, P)};
    std::string ind_detail;
    for (int i = 1; i <= k; ++i) {
        if (in_indeterminacy(F.base, orbit.back())) {
            ind_detail = "step " + std::to_string(i) + ": " + orbit.back().to_string() + " in Ind " + base;
            break;
        }
        orbit.push_back(map_apply(L, map_apply(F.base, orbit.back())));
    }
    bool avoids = true;
    for (int i = 0; i < k && i < static_cast<int>(orbit.size()); ++i)
        if (orbit[i] == P) avoids = false;
    rep.add("(phi " + base + ")^i phi(P) != P for 0 <= i <= k-1", avoids && ind_detail.empty(), point_list(orbit));
    rep.add("orbit avoids Ind " + base + " before closing", ind_detail.empty(), ind_detail);
    const bool closes = static_cast<int>(orbit.size()) == k + 1 && orbit[k] == P;
    rep.add("(phi " + base + ")^k phi(P) = P", closes, orbit.size() == static_cast<size_t>(k + 1) ? orbit.back().to_string() : "orbit broken");

    std::vector<std::vector<ProjPoint>> sets;
    sets.push_back(n >= 3 ? over(f, supports(builtin_tower(TowerFamily::PhiNXi1, n))) : std::vector<ProjPoint>{P});
    for (int i = 0; i < k && i < static_cast<int>(orbit.size()); ++i) sets.push_back({orbit[i]});
    rep.add("supports pairwise disjoint", static_cast<int>(sets.size()) == k + 1 && supports_pairwise_disjoint(sets),
            std::to_string(sets.size()) + " support sets");

    std::vector<RationalMapP2> maps{L};
    for (int i = 0; i < k; ++i) {
        maps.push_back(F.base);
        maps.push_back(L);
    }
    GluingFamily gf = n == 2 ? GluingFamily{GluingKind::Phi2Quadratic, 2} : GluingFamily{GluingKind::PhiN, n};
    gluing_check(rep, maps, P, P, 0, 0, gf, opt.order);

    if (F.family == Family::Thm35 && orbit.size() >= 2) {
        // Representatives with last coordinate 1, as in the printed points.
        auto rep_z = [](const ProjPoint& q) {
            std::array<FieldElement, 3> c = q.coords();
            if (!c[2].is_zero()) {
                FieldElement iz = c[2].inv();
                for (auto& x : c) x = x * iz;
            }
            return c;
        };
        Mat3 m{rep_z(P), rep_z(orbit[0]), rep_z(orbit[1])};
        FieldElement det = mat_det(m);
        rep.add("P, phi(P), phi Phi_3 phi(P) not collinear", !det.is_zero(),
                "det = " + det.to_string() + "; points " + point_list({P, orbit[0], orbit[1]}));
    }
    return rep;
}

VerificationReport orbit_cubic(const PhiFamily& F, const OrbitOptions& opt) {
    VerificationReport rep;
    const int k = opt.exponent.value_or(F.k);
    const FieldPtr& f = F.field;
    const ProjPoint R = ProjPoint::make(f, 1, 0, 0), P = ProjPoint::make(f, 0, 0, 1), Q = ProjPoint::make(f, 0, 1, 0);
    const RationalMapP2 L = RationalMapP2::linear(F.phi);

    const int blowups = (k + 1) * 5;
    rep.add("blowup count >= 10", blowups >= 10, std::to_string(blowups) + " blowups, k = " + std::to_string(k));
    rep.notes.emplace_back("points", std::to_string(blowups));

    // Images of the base points Q, R of xi_2.
    std::vector<std::vector<ProjPoint>> images{{map_apply(L, Q), map_apply(L, R)}};
    std::string ind_detail;
    for (int i = 1; i <= k && ind_detail.empty(); ++i) {
        std::vector<ProjPoint> next;
        for (auto& q : images.back()) {
            if (in_indeterminacy(F.base, q)) {
                ind_detail = "step " + std::to_string(i) + ": " + q.to_string() + " in Ind f";
                break;
            }
            next.push_back(map_apply(L, map_apply(F.base, q)));
        }
        if (ind_detail.empty()) images.push_back(next);
    }
    rep.add("orbit avoids Ind f before closing", ind_detail.empty(), ind_detail);
    const bool closes = static_cast<int>(images.size()) == k + 1 && images[k][0] == R && images[k][1] == P;
    rep.add("(phi f)^k phi sends Q to R and R to P", closes,
            static_cast<int>(images.size()) == k + 1 ? point_list(images[k]) : "orbit broken");

    std::vector<std::vector<ProjPoint>> sets{over(f, supports(builtin_tower(TowerFamily::CubicXi1)))};
    for (int i = 0; i < k && i < static_cast<int>(images.size()); ++i) sets.push_back(images[i]);
    std::string detail;
    for (auto& s : sets) detail += "{" + point_list(s) + "} ";
    rep.add("supports pairwise disjoint", static_cast<int>(sets.size()) == k + 1 && supports_pairwise_disjoint(sets),
            detail);

    std::vector<RationalMapP2> maps{L};
    for (int i = 0; i < k; ++i) {
        maps.push_back(F.base);
        maps.push_back(L);
    }
    gluing_check(rep, maps, Q, R, 1, 0, GluingFamily{GluingKind::CubicQuadratic, 0}, opt.order);
    return rep;
}

} // namespace

VerificationReport verify_orbit_and_gluing(Family fam, const FamilyParams& p, const OrbitOptions& opt) {
    PhiFamily F = build_phi_family(fam, p);
    VerificationReport rep = fam == Family::Thm43 ? orbit_cubic(F, opt) : orbit_phi_type(F, opt);
    rep.subject = family_name(fam);
    rep.params = param_list(fam, p);
    rep.notes.emplace_back("field", F.field->describe());
    add_lambda_note(rep, fam, F.n);
    return rep;
}

VerificationReport verify_degree_growth(Family fam, const FamilyParams& p, int iterates) {
    PhiFamily F = build_phi_family(fam, p);
    VerificationReport rep;
    rep.subject = family_name(fam) + " degree growth";
    rep.params = param_list(fam, p);
    RationalMapP2 g = F.automorphism();
    std::vector<int> seq = degree_sequence_modp(g, iterates);
    if (F.field->is_rational()) {
        std::vector<int> exact = degree_sequence(g, iterates);
        rep.add("exact and mod-p degree sequences agree", exact == seq);
        seq = exact;
    }
    std::string s;
    for (int d : seq) s += (s.empty() ? "" : ", ") + std::to_string(d);
    rep.notes.emplace_back("degrees", "[" + s + "]");
    try {
        GrowthClass gc = classify_growth(seq);
        rep.add("growth class Exponential", gc.tag == GrowthTag::Exponential, growth_name(gc.tag) + ": " + gc.evidence);
    } catch (const Error& e) {
        rep.add("growth class Exponential", false, e.what());
    }
    if (auto m = family_picard_matrix(fam, F.n); m && seq.size() >= 2) {
        SpectralRadius sr = spectral_radius(*m, 40);
        const Rational lam = (sr.root.lo + sr.root.hi) / 2;
        const Rational ratio = Rational(seq.back()) / seq[seq.size() - 2];
        Rational rel = abs(ratio - lam) / lam;
        rep.add("d_N / d_(N-1) within 15% of lambda", rel <= Rational(3, 20),
                "ratio " + to_decimal(ratio, 6, false) + " vs lambda " + to_string(Interval(sr.root.lo, sr.root.hi), 8));
    }
    return rep;
}

bool conjugacy_witness_check(const RationalMapP2& f0, const RationalMapP2& f1, const Mat3& m) {
    return proj_equal(f1, map_conjugate(f0, m));
}

std::optional<Rational> rational_root(const Rational& q, int n) {
    if (n < 1) return std::nullopt;
    if (q < 0 && n % 2 == 0) return std::nullopt;
    mpz_class num = abs(q.get_num()), den = q.get_den(), rn, rd;
    if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n) || !mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n))
        return std::nullopt;
    Rational r(rn, rd);
    r.canonicalize();
    return q < 0 ? -r : r;
}

namespace {
Rational qpow(const Rational& q, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= q;
    return r;
}
} // namespace

Mat3 triviality_witness(Family fam, const TrivialitySample& s, FamilyParams* moved_out) {
    const FamilyParams& b = s.base;
    FamilyParams m = s.moved;
    Mat3 M;
    FieldPtr f;
    auto diag3 = [&](const Rational& a00, const Rational& a01, const Rational& a02, const Rational& a11,
                     const Rational& a22) {
        return Mat3{{{fe(f, a00), fe(f, a01), fe(f, a02)}, {fe(f, 0), fe(f, a11), fe(f, 0)}, {fe(f, 0), fe(f, 0), fe(f, a22)}}};
    };
    switch (fam) {
    case Family::Thm35:
        f = FieldSpec::rationals();
        M = diag3(1, 0, b.alpha - m.alpha, 1, 1);
        break;
    case Family::Thm43: {
        f = sqrt_minus3_field();
        const Rational r = m.alpha / b.alpha;
        M = diag3(1, 0, 0, r, r * r);
        break;
    }
    case Family::Thm31: {
        f = theta_field(b.n, b.k);
        auto mu = rational_root(m.alpha / b.alpha, b.n);
        if (!mu) fail(ErrorKind::RootNotInField, "alpha/alpha0 = " + qstr(m.alpha / b.alpha) + " has no rational n-th root");
        const Rational mn = qpow(*mu, b.n);
        M = diag3(1, (m.beta - b.beta * *mu) / (mn * b.alpha), 0, 1 / qpow(*mu, b.n - 1), 1 / mn);
        break;
    }
    case Family::Thm33: {
        f = eps_field(b.n, b.k);
        if (!s.mu) fail(ErrorKind::InvalidArgument, "THM33 samples need mu");
        const Rational& mu = *s.mu;
        const int n = b.n;
        const Rational mn = qpow(mu, n), mn1 = qpow(mu, n - 1);
        m.beta = mn * b.beta * b.gamma * m.delta * (m.gamma - m.alpha) / (m.gamma * b.delta * (b.gamma - b.alpha));
        const Rational A = b.beta * mn1 * (m.gamma * b.delta - mu * b.gamma * m.delta) / (m.gamma * b.delta * (b.gamma - b.alpha));
        const Rational B = b.beta * mn * (b.alpha * m.gamma - m.alpha * b.gamma) / (m.gamma * b.delta * (b.alpha - b.gamma));
        M = diag3(1, A, B, mn1, mn);
        break;
    }
    case Family::Sec23: fail(ErrorKind::InvalidArgument, "no printed witness for sec23");
    }
    if (moved_out) *moved_out = m;
    return M;
}

VerificationReport verify_triviality_suite(Family fam, const std::vector<TrivialitySample>& samples) {
    VerificationReport rep;
    rep.subject = family_name(fam) + " triviality";
    for (auto& s : samples) {
        std::string label = "alpha0=" + qstr(s.base.alpha) + " alpha=" + qstr(s.moved.alpha);
        if (fam == Family::Thm31 || fam == Family::Thm33) label = "n=" + std::to_string(s.base.n) + " " + label;
        try {
            FamilyParams moved;
            Mat3 M = triviality_witness(fam, s, &moved);
            if (fam == Family::Thm31 || fam == Family::Thm33)
                label += " beta0=" + qstr(s.base.beta) + " beta=" + qstr(moved.beta);
            RationalMapP2 f0 = build_phi_family(fam, s.base).automorphism();
            RationalMapP2 f1 = build_phi_family(fam, moved).automorphism();
            // The printed identity is phi_moved base = M^-1 phi_0 base M.
            rep.add("witness " + label, conjugacy_witness_check(f1, f0, M));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::RootNotInField) throw;
            rep.notes.emplace_back("skipped " + label, e.what());
        }
    }
    if (fam == Family::Thm43 && !samples.empty()) {
        // u = phi_alpha^-1 diag(1, w, w^2) phi_alpha0 must fix zeta_2 (germ at Q in the (x, z) chart) and R.
        // With phi as above, phi_alpha(Q) = (alpha : 1 : 0) forces w = alpha0 / alpha.
        const auto& s = samples.front();
        FieldPtr f = sqrt_minus3_field();
        Mat3 p0 = build_phi_family(fam, s.base).phi, p1 = build_phi_family(fam, s.moved).phi;
        const ProjPoint Q = ProjPoint::make(f, 0, 1, 0), R = ProjPoint::make(f, 1, 0, 0);
        const Rational good = s.base.alpha / s.moved.alpha;
        const RationalMapP2 cf = builtin_cubic(f), cfi = builtin_cubic_inverse(f);
        const RationalMapP2 L0 = RationalMapP2::linear(p0), L1i = RationalMapP2::linear(mat_inverse(p1));
        for (const Rational& w : std::vector<Rational>{good, s.moved.alpha / s.base.alpha}) {
            Mat3 W{{{fe(f, 1), fe(f, 0), fe(f, 0)}, {fe(f, 0), fe(f, w), fe(f, 0)}, {fe(f, 0), fe(f, 0), fe(f, w * w)}}};
            const bool expect = w == good;
            const std::string at = " at w = " + qstr(w);
            std::vector<std::pair<std::string, std::vector<RationalMapP2>>> chains{
                {"(ii)", {L0, RationalMapP2::linear(W), L1i}},
                {"(iii)", {L0, cf, L0, RationalMapP2::linear(W), L1i, cfi, L1i}}};
            for (auto& [tag, maps] : chains) {
                if (tag == "(iii)" && !expect) continue;
                const std::string name = "stabilizer " + tag + (expect ? " holds" : " fails") + at;
                try {
                    GluingFamily gf{GluingKind::StabZeta2, 0};
                    GluingReport gr = check_gluing(germ_of_chain(maps, Q, Q, 1, 1, gf.default_order()), gf);
                    ProjPoint r = R;
                    for (auto& m : maps) r = map_apply(m, r);
                    const bool ok = gr.pass && r == R;
                    rep.add(name, ok == expect, residual_detail(gr) + "; R -> " + r.to_string());
                } catch (const Error& e) {
                    rep.add(name, !expect, e.what());
                }
            }
        }
    }
    return rep;
}

std::vector<TrivialitySample> default_triviality_samples(Family fam) {
    auto P = [](int n, int k, Rational a, Rational b = 0, Rational g = 1, Rational d = 1) {
        FamilyParams p;
        p.n = n;
        p.k = k;
        p.alpha = a;
        p.beta = b;
        p.gamma = g;
        p.delta = d;
        return p;
    };
    switch (fam) {
    case Family::Thm35:
        return {{P(3, 0, 2), P(3, 0, 3), {}}, {P(3, 0, 2), P(3, 0, 5), {}}, {P(3, 0, 2), P(3, 0, -1), {}},
                {P(3, 0, 3), P(3, 0, Rational(1, 2)), {}}};
    case Family::Thm43:
        return {{P(3, 0, 1), P(3, 0, 2), {}}, {P(3, 0, 1), P(3, 0, -3), {}}, {P(3, 0, 2), P(3, 0, Rational(1, 2)), {}}};
    case Family::Thm31:
        return {{P(3, 0, 1, 0), P(3, 0, 8, 0), {}},
                {P(3, 0, 1, 2), P(3, 0, 8, 5), {}},
                {P(3, 0, 2, 1), P(3, 0, -16, 3), {}},
                {P(4, 1, 1, 1), P(4, 1, 16, -1), {}}};
    case Family::Thm33:
        return {{P(4, 0, 0, 1, 1, 1), P(4, 0, 2, 0, 3, 1), Rational(2)},
                {P(4, 0, 1, 2, 3, 1), P(4, 0, 0, 0, 1, 2), Rational(1)},
                {P(5, 0, 0, 1, 1, 1), P(5, 0, 2, 0, 3, 1), Rational(2)},
                {P(4, 1, 0, 1, 1, 1), P(4, 1, 3, 0, 2, -1), Rational(-1)}};
    case Family::Sec23: return {};
    }
    return {};
}

VerificationReport verify_normal_forms() {
    VerificationReport rep;
    rep.subject = "normal-forms";
    auto mono = [](const FieldPtr& f, int a, int b, int c, const FieldElement& k) {
        return HomoPoly::monomial(f, 3, Mono{a, b, c}, k);
    };
    // A (phi Phi_n) A^-1 = (x z^(n-1) : z^n : x^n + z^n - y z^(n-1)) with delta_k = -2.
    struct R32 {
        int n;
        long alpha, beta, u;
    };
    for (auto s : {R32{3, 8, 0, -2}, R32{3, 1, 3, -1}, R32{3, -27, 1, 3}, R32{5, 32, 0, -2}, R32{3, 8, 0, 2}}) {
        FamilyParams p;
        p.n = s.n;
        p.k = (3 * s.n - 1) / 2;
        p.alpha = s.alpha;
        p.beta = s.beta;
        PhiFamily F = build_phi_family(Family::Thm31, p);
        Mat3 A = mat_from_ints(F.field, {{{0, s.u, 0}, {s.alpha, s.beta, -1}, {0, 0, 1}}});
        RationalMapP2 rhs = builtin_bedford_kim(s.n, FieldElement(F.field, 1), {});
        const bool holds = proj_equal(map_conjugate(F.automorphism(), A), rhs);
        const bool root_ok = qpow(Rational(s.u), s.n) == -Rational(s.alpha);
        std::string name = "normal form x^n + z^n - y z^(n-1): n=" + std::to_string(s.n) + " alpha=" + std::to_string(s.alpha) +
                           " beta=" + std::to_string(s.beta) + " u=" + std::to_string(s.u);
        if (root_ok)
            rep.add(name, holds, "u^n = -alpha");
        else
            rep.add(name + " (u^n = alpha) is not a conjugacy", !holds, "u^n = alpha does not give the normal form");
    }
    // A (phi Phi_n) A^-1 = (x z^(n-1) : z^n : x^n + eps y z^(n-1)).
    struct R34 {
        int n, k;
        long alpha, beta, gamma, delta;
    };
    for (auto s : {R34{4, 0, 0, 1, 1, 1}, R34{4, 0, 2, 1, 1, -1}, R34{4, 0, 3, 2, 1, -1}, R34{5, 0, 0, 1, 1, 32}}) {
        FamilyParams p;
        p.n = s.n;
        p.k = s.k;
        p.alpha = s.alpha;
        p.beta = s.beta;
        p.gamma = s.gamma;
        p.delta = s.delta;
        std::string name = "normal form x^n + eps y z^(n-1): n=" + std::to_string(s.n) + " (alpha,beta,gamma,delta)=(" +
                           std::to_string(s.alpha) + "," + std::to_string(s.beta) + "," + std::to_string(s.gamma) +
                           "," + std::to_string(s.delta) + ")";
        PhiFamily F = build_phi_family(Family::Thm33, p);
        const FieldPtr& f = F.field;
        FieldElement eps = F.phi[0][2];  // recover eps from the (0,2) entry
        eps = (eps.scaled(Rational(s.delta * (s.alpha - s.gamma)) / s.beta) + FieldElement(f, s.alpha * s.alpha))
                  .scaled(Rational(1, s.gamma * s.gamma));
        // eps^n = -1, so u^n = -(alpha - gamma) gamma^(n-1) beta^(n-1) delta.
        Rational un = -Rational(s.alpha - s.gamma) * qpow(Rational(s.gamma), s.n - 1) * qpow(Rational(s.beta), s.n - 1) * s.delta;
        auto u = rational_root(un, s.n);
        if (!u) {
            rep.notes.emplace_back("skipped " + name, "u not rational");
            continue;
        }
        Mat3 A{{{FieldElement(f, 0), FieldElement(f, *u), FieldElement(f, 0)},
                {FieldElement(f, s.delta * (s.alpha - s.gamma)), FieldElement(f, s.beta * s.delta),
                 FieldElement(f, -s.alpha * s.beta)},
                {FieldElement(f, 0), FieldElement(f, 0), eps.scaled(s.beta * s.gamma)}}};
        FieldElement one(f, 1);
        RationalMapP2 rhs = RationalMapP2::make(mono(f, 1, 0, s.n - 1, one), mono(f, 0, 0, s.n, one),
                                                mono(f, s.n, 0, 0, one) + mono(f, 0, 1, s.n - 1, eps));
        rep.add(name, proj_equal(map_conjugate(F.automorphism(), A), rhs), "u = " + qstr(*u));
    }
    // A f_a = f_(s^2 a) B at n = 5.
    {
        FieldPtr f = FieldSpec::rationals();
        const Rational s = 2, a = 1, c = 1;
        auto F = [&](const Rational& av) { return builtin_bedford_kim(5, FieldElement(f, c), {FieldElement(f, av)}); };
        Mat3 A{{{fe(f, 1), fe(f, 0), fe(f, 0)},
                {fe(f, 0), fe(f, 1 / s), fe(f, 0)},
                {fe(f, 0), fe(f, c * (1 / s - qpow(s, 4))), fe(f, qpow(s, 4))}}};
        Mat3 B{{{fe(f, s), fe(f, 0), fe(f, 0)}, {fe(f, 0), fe(f, qpow(s, 5)), fe(f, 0)}, {fe(f, 0), fe(f, 0), fe(f, 1)}}};
        const bool holds = proj_equal(map_compose_linear_left(A, F(a)), map_compose_linear_right(F(s * s * a), B));
        rep.add("A f_a = f_(s^2 a) B (n=5, s=2, a=1, c=1)", holds);
    }
    return rep;
}

} // namespace crem
