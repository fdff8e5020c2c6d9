// Command-line front end. Exit codes: 0 pass, 1 verification failure, 2 input error.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "crem/error.hpp"
#include "crem/mapfile.hpp"
#include "crem/picard.hpp"
#include "crem/verifier.hpp"

using namespace crem;
using ojson = nlohmann::ordered_json;

namespace {

struct Global {
    bool json = false;
    bool deterministic = false;
    unsigned precision_bits = 64;
    std::string command;
};

int digits_for(unsigned bits) { return std::max(6, static_cast<int>(bits * 0.30103)); }

Rational parse_rational(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) fail(ErrorKind::ParseError, "not a rational number: \"" + s + "\"");
    q.canonicalize();
    return q;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ParseError, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

MapDefinition load_map(const std::string& arg) {
    MapDefinition d;
    RationalMapP2 m;
    if (parse_builtin_map(arg, m)) {
        d.field = m.field();
        d.map = m;
        return d;
    }
    std::ifstream probe(arg);
    if (!probe) fail(ErrorKind::ParseError, "\"" + arg + "\" is neither a built-in map nor a readable file");
    return parse_map_definition(read_file(arg));
}

ojson interval_json(const Interval& iv, unsigned bits) {
    const int d = digits_for(bits);
    return {{"lo", to_decimal(iv.lo, d, false)}, {"hi", to_decimal(iv.hi, d, true)}};
}

ojson poly_json(const UniPoly& p) {
    ojson a = ojson::array();
    for (auto& c : p.coeffs()) a.push_back(c.get_str());
    return a;
}

ojson report_json(const VerificationReport& r) {
    ojson j;
    j["subject"] = r.subject;
    ojson params = ojson::object();
    for (auto& [k, v] : r.params) params[k] = v;
    j["params"] = params;
    j["overall"] = r.overall;
    ojson checks = ojson::array();
    for (auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = checks;
    ojson notes = ojson::object();
    for (auto& [k, v] : r.notes) notes[k] = v;
    j["notes"] = notes;
    return j;
}

// Emits text or JSON and returns the exit code.
int emit(const Global& g, ojson body, const std::string& text, bool pass,
         std::chrono::steady_clock::time_point t0) {
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (g.json) {
        ojson j;
        j["schema"] = 1;
        j["command"] = g.command;
        j["pass"] = pass;
        j["results"] = std::move(body);
        if (!g.deterministic) j["timing_ms"] = ms;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text;
        if (!g.deterministic) std::cout << "time: " << to_decimal(Rational(ms), 1, true) << " ms\n";
    }
    return pass ? 0 : 1;
}

// ---- analyze / growth on explicit maps ----

struct AnalyzeOpts {
    std::string map;
    int iters = 5;
    int henon_deg = 0;
};

RationalMapP2 resolve_map(const AnalyzeOpts& o, MapDefinition& def) {
    if (o.map == "henon" && o.henon_deg > 0) {
        std::vector<Rational> p(o.henon_deg + 1, 0);
        p.back() = 1;
        def.map = builtin_henon(p, 1);
        def.field = def.map.field();
    } else {
        def = load_map(o.map);
    }
    return def.map;
}

int cmd_analyze(const Global& g, const AnalyzeOpts& o, bool growth_only) {
    auto t0 = std::chrono::steady_clock::now();
    if (o.iters < 1) fail(ErrorKind::InvalidArgument, "--iters must be >= 1");
    MapDefinition def;
    RationalMapP2 f = resolve_map(o, def);
    const bool exact = f.field()->is_rational();
    std::vector<int> seq = exact ? degree_sequence(f, o.iters) : degree_sequence_modp(f, o.iters);
    ojson j;
    std::ostringstream os;
    j["map"] = f.to_string();
    j["field"] = f.field()->describe();
    j["degree"] = f.degree();
    j["degrees"] = seq;
    j["degree_method"] = exact ? "exact" : "mod-p line restriction";
    os << "map: " << f.to_string() << "\nfield: " << f.field()->describe() << "\ndegrees ("
       << (exact ? "exact" : "mod p") << "): [";
    for (size_t i = 0; i < seq.size(); ++i) os << (i ? ", " : "") << seq[i];
    os << "]\n";
    bool pass = true;
    try {
        GrowthClass gc = classify_growth(seq);
        j["growth"] = growth_name(gc.tag);
        j["growth_evidence"] = gc.evidence;
        os << "growth: " << growth_name(gc.tag) << " (" << gc.evidence << ")\n";
        if (gc.tag == GrowthTag::Exponential) {
            // The ratio is exact; report it with a decimal enclosure.
            j["lambda_estimate"] = {{"ratio", gc.last_ratio.get_str()}, {"interval", interval_json(Interval(gc.last_ratio), 16)}};
            os << "lambda estimate: d_N/d_(N-1) = " << gc.last_ratio.get_str() << " in "
               << to_string(Interval(gc.last_ratio), 6) << "\n";
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Inconclusive) throw;
        j["growth"] = "Inconclusive";
        j["growth_evidence"] = e.what();
        os << "growth: Inconclusive (" << e.what() << ")\n";
        pass = false;
    }
    if (!growth_only) {
        HomoPoly jac = jacobian_det(f);
        j["jacobian"] = jac.to_string();
        os << "jacobian: " << jac.to_string() << "\n";
        ojson curves = ojson::array();
        for (auto& c : def.curves) {
            const bool d = poly_divides(c, jac);
            curves.push_back({{"curve", c.to_string()}, {"divides_jacobian", d}});
            os << "curve " << c.to_string() << (d ? " divides" : " does not divide") << " the jacobian\n";
        }
        j["curves"] = curves;
        ojson pts = ojson::array();
        for (auto& p : def.points) {
            const bool ind = in_indeterminacy(f, p);
            ojson r = {{"point", p.to_string()}, {"indeterminate", ind}};
            os << "point " << p.to_string() << (ind ? " is in Ind" : " is not in Ind");
            if (!ind) {
                r["image"] = map_apply(f, p).to_string();
                os << ", image " << map_apply(f, p).to_string();
            }
            os << "\n";
            pts.push_back(r);
        }
        j["points"] = pts;
    }
    return emit(g, j, os.str(), pass, t0);
}

// ---- verify ----

struct FamilyOpts {
    std::string n = "", k = "", alpha = "", beta = "", gamma = "", delta = "";
    int order = 0;
    int exponent = 0;
    std::string family;
    bool growth = true;
};

FamilyParams family_params(Family fam, const FamilyOpts& o) {
    FamilyParams p;
    if (fam == Family::Thm33) {
        p.n = 4;
        p.alpha = 0;
        p.beta = 1;
    }
    if (fam == Family::Thm35) p.alpha = 2;
    if (!o.n.empty()) p.n = static_cast<int>(parse_rational(o.n).get_num().get_si());
    if (!o.k.empty()) p.k = static_cast<int>(parse_rational(o.k).get_num().get_si());
    if (!o.alpha.empty()) p.alpha = parse_rational(o.alpha);
    if (!o.beta.empty()) p.beta = parse_rational(o.beta);
    if (!o.gamma.empty()) p.gamma = parse_rational(o.gamma);
    if (!o.delta.empty()) p.delta = parse_rational(o.delta);
    return p;
}

void refine_lambda_note(VerificationReport& r, Family fam, int n, unsigned bits) {
    auto m = family_picard_matrix(fam, n);
    if (!m) return;
    SpectralRadius sr = spectral_radius(*m, bits);
    for (auto& [k, v] : r.notes)
        if (k == "lambda") v = to_string(sr.root.interval(), digits_for(bits));
}

int cmd_verify(const Global& g, const std::string& target, const FamilyOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    if (target == "normal-forms") {
        rep = verify_normal_forms();
    } else if (target == "triviality") {
        auto fam = family_from_name(o.family);
        if (!fam || *fam == Family::Sec23) fail(ErrorKind::InvalidArgument, "--family must be thm31, thm33, thm35 or thm43");
        rep = verify_triviality_suite(*fam, default_triviality_samples(*fam));
    } else {
        auto fam = family_from_name(target);
        if (!fam) fail(ErrorKind::InvalidArgument, "unknown verification target \"" + target + "\"");
        FamilyParams p = family_params(*fam, o);
        OrbitOptions opt;
        opt.order = o.order;
        if (o.exponent > 0) opt.exponent = o.exponent;
        rep = verify_orbit_and_gluing(*fam, p, opt);
        refine_lambda_note(rep, *fam, build_phi_family(*fam, p).n, g.precision_bits);
        if (o.growth) {
            VerificationReport gr = verify_degree_growth(*fam, p);
            rep.merge(gr);
        }
    }
    return emit(g, report_json(rep), rep.to_string(), rep.overall, t0);
}

// ---- charpoly ----

int cmd_charpoly(const Global& g, const std::string& family, int n) {
    auto t0 = std::chrono::steady_clock::now();
    auto fam = family_from_name(family);
    if (!fam || *fam == Family::Sec23) fail(ErrorKind::InvalidArgument, "--family must be thm31, thm33, thm35 or thm43");
    if (*fam == Family::Thm31 && n < 3) fail(ErrorKind::UnsupportedN, "thm31 needs --n >= 3");
    if (*fam == Family::Thm33 && n < 4) fail(ErrorKind::UnsupportedN, "thm33 needs --n >= 4");
    PicLatticeMatrix m = *family_picard_matrix(*fam, n);
    UniPoly cp = char_poly(m);
    FactorReport fr = factor_cyclotomic(cp);
    SpectralRadius sr = spectral_radius(cp, g.precision_bits);
    ojson j;
    std::ostringstream os;
    j["family"] = family_name(*fam);
    if (*fam == Family::Thm31 || *fam == Family::Thm33) j["n"] = n;
    j["dimension"] = m.dim;
    j["expanded"] = cp.to_string();
    j["coefficients"] = poly_json(cp);
    j["factored"] = fr.to_string();
    ojson fj = ojson::array();
    for (auto& c : fr.cyclotomic)
        fj.push_back({{"cyclotomic_order", c.order}, {"multiplicity", c.multiplicity}, {"coefficients", poly_json(cyclotomic(c.order))}});
    j["factors"] = {{"cyclotomic", fj}, {"rest", poly_json(fr.rest)}};
    j["lambda"] = interval_json(sr.root.interval(), g.precision_bits);
    j["lambda_certificate"] = sr.certificate;
    j["reciprocal"] = is_reciprocal_up_to_sign(cp);
    os << family_name(*fam);
    if (*fam == Family::Thm31 || *fam == Family::Thm33) os << " n=" << n;
    os << " (dimension " << m.dim << ")\n";
    os << "factored: " << fr.to_string() << "\nexpanded: " << cp.to_string() << "\n";
    os << "lambda: " << to_string(sr.root.interval(), digits_for(g.precision_bits)) << " (" << sr.certificate << ")\n";
    bool pass = true;
    if (*fam == Family::Thm33) {
        UniPoly dom = thm33_dominant_factor(n);
        const bool div = divmod(cp, dom).second.is_zero();
        // Everything except the dominant factor is cyclotomic, so its roots lie on the unit circle.
        const bool unit = fr.rest == dom;
        j["dominant_factor"] = dom.to_string();
        j["dominant_factor_divides"] = div;
        j["cofactor_on_unit_circle"] = unit;
        const int printed = 4 * n - 2;  // degree of the printed product formula
        j["note"] = "computed degree " + std::to_string(cp.degree()) + " vs printed product of degree " +
                    std::to_string(printed) + "; only the dominant factor is compared";
        os << "dominant factor " << dom.to_string() << (div ? " divides" : " does not divide") << "\n";
        os << "note: " << j["note"].get<std::string>() << "\n";
        os << "cofactor on unit circle: " << (unit ? "yes" : "no") << "\n";
        pass = div && unit;
    } else {
        UniPoly expected = *fam == Family::Thm43 ? thm43_expected_charpoly() : thm31_expected_charpoly(*fam == Family::Thm35 ? 3 : n);
        const bool eq = cp == expected;
        j["matches_printed"] = eq;
        os << "matches printed product: " << (eq ? "yes" : "no") << "\n";
        pass = eq;
    }
    return emit(g, j, os.str(), pass, t0);
}

int cmd_growth_family(const Global& g, const std::string& family, const FamilyOpts& o, int iters) {
    auto t0 = std::chrono::steady_clock::now();
    auto fam = family_from_name(family);
    if (!fam) fail(ErrorKind::InvalidArgument, "unknown family \"" + family + "\"");
    VerificationReport rep = verify_degree_growth(*fam, family_params(*fam, o), iters);
    return emit(g, report_json(rep), rep.to_string(), rep.overall, t0);
}

int cmd_list(const Global& g) {
    auto t0 = std::chrono::steady_clock::now();
    ojson fams = ojson::array();
    std::ostringstream os;
    const std::vector<std::pair<Family, std::string>> rows{
        {Family::Thm31, "phi Phi_n over Q(theta), theta^(3n) = -1; params n >= 3, k, alpha != 0, beta"},
        {Family::Thm33, "phi Phi_n over Q(eps), eps^n = -1; params n >= 4, k, alpha, beta != 0, gamma, delta"},
        {Family::Thm35, "cubic phi Phi_3 with no invariant line; param alpha not in {0, 1}"},
        {Family::Thm43, "phi f with f the cubic (y^2 z : x(xz+y^2) : y(xz+y^2)) over Q(sqrt(-3)); param alpha != 0"},
        {Family::Sec23, "quadratic phi Phi_2 over Q[x]/(x^8+2x^6+4x^4+8x^2+16)"}};
    os << "families:\n";
    for (auto& [f, d] : rows) {
        fams.push_back({{"name", family_name(f)}, {"description", d}});
        os << "  " << family_name(f) << "  " << d << "\n";
    }
    ojson maps = builtin_map_names();
    os << "built-in maps:\n";
    for (auto& m : builtin_map_names()) os << "  " << m << "\n";
    return emit(g, {{"families", fams}, {"maps", maps}}, os.str(), true, t0);
}

int input_error(const Global& g, const std::string& msg) {
    if (g.json) {
        ojson j;
        j["schema"] = 1;
        j["command"] = g.command;
        j["error"] = msg;
        std::cout << j.dump(2) << "\n";
    }
    std::cerr << "error: " << msg << "\n";
    return 2;
}

bool is_input_error(ErrorKind k) {
    switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::DomainViolation:
    case ErrorKind::UnsupportedN:
    case ErrorKind::InvalidArgument:
    case ErrorKind::RootNotInField:
        return true;
    default:
        return false;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of plane Cremona maps and their automorphism lifts"};
    app.require_subcommand(1);
    Global g;
    app.add_flag("--json", g.json, "emit a JSON report (schema 1)");
    app.add_flag("--deterministic", g.deterministic, "omit timings");
    app.add_option("--precision-bits", g.precision_bits, "width 2^-B for interval reports")->check(CLI::Range(8u, 4096u));

    AnalyzeOpts ao;
    auto* analyze = app.add_subcommand("analyze", "degree growth, jacobian and candidate checks for a map");
    analyze->add_option("map", ao.map, "built-in name or map-definition file")->required();
    analyze->add_option("--iters", ao.iters, "iterate count");
    analyze->add_option("--deg", ao.henon_deg, "degree of P for 'henon' (P = y^d, delta = 1)");

    FamilyOpts fo;
    std::string target;
    auto* verify = app.add_subcommand("verify", "verify a family: thm31 thm33 thm35 thm43 sec23 normal-forms triviality");
    verify->add_option("target", target)->required();
    for (auto* sc : {verify}) {
        sc->add_option("--n", fo.n);
        sc->add_option("--k", fo.k);
        sc->add_option("--alpha", fo.alpha);
        sc->add_option("--beta", fo.beta);
        sc->add_option("--gamma", fo.gamma);
        sc->add_option("--delta", fo.delta);
    }
    verify->add_option("--order", fo.order, "germ truncation order");
    verify->add_option("--exponent", fo.exponent, "override k in (phi base)^k phi");
    verify->add_option("--family", fo.family, "family for 'triviality'");
    bool no_growth = false;
    verify->add_flag("--no-growth", no_growth, "skip the degree-growth cross-check");

    std::string cp_family;
    int cp_n = 0;
    auto* charpoly = app.add_subcommand("charpoly", "characteristic polynomial and first dynamical degree");
    charpoly->add_option("--family", cp_family)->required();
    charpoly->add_option("--n", cp_n);

    AnalyzeOpts go;
    FamilyOpts gfo;
    std::string g_family;
    auto* growth = app.add_subcommand("growth", "degree growth of a map or of a family");
    growth->add_option("map", go.map, "built-in name or map-definition file");
    growth->add_option("--iters", go.iters);
    growth->add_option("--deg", go.henon_deg);
    growth->add_option("--family", g_family);
    growth->add_option("--n", gfo.n);
    growth->add_option("--k", gfo.k);
    growth->add_option("--alpha", gfo.alpha);
    growth->add_option("--beta", gfo.beta);
    growth->add_option("--gamma", gfo.gamma);
    growth->add_option("--delta", gfo.delta);

    auto* list = app.add_subcommand("list-families", "list families and built-in maps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    for (int i = 1; i < argc; ++i) g.command += (i > 1 ? " " : "") + std::string(argv[i]);
    fo.growth = !no_growth;

    try {
        if (*analyze) return cmd_analyze(g, ao, false);
        if (*verify) return cmd_verify(g, target, fo);
        if (*charpoly) {
            if (cp_n == 0) cp_n = cp_family == "thm33" ? 4 : 3;
            return cmd_charpoly(g, cp_family, cp_n);
        }
        if (*growth) {
            if (!g_family.empty()) return cmd_growth_family(g, g_family, gfo, go.iters);
            if (go.map.empty()) fail(ErrorKind::InvalidArgument, "growth needs a map or --family");
            return cmd_analyze(g, go, true);
        }
        if (*list) return cmd_list(g);
    } catch (const Error& e) {
        if (is_input_error(e.kind())) return input_error(g, e.what());
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
