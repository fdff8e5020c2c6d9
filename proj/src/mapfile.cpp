#include "crem/mapfile.hpp"

#include <cctype>
#include <map>

#include "crem/error.hpp"

namespace crem {

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { fail(ErrorKind::ParseError, msg); }

// Exact rational from "12", "-3/4", "1.732", "2.5e-3".
Rational parse_number(std::string s) {
    auto strip = [](std::string& t) {
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    };
    strip(s);
    if (s.empty()) parse_fail("empty number");
    try {
        if (s.find_first_of(".eE") == std::string::npos) {
            Rational q(s, 10);
            q.canonicalize();
            return q;
        }
        long exp10 = 0;
        if (auto e = s.find_first_of("eE"); e != std::string::npos) {
            exp10 = std::stol(s.substr(e + 1));
            s = s.substr(0, e);
        }
        if (auto dot = s.find('.'); dot != std::string::npos) {
            exp10 -= static_cast<long>(s.size() - dot - 1);
            s.erase(dot, 1);
        }
        if (s == "-" || s == "+" || s.empty()) parse_fail("bad number");
        mpz_class m(s[0] == '+' ? s.substr(1) : s, 10), p10;
        mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
        Rational q = exp10 < 0 ? Rational(m, p10) : Rational(m * p10);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        parse_fail("bad number \"" + s + "\"");
    } catch (const std::out_of_range&) {
        parse_fail("number out of range \"" + s + "\"");
    }
}

// Block file tokenizer.
class BlockParser {
public:
    using Value = std::vector<std::string>;  // a string is a one-element list
    using Block = std::map<std::string, std::pair<Value, bool>>;  // bool: was a list

    explicit BlockParser(const std::string& s) : s_(s) {}

    std::map<std::string, Block> parse() {
        std::map<std::string, Block> out;
        for (skip(); pos_ < s_.size(); skip()) {
            std::string name = ident();
            if (out.count(name)) error("duplicate block '" + name + "'");
            expect('{');
            Block b;
            for (skip(); peek() != '}'; skip()) {
                if (pos_ >= s_.size()) error("unterminated block '" + name + "'");
                std::string key = ident();
                expect('=');
                skip();
                if (peek() == '[') {
                    ++pos_;
                    Value v;
                    for (skip(); peek() != ']'; skip()) {
                        v.push_back(string());
                        skip();
                        if (peek() == ',') ++pos_;
                        else if (peek() != ']') error("expected ',' or ']'");
                    }
                    ++pos_;
                    b[key] = {v, true};
                } else {
                    b[key] = {{string()}, false};
                }
                skip();
                if (peek() == ',' || peek() == ';') ++pos_;
            }
            ++pos_;
            out[name] = b;
        }
        return out;
    }

    [[noreturn]] void error(const std::string& msg) const {
        int line = 1, col = 1;
        for (size_t i = 0; i < pos_ && i < s_.size(); ++i) {
            if (s_[i] == '\n') ++line, col = 1;
            else ++col;
        }
        parse_fail(msg + " at line " + std::to_string(line) + ", column " + std::to_string(col));
    }

private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip() {
        while (pos_ < s_.size()) {
            if (std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            else if (s_[pos_] == '#')
                while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
            else break;
        }
    }
    void expect(char c) {
        skip();
        if (peek() != c) error(std::string("expected '") + c + "'");
        ++pos_;
    }
    std::string ident() {
        skip();
        size_t b = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        if (b == pos_) error("expected identifier");
        return s_.substr(b, pos_ - b);
    }
    std::string string() {
        skip();
        if (peek() != '"') error("expected string");
        size_t b = ++pos_;
        while (pos_ < s_.size() && s_[pos_] != '"') ++pos_;
        if (pos_ >= s_.size()) error("unterminated string");
        return s_.substr(b, pos_++ - b);
    }

    const std::string& s_;
    size_t pos_ = 0;
};

FieldElement parse_constant(const std::string& text, const FieldPtr& f) {
    HomoPoly p = parse_homopoly(text, f);
    if (p.is_zero()) return FieldElement(f, 0);
    if (p.degree() != 0) parse_fail("expected a constant, got \"" + text + "\"");
    return p.coeff(Mono{0, 0, 0});
}

std::vector<std::string> split_args(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty() || !out.empty()) out.push_back(cur);
    return out;
}

} // namespace

EmbeddingHint parse_hint(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) parse_fail("empty embedding hint");
    if (s.back() != 'i') return {parse_number(s), 0};
    s.pop_back();
    // Split at the last sign that is not leading and not an exponent sign.
    size_t cut = std::string::npos;
    for (size_t i = s.size(); i-- > 1;)
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            cut = i;
            break;
        }
    auto imag = [&](std::string t) {
        if (t.empty() || t == "+") return Rational(1);
        if (t == "-") return Rational(-1);
        return parse_number(t);
    };
    if (cut == std::string::npos) return {0, imag(s)};
    return {parse_number(s.substr(0, cut)), imag(s.substr(cut))};
}

ProjPoint parse_point(const std::string& text, FieldPtr f) {
    std::string s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '[' || c == '(') ++depth;
        if (c == ']' || c == ')') --depth;
        if (c == ':' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 3) parse_fail("point needs three coordinates: \"" + text + "\"");
    return ProjPoint::make(parse_constant(parts[0], f), parse_constant(parts[1], f), parse_constant(parts[2], f));
}

MapDefinition parse_map_definition(const std::string& text) {
    BlockParser bp(text);
    auto blocks = bp.parse();
    for (auto& [name, b] : blocks)
        if (name != "field" && name != "map" && name != "candidates") parse_fail("unknown block '" + name + "'");
    auto scalar = [](const BlockParser::Block& b, const std::string& key) -> std::optional<std::string> {
        auto it = b.find(key);
        if (it == b.end()) return std::nullopt;
        if (it->second.second) parse_fail("'" + key + "' must be a string");
        return it->second.first[0];
    };
    MapDefinition d;
    d.field = FieldSpec::rationals();
    // Bad degrees, moduli or zero maps in a file are input errors too.
    try {
        if (auto it = blocks.find("field"); it != blocks.end()) {
            auto mod = scalar(it->second, "modulus");
            if (!mod) parse_fail("field block needs a modulus");
            UniPoly m = parse_unipoly(*mod);
            std::optional<EmbeddingHint> hint;
            if (auto h = scalar(it->second, "hint")) hint = parse_hint(*h);
            std::string gen = scalar(it->second, "gen").value_or("w");
            d.field = m.degree() == 1 ? FieldSpec::rationals() : FieldSpec::make(m, hint, gen);
        }
        auto mit = blocks.find("map");
        if (mit == blocks.end()) parse_fail("missing map block");
        auto cit = mit->second.find("components");
        if (cit == mit->second.end() || !cit->second.second || cit->second.first.size() != 3)
            parse_fail("map block needs components = [three strings]");
        auto& c = cit->second.first;
        d.map = RationalMapP2::parse({c[0], c[1], c[2]}, d.field);
        if (auto it = blocks.find("candidates"); it != blocks.end()) {
            if (auto p = it->second.find("points"); p != it->second.end())
                for (auto& s : p->second.first) d.points.push_back(parse_point(s, d.field));
            if (auto p = it->second.find("curves"); p != it->second.end())
                for (auto& s : p->second.first) d.curves.push_back(parse_homopoly(s, d.field));
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ParseError) throw;
        parse_fail(std::string("map file: ") + e.what());
    }
    return d;
}

std::vector<std::string> builtin_map_names() {
    return {"phi(n)", "cubic_quadratic", "cubic_inverse", "example12_linear", "example12_quadratic(eps)",
            "henon(p0, ..., pd, delta)", "bedford_kim(n, c, a...)"};
}

bool parse_builtin_map(const std::string& text, RationalMapP2& out) {
    std::string name = text, inner;
    if (auto p = text.find('('); p != std::string::npos) {
        if (text.back() != ')') parse_fail("unbalanced parentheses in \"" + text + "\"");
        name = text.substr(0, p);
        inner = text.substr(p + 1, text.size() - p - 2);
    }
    std::vector<Rational> args;
    for (auto& a : split_args(inner)) args.push_back(parse_number(a));
    auto need = [&](size_t lo, size_t hi) {
        if (args.size() < lo || args.size() > hi) parse_fail("wrong number of arguments for " + name);
    };
    auto as_int = [&](const Rational& q) {
        if (q.get_den() != 1 || !q.get_num().fits_sint_p()) parse_fail(name + " needs an integer argument");
        return static_cast<int>(q.get_num().get_si());
    };
    auto Q = FieldSpec::rationals();
    if (name == "phi") {
        need(1, 1);
        out = builtin_phi(as_int(args[0]));
    } else if (name == "cubic_quadratic" || name == "cubic") {
        need(0, 0);
        out = builtin_cubic();
    } else if (name == "cubic_inverse") {
        need(0, 0);
        out = builtin_cubic_inverse();
    } else if (name == "example12_linear") {
        need(0, 0);
        out = builtin_example12_linear();
    } else if (name == "example12_quadratic") {
        need(1, 1);
        out = builtin_example12_quadratic(args[0]);
    } else if (name == "henon") {
        need(4, 64);
        Rational delta = args.back();
        args.pop_back();
        out = builtin_henon(args, delta);
    } else if (name == "bedford_kim") {
        need(2, 64);
        std::vector<FieldElement> a;
        for (size_t i = 2; i < args.size(); ++i) a.emplace_back(Q, args[i]);
        out = builtin_bedford_kim(as_int(args[0]), FieldElement(Q, args[1]), a);
    } else {
        return false;
    }
    return true;
}

} // namespace crem
