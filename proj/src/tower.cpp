#include "crem/tower.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

#include "crem/error.hpp"

namespace crem {

using nlohmann::json;

PointTower::PointTower(std::vector<TowerNode> nodes) : nodes_(std::move(nodes)) {
    std::set<std::string> seen;
    for (size_t i = 0; i < nodes_.size(); ++i) {
        const TowerNode& n = nodes_[i];
        if (!seen.insert(n.label).second) fail(ErrorKind::InvalidArgument, "duplicate tower label " + n.label);
        const bool base = n.base_point.has_value();
        const bool near = n.parent.has_value() && n.chart_coords.has_value();
        if (base == near || (base && n.parent) || (!base && !n.parent))
            fail(ErrorKind::InvalidArgument, "node " + n.label + " needs exactly one of base point or (parent, coords)");
        if (n.parent && (*n.parent < 0 || *n.parent >= static_cast<int>(i)))
            fail(ErrorKind::InvalidArgument, "node " + n.label + " is blown up before its parent");
    }
}

const TowerNode& PointTower::node(const std::string& label) const {
    for (auto& n : nodes_)
        if (n.label == label) return n;
    fail(ErrorKind::InvalidArgument, "no tower node " + label);
}

int PointTower::root_of(int i) const {
    while (nodes_[i].parent) i = *nodes_[i].parent;
    return i;
}

namespace {

struct Builder {
    FieldPtr f = FieldSpec::rationals();
    std::vector<TowerNode> nodes;

    int base(const std::string& label, long a, long b, long c) {
        TowerNode t;
        t.label = label;
        t.base_point = ProjPoint::make(f, a, b, c);
        nodes.push_back(t);
        return static_cast<int>(nodes.size()) - 1;
    }
    int near(const std::string& label, int parent, long a, long b, const std::string& chart, ChartKind kind,
             bool derived = false) {
        TowerNode t;
        t.label = label;
        t.parent = parent;
        t.chart_coords = std::make_pair(FieldElement(f, a), FieldElement(f, b));
        t.chart_name = chart;
        t.chart_kind = kind;
        t.derived = derived;
        nodes.push_back(t);
        return static_cast<int>(nodes.size()) - 1;
    }
};

std::string chart(const char* a, const char* b, int k) {
    return std::string("(") + a + "_" + std::to_string(k) + "," + b + "_" + std::to_string(k) + ")";
}

PointTower phi_tower(int n, bool second) {
    if (n < 3) fail(ErrorKind::UnsupportedN, "PHI_N towers need n >= 3");
    Builder b;
    int prev = b.base("P", 1, 0, 0);
    prev = b.near("P_1", prev, 0, 0, chart("u", "v", 1), ChartKind::UV);
    for (int k = 1; k <= n - 2; ++k)
        prev = b.near("A_" + std::to_string(k), prev, 0, 0, chart("r", "s", k + 1), ChartKind::RS);
    if (!second) {
        prev = b.near("T", prev, -1, 0, chart("r", "s", n), ChartKind::RS);
        for (int l = 1; l <= n - 2; ++l)
            prev = b.near("B_" + std::to_string(l), prev, 0, 0, chart("r", "s", n + l), ChartKind::RS);
    } else {
        prev = b.near("S", prev, 1, 0, chart("r", "s", n), ChartKind::RS);
        for (int l = 1; l <= n - 2; ++l)
            prev = b.near("C_" + std::to_string(l), prev, 0, 0, chart("c", "d", n + l), ChartKind::RS);
    }
    return PointTower(std::move(b.nodes));
}

PointTower cubic_tower(bool second) {
    Builder b;
    if (!second) {
        // Chain over R = (1:0:0): base points of the jet z = -y^2 (mod y^4).
        int r = b.base("R", 1, 0, 0);
        int s = b.near("S", r, 0, 0, chart("u", "v", 1), ChartKind::UV, true);
        int u = b.near("U", s, 0, -1, chart("u", "v", 2), ChartKind::UV, true);
        b.near("Y", u, 0, 0, chart("u", "v", 3), ChartKind::UV, true);
        b.base("P", 0, 0, 1);
    } else {
        // Chain over Q = (0:1:0): jet x = z^2 (mod z^4).
        int q = b.base("Q", 0, 1, 0);
        int t = b.near("T", q, 0, 0, chart("r", "s", 1), ChartKind::RS, true);
        int v = b.near("V", t, 1, 0, chart("r", "s", 2), ChartKind::RS, true);
        b.near("Z", v, 0, 0, chart("r", "s", 3), ChartKind::RS, true);
        b.base("R", 1, 0, 0);
    }
    return PointTower(std::move(b.nodes));
}

} // namespace

PointTower builtin_tower(TowerFamily fam, int n) {
    switch (fam) {
    case TowerFamily::PhiNXi1: return phi_tower(n, false);
    case TowerFamily::PhiNXi2: return phi_tower(n, true);
    case TowerFamily::CubicXi1: return cubic_tower(false);
    case TowerFamily::CubicXi2: return cubic_tower(true);
    }
    fail(ErrorKind::InvalidArgument, "unknown tower family");
}

std::vector<ProjPoint> supports(const PointTower& t) {
    std::vector<ProjPoint> out;
    for (int i = 0; i < t.length(); ++i) {
        const ProjPoint& p = *t.nodes()[t.root_of(i)].base_point;
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    return out;
}

bool supports_pairwise_disjoint(const std::vector<std::vector<ProjPoint>>& sets) {
    for (size_t i = 0; i < sets.size(); ++i)
        for (size_t j = i + 1; j < sets.size(); ++j)
            for (auto& p : sets[i])
                if (std::find(sets[j].begin(), sets[j].end(), p) != sets[j].end()) return false;
    return true;
}

bool supports_pairwise_disjoint(const std::vector<PointTower>& towers,
                                const std::vector<std::vector<ProjPoint>>& images) {
    std::vector<std::vector<ProjPoint>> all;
    for (auto& t : towers) all.push_back(supports(t));
    all.insert(all.end(), images.begin(), images.end());
    return supports_pairwise_disjoint(all);
}

bool ComponentSwapTable::is_injective() const {
    std::set<std::string> targets;
    for (auto& [k, v] : map)
        if (!targets.insert(v).second) return false;
    return true;
}

ComponentSwapTable swap_table(SwapFamily fam, int n) {
    ComponentSwapTable t;
    if (fam == SwapFamily::Cubic) {
        t.map = {{"C", "E"}, {"F", "C'"}, {"H", "K"}, {"L", "G"}, {"E", "M"}, {"Delta'", "Omega"}, {"N", "Delta''"}};
        return t;
    }
    if (n < 3) fail(ErrorKind::UnsupportedN, "PHI_N swap table needs n >= 3");
    auto sup = [](const char* s, int k) { return std::string(s) + "^" + std::to_string(k); };
    if (n == 3) {
        t.map = {{"Delta", "M^1"}, {"E", "E"}, {"F", "K"}, {"G^1", "G^1"}, {"H", "F"}, {"L^1", "Delta"}};
        t.derived = true;
        return t;
    }
    t.map = {{"Delta", sup("M", n - 2)}, {"E", "E"},          {"F", sup("M", n - 3)},
             {sup("G", n - 3), "K"},     {sup("G", n - 2), sup("G", n - 2)}, {"H", sup("G", n - 3)},
             {sup("L", n - 3), "F"},     {sup("L", n - 2), "Delta"}};
    for (int k = 1; k <= n - 4; ++k) t.map[sup("G", k)] = sup("M", n - k - 3);
    for (int l = 1; l <= n - 4; ++l) t.map[sup("L", l)] = sup("G", n - 3 - l);
    return t;
}

namespace {

json fe_json(const FieldElement& e) {
    json a = json::array();
    for (auto& c : e.coeffs()) a.push_back(c.get_str());
    return a;
}

FieldElement fe_parse(const FieldPtr& f, const json& j) {
    std::vector<Rational> c;
    for (auto& s : j) c.emplace_back(s.get<std::string>(), 10);
    for (auto& q : c) q.canonicalize();
    return FieldElement(f, c);
}

} // namespace

std::string tower_to_json(const PointTower& t) {
    json j;
    FieldPtr f = t.length() ? (t.nodes()[0].base_point ? t.nodes()[0].base_point->field() : FieldSpec::rationals())
                            : FieldSpec::rationals();
    json mod = json::array();
    for (auto& c : f->modulus().coeffs()) mod.push_back(c.get_str());
    j["field"] = mod;
    j["nodes"] = json::array();
    for (auto& n : t.nodes()) {
        json r;
        r["label"] = n.label;
        if (n.base_point) {
            json p = json::array();
            for (auto& c : n.base_point->coords()) p.push_back(fe_json(c));
            r["point"] = p;
        } else {
            r["parent"] = t.nodes()[*n.parent].label;
            r["chart"] = n.chart_name;
            r["chart_kind"] = n.chart_kind == ChartKind::UV ? "uv" : "rs";
            r["coords"] = json::array({fe_json(n.chart_coords->first), fe_json(n.chart_coords->second)});
        }
        if (n.derived) r["derived"] = true;
        j["nodes"].push_back(r);
    }
    return j.dump(2);
}

PointTower tower_from_json(const std::string& text) {
    try {
        json j = json::parse(text);
        std::vector<Rational> mod;
        for (auto& s : j.at("field")) mod.emplace_back(s.get<std::string>(), 10);
        UniPoly m(mod);
        FieldPtr f = m.degree() == 1 ? FieldSpec::rationals() : FieldSpec::make(m);
        std::vector<TowerNode> nodes;
        std::map<std::string, int> index;
        for (auto& r : j.at("nodes")) {
            TowerNode n;
            n.label = r.at("label").get<std::string>();
            if (r.contains("point")) {
                auto& p = r["point"];
                n.base_point = ProjPoint::make(fe_parse(f, p.at(0)), fe_parse(f, p.at(1)), fe_parse(f, p.at(2)));
            } else {
                auto it = index.find(r.at("parent").get<std::string>());
                if (it == index.end()) fail(ErrorKind::ParseError, "parent of " + n.label + " not defined before it");
                n.parent = it->second;
                n.chart_name = r.at("chart").get<std::string>();
                n.chart_kind = r.value("chart_kind", "uv") == "rs" ? ChartKind::RS : ChartKind::UV;
                n.chart_coords = std::make_pair(fe_parse(f, r.at("coords").at(0)), fe_parse(f, r.at("coords").at(1)));
            }
            n.derived = r.value("derived", false);
            index[n.label] = static_cast<int>(nodes.size());
            nodes.push_back(std::move(n));
        }
        return PointTower(std::move(nodes));
    } catch (const json::exception& e) {
        fail(ErrorKind::ParseError, std::string("tower json: ") + e.what());
    } catch (const std::invalid_argument& e) {
        fail(ErrorKind::ParseError, std::string("tower json: bad number: ") + e.what());
    }
}

} // namespace crem
