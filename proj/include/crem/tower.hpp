#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crem/cremona.hpp"

namespace crem {

// (u,v)-type charts keep the first coordinate (u_k = r, v_k = s / r);
// (r,s)-type keep the second (r_k = r / s, s_k = s).
enum class ChartKind { UV, RS };

struct TowerNode {
    std::string label;
    std::optional<int> parent;  // index into the tower
    std::optional<ProjPoint> base_point;
    std::optional<std::pair<FieldElement, FieldElement>> chart_coords;
    std::string chart_name;  // e.g. "(r_3,s_3)"
    ChartKind chart_kind = ChartKind::UV;
    // Coordinates not printed in the source and computed here.
    bool derived = false;
};

class PointTower {
public:
    PointTower() = default;
    // Checks admissibility; throws InvalidArgument.
    explicit PointTower(std::vector<TowerNode> nodes);

    const std::vector<TowerNode>& nodes() const { return nodes_; }
    int length() const { return static_cast<int>(nodes_.size()); }
    const TowerNode& node(const std::string& label) const;
    int root_of(int i) const;

private:
    std::vector<TowerNode> nodes_;
};

enum class TowerFamily { PhiNXi1, PhiNXi2, CubicXi1, CubicXi2 };
// Throws UnsupportedN for PHI_N families with n < 3.
PointTower builtin_tower(TowerFamily fam, int n = 0);

std::vector<ProjPoint> supports(const PointTower& t);
bool supports_pairwise_disjoint(const std::vector<std::vector<ProjPoint>>& sets);
bool supports_pairwise_disjoint(const std::vector<PointTower>& towers,
                                const std::vector<std::vector<ProjPoint>>& images);

enum class SwapFamily { PhiN, Cubic };
struct ComponentSwapTable {
    std::map<std::string, std::string> map;
    bool derived = false;
    bool is_injective() const;
};
// Throws UnsupportedN for n < 3.
ComponentSwapTable swap_table(SwapFamily fam, int n = 0);

std::string tower_to_json(const PointTower& t);
// Throws ParseError.
PointTower tower_from_json(const std::string& text);

} // namespace crem
