#include "carpet/region.hpp"

#include <algorithm>
#include <stdexcept>

namespace carpet {

Region box_region(Rat x0, Rat x1, Rat y0, Rat y1) {
    if (!(x0 < x1) || !(y0 < y1))
        throw std::invalid_argument("box_region: empty interior");
    return BoxRegion{std::move(x0), std::move(x1), std::move(y0), std::move(y1)};
}

Region unit_box_region() { return box_region(Rat(0), Rat(1), Rat(0), Rat(1)); }

namespace {

Rat band_edge_at(const BandRegion& b, const PLPath& edge, const Rat& x) {
    Rat u = (x - b.x0) / (b.x1 - b.x0);
    return pl_eval(edge, u);
}

}  // namespace

bool region_contains(const Region& r, const RatPoint& z) {
    return std::visit(
        [&](const auto& reg) -> bool {
            using T = std::decay_t<decltype(reg)>;
            if constexpr (std::is_same_v<T, BoxRegion>) {
                return reg.x0 <= z.x && z.x <= reg.x1 && reg.y0 <= z.y && z.y <= reg.y1;
            } else if constexpr (std::is_same_v<T, VStripRegion>) {
                return reg.x0 <= z.x && z.x <= reg.x1;
            } else if constexpr (std::is_same_v<T, TrapRegion>) {
                return trap_contains(reg.quad, z);
            } else {
                if (z.x < reg.x0 || z.x > reg.x1) return false;
                return band_edge_at(reg, reg.lower, z.x) <= z.y &&
                       z.y <= band_edge_at(reg, reg.upper, z.x);
            }
        },
        r);
}

bool region_interior_contains(const Region& r, const RatPoint& z) {
    return std::visit(
        [&](const auto& reg) -> bool {
            using T = std::decay_t<decltype(reg)>;
            if constexpr (std::is_same_v<T, BoxRegion>) {
                return reg.x0 < z.x && z.x < reg.x1 && reg.y0 < z.y && z.y < reg.y1;
            } else if constexpr (std::is_same_v<T, VStripRegion>) {
                return reg.x0 < z.x && z.x < reg.x1;
            } else if constexpr (std::is_same_v<T, TrapRegion>) {
                return trap_interior_contains(reg.quad, z);
            } else {
                if (z.x <= reg.x0 || z.x >= reg.x1) return false;
                return band_edge_at(reg, reg.lower, z.x) < z.y &&
                       z.y < band_edge_at(reg, reg.upper, z.x);
            }
        },
        r);
}

std::pair<Rat, Rat> region_x_range(const Region& r) {
    return std::visit(
        [&](const auto& reg) -> std::pair<Rat, Rat> {
            using T = std::decay_t<decltype(reg)>;
            if constexpr (std::is_same_v<T, TrapRegion>)
                return {reg.quad.x_left, reg.quad.x_right};
            else
                return {reg.x0, reg.x1};
        },
        r);
}

std::optional<std::pair<Rat, Rat>> region_y_range(const Region& r) {
    return std::visit(
        [&](const auto& reg) -> std::optional<std::pair<Rat, Rat>> {
            using T = std::decay_t<decltype(reg)>;
            if constexpr (std::is_same_v<T, BoxRegion>) {
                return std::make_pair(reg.y0, reg.y1);
            } else if constexpr (std::is_same_v<T, VStripRegion>) {
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, TrapRegion>) {
                const auto& q = reg.quad;
                return std::make_pair(rat_min(q.y_left_bottom, q.y_right_bottom),
                                      rat_max(q.y_left_top, q.y_right_top));
            } else {
                return std::make_pair(pl_min_value(reg.lower), pl_max_value(reg.upper));
            }
        },
        r);
}

RegionProfile region_profile(const Region& r) {
    RegionProfile p;
    auto [x0, x1] = region_x_range(r);
    p.x0 = x0;
    p.x1 = x1;
    std::visit(
        [&](const auto& reg) {
            using T = std::decay_t<decltype(reg)>;
            if constexpr (std::is_same_v<T, BoxRegion>) {
                p.bottom = {{reg.x0, reg.y0}, {reg.x1, reg.y0}};
                p.top = {{reg.x0, reg.y1}, {reg.x1, reg.y1}};
            } else if constexpr (std::is_same_v<T, VStripRegion>) {
                p.unbounded_below = p.unbounded_above = true;
            } else if constexpr (std::is_same_v<T, TrapRegion>) {
                const auto& q = reg.quad;
                p.bottom = {{q.x_left, q.y_left_bottom}, {q.x_right, q.y_right_bottom}};
                p.top = {{q.x_left, q.y_left_top}, {q.x_right, q.y_right_top}};
            } else {
                for (const auto& bp : reg.lower.pts)
                    p.bottom.emplace_back(reg.x0 + bp.first * (reg.x1 - reg.x0), bp.second);
                for (const auto& bp : reg.upper.pts)
                    p.top.emplace_back(reg.x0 + bp.first * (reg.x1 - reg.x0), bp.second);
            }
        },
        r);
    return p;
}

namespace {

Rat profile_eval(const std::vector<std::pair<Rat, Rat>>& curve, const Rat& x) {
    auto it = std::upper_bound(
        curve.begin(), curve.end(), x,
        [](const Rat& v, const std::pair<Rat, Rat>& bp) { return v < bp.first; });
    if (it == curve.begin()) return curve.front().second;
    if (it == curve.end()) return curve.back().second;
    const auto& lo = *(it - 1);
    const auto& hi = *it;
    Rat lambda = (x - lo.first) / (hi.first - lo.first);
    return lo.second + lambda * (hi.second - lo.second);
}

// x-values where curve a - curve b changes sign inside (lo, hi).
void curve_crossings(const std::vector<std::pair<Rat, Rat>>& a,
                     const std::vector<std::pair<Rat, Rat>>& b,
                     const std::vector<Rat>& grid, std::vector<Rat>& out) {
    for (std::size_t i = 1; i < grid.size(); ++i) {
        Rat d0 = profile_eval(a, grid[i - 1]) - profile_eval(b, grid[i - 1]);
        Rat d1 = profile_eval(a, grid[i]) - profile_eval(b, grid[i]);
        if ((d0 < 0 && d1 > 0) || (d0 > 0 && d1 < 0)) {
            Rat t = d0 / (d0 - d1);
            out.push_back(grid[i - 1] + t * (grid[i] - grid[i - 1]));
        }
    }
}

}  // namespace

bool region_interiors_overlap(const Region& a, const Region& b) {
    RegionProfile pa = region_profile(a);
    RegionProfile pb = region_profile(b);
    Rat lo = rat_max(pa.x0, pb.x0);
    Rat hi = rat_min(pa.x1, pb.x1);
    if (!(lo < hi)) return false;

    // Fully unbounded overlap in the common x-interval.
    if ((pa.unbounded_below && pa.unbounded_above) ||
        (pb.unbounded_below && pb.unbounded_above)) {
        if (pa.unbounded_below && pa.unbounded_above && pb.unbounded_below &&
            pb.unbounded_above)
            return true;
        // One is a strip: it contains every y, so interiors overlap as long
        // as the other has nonempty fibers somewhere in (lo, hi); all our
        // region kinds do.
        return true;
    }
    if (pa.unbounded_below || pa.unbounded_above || pb.unbounded_below ||
        pb.unbounded_above)
        throw std::logic_error("region_interiors_overlap: half-bounded profile");

    // gap(x) = min(top_a, top_b) - max(bot_a, bot_b) is piecewise linear with
    // kinks at curve breakpoints and at top/bottom crossings; interiors
    // overlap iff it is positive at one of those candidates.
    std::vector<Rat> grid = {lo, hi};
    auto add_bps = [&](const std::vector<std::pair<Rat, Rat>>& c) {
        for (const auto& bp : c)
            if (bp.first > lo && bp.first < hi) grid.push_back(bp.first);
    };
    add_bps(pa.bottom);
    add_bps(pa.top);
    add_bps(pb.bottom);
    add_bps(pb.top);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<Rat> cand = grid;
    curve_crossings(pa.top, pb.top, grid, cand);
    curve_crossings(pa.bottom, pb.bottom, grid, cand);

    for (const Rat& x : cand) {
        Rat top = rat_min(profile_eval(pa.top, x), profile_eval(pb.top, x));
        Rat bot = rat_max(profile_eval(pa.bottom, x), profile_eval(pb.bottom, x));
        if (top > bot) return true;
    }
    return false;
}

}  // namespace carpet
