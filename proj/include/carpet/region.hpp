#pragma once

// Geometric carriers for deballing recipes: axis boxes, vertical strips
// (unbounded in y), vertical-sided trapezoids, and curvilinear bands bounded
// below/above by piecewise-linear graphs. Membership of boundary and
// interior is decidable exactly for every kind.

#include "carpet/geometry.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace carpet {

struct BoxRegion {
    Rat x0, x1, y0, y1;  // x0 < x1, y0 < y1
};

struct VStripRegion {
    Rat x0, x1;  // x0 < x1; all of R in y
};

struct TrapRegion {
    VSTrapezoid quad;
};

/// Band between the graphs of two piecewise-linear functions. The paths are
/// parameterized over [0,1] and stretched affinely onto [x0, x1]; for the
/// unit strip (x0 = 0, x1 = 1) the parameter is the abscissa itself.
struct BandRegion {
    Rat x0, x1;
    PLPath lower, upper;
};

using Region = std::variant<BoxRegion, VStripRegion, TrapRegion, BandRegion>;

Region box_region(Rat x0, Rat x1, Rat y0, Rat y1);
Region unit_box_region();

bool region_contains(const Region& r, const RatPoint& z);           // closed
bool region_interior_contains(const Region& r, const RatPoint& z);  // open

/// x-extent of the region (always bounded).
std::pair<Rat, Rat> region_x_range(const Region& r);

/// y-extent if the region is bounded in y.
std::optional<std::pair<Rat, Rat>> region_y_range(const Region& r);

/// Lower/upper boundary of a region as piecewise-linear profiles over its
/// x-range, used for the exact interior-overlap decision. Unbounded strips
/// carry empty profiles with the corresponding flag set.
struct RegionProfile {
    Rat x0, x1;
    bool unbounded_below = false;
    bool unbounded_above = false;
    std::vector<std::pair<Rat, Rat>> bottom, top;  // (x, y), x increasing
};

RegionProfile region_profile(const Region& r);

/// Exact decision: do the interiors of the two regions intersect?
bool region_interiors_overlap(const Region& a, const Region& b);

}  // namespace carpet
