#pragma once

// Planar homeomorphisms presented as atlases of charted pieces. Three chart
// classes cover every map this library transports recipes through:
//
//   AxisAffineMap  (x,y) -> (ax x + bx, ay y + by)          boxes -> boxes
//   FiberScaleMap  (x,y) -> (ax x + bx, (c0 + c1 x) y)      x-dependent
//                                                           fiber scaling
//   TrapToUnitMap  bilinear chart of a vertical-sided       trapezoid ->
//                  trapezoid, inverted                      unit square
//
// All charts are exactly evaluable and exactly invertible pointwise.

#include "carpet/geometry.hpp"
#include "carpet/region.hpp"

#include <variant>
#include <vector>

namespace carpet {

struct AxisAffineMap {
    Rat ax, bx, ay, by;  // ax != 0, ay != 0
};

struct FiberScaleMap {
    Rat ax, bx;  // affine in x, ax != 0
    Rat c0, c1;  // y factor c0 + c1 x, nonzero on the domain
};

struct TrapToUnitMap {
    VSTrapezoid quad;  // map quad -> [0,1]^2 (the inverse bilinear chart)
};

using PlanarChart = std::variant<AxisAffineMap, FiberScaleMap, TrapToUnitMap>;

AxisAffineMap affine_identity();
AxisAffineMap affine_translation(const Rat& dx, const Rat& dy);

RatPoint chart_apply(const PlanarChart& c, const RatPoint& z);
RatPoint chart_invert(const PlanarChart& c, const RatPoint& z);

/// a after b, i.e. (a o b)(z) = a(b(z)).
AxisAffineMap affine_compose(const AxisAffineMap& a, const AxisAffineMap& b);
AxisAffineMap affine_inverse(const AxisAffineMap& a);

/// Image of a vertical-sided trapezoid under an axis-affine map, with the
/// corner roles renormalized when a scale factor is negative.
VSTrapezoid affine_image_trap(const AxisAffineMap& a, const VSTrapezoid& q);

/// A homeomorphism given piecewise: each piece is a chart together with the
/// sub-region of the domain it covers. Pieces must agree on shared
/// boundaries (the caller's obligation; the maps built here satisfy it).
struct PiecewisePlanarMap {
    struct Piece {
        Region domain;
        PlanarChart chart;
    };
    std::vector<Piece> pieces;

    static PiecewisePlanarMap single(Region domain, PlanarChart chart);

    RatPoint apply(const RatPoint& z) const;    // locate piece, then chart
    RatPoint invert(const RatPoint& z) const;   // search pieces for preimage
};

}  // namespace carpet
