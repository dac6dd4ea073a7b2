#pragma once

// Finite-depth deballing recipes: families of pairwise-disjoint closed balls
// inside a region's interior, together with validation, pullback under
// charted maps, unions over decompositions, and membership in the resulting
// deballing (the region minus the balls' interiors).
//
// Balls are carried in two exact representations:
//   * QuadBall   — a vertical-sided trapezoid (axis boxes are flat quads).
//                  Covers seeds, affine pullbacks, and bilinear transports,
//                  because the bilinear chart of a vertical-sided trapezoid
//                  maps axis rectangles onto vertical-sided trapezoids.
//   * WarpedBall — the preimage of an axis rectangle under a fiber-scaling
//                  chart. Membership pulls the query point forward; the
//                  realized shape has curved horizontal edges, so it is kept
//                  symbolic with an exact bounding box.

#include "carpet/geometry.hpp"
#include "carpet/planar_map.hpp"
#include "carpet/region.hpp"
#include "carpet/support.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace carpet {

/// Transport bookkeeping: which chart family produced a ball (used by the
/// square-flow recipe to state the transport identity exactly).
struct FlowTag {
    long column = 0;
    long band = 0;
    int source_index = -1;
};

struct QuadBall {
    VSTrapezoid q;
};

struct WarpedBall {
    FiberScaleMap fwd;     // ball = fwd^{-1}(rect)
    Rat x0, x1, y0, y1;    // the rect, in the chart's image coordinates
};

struct RecipeBall {
    std::variant<QuadBall, WarpedBall> shape;
    std::optional<FlowTag> tag;
};

struct DeballingRecipe {
    Region region;
    unsigned depth = 0;
    std::vector<RecipeBall> balls;
};

RecipeBall box_ball(const LInfBall& b);
RecipeBall rect_ball(const Rat& x0, const Rat& x1, const Rat& y0, const Rat& y1);

bool recipe_ball_contains(const RecipeBall& b, const RatPoint& z);
bool recipe_ball_interior_contains(const RecipeBall& b, const RatPoint& z);

struct BBox {
    Rat x0, x1, y0, y1;
};
BBox recipe_ball_bbox(const RecipeBall& b);

/// Exact disjointness of two recipe balls. Throws ShapeError for the one
/// genuinely indeterminate pairing (two warped balls under different charts
/// whose bounding boxes overlap); the recipes assembled here never produce
/// it because warped balls of different charts live in disjoint strips.
bool recipe_balls_disjoint(const RecipeBall& a, const RecipeBall& b);

bool ball_in_region_interior(const RecipeBall& b, const Region& r);

struct ValidationReport {
    bool disjoint = true;
    bool contained = true;
    Rat coverage;                        // grid-cell-center fraction
    std::vector<std::string> failures;

    bool ok() const { return disjoint && contained; }
};

/// Exact pairwise disjointness, exact interior containment, and the
/// depth-dependent coverage metric. Density is never asserted: finite depth
/// cannot witness it.
ValidationReport validate_recipe(const DeballingRecipe& r, unsigned grid = 32);

/// z lies in the deballing of the region: inside the (closed) region and in
/// no ball's open interior. Ball boundaries are retained.
bool carpet_membership(const DeballingRecipe& r, const RatPoint& z);

/// Canonical middle-ninth recipe on an axis box: at each generation g the
/// remaining boxes are subdivided 3x3 and the closed middle ninth, shrunk by
/// the factor (1 - 4^-g) about its center, is carved. The shrink keeps the
/// carved closed balls pairwise disjoint across generations and off every
/// subdivision line. Ball count is sum_{g=1..d} 8^(g-1).
DeballingRecipe seed_recipe_box(const BoxRegion& box, unsigned depth);

/// Fraction of n x n grid cell centers (over the region's bounding extent)
/// lying inside some ball.
Rat coverage_fraction(const DeballingRecipe& r, unsigned grid);

/// Pullback h*B = { h^-1(ball) } of a recipe through a piecewise charted
/// map whose pieces cover target_region. Axis-affine pieces materialize
/// boxes; fiber-scaling pieces record (chart, rect) pairs; trapezoid charts
/// materialize vertical-sided quads. Anything else raises ShapeError.
DeballingRecipe pullback_recipe(const PiecewisePlanarMap& map,
                                const DeballingRecipe& recipe, Region target_region);

/// Union over a decomposition: part regions must have pairwise disjoint
/// interiors (checked exactly). Cross-part ball overlap would contradict the
/// preconditions and is raised as an internal error by revalidation.
DeballingRecipe union_recipes(const std::vector<DeballingRecipe>& parts, Region whole);

}  // namespace carpet
