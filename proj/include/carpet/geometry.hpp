#pragma once

// Planar primitives: exact points, closed l-infinity balls (axis boxes),
// piecewise-linear paths presented as graphs over [0,1], and vertical-sided
// trapezoids with their bilinear charts. All predicates are exact decisions;
// nothing here ever rounds.

#include "carpet/rational.hpp"

#include <utility>
#include <vector>

namespace carpet {

struct RatPoint {
    Rat x;
    Rat y;

    bool operator==(const RatPoint&) const = default;
};

/// Closed ball in the l-infinity norm: |x-cx| <= r and |y-cy| <= r.
struct LInfBall {
    RatPoint center;
    Rat radius;  // half-side, > 0
};

LInfBall make_ball(RatPoint center, Rat radius);

bool ball_contains(const LInfBall& b, const RatPoint& z);           // closed
bool ball_interior_contains(const LInfBall& b, const RatPoint& z);  // open

/// l-infinity distance from a point to a closed box (0 when inside).
Rat linf_dist_point_ball(const RatPoint& p, const LInfBall& b);

/// l-infinity gap between two closed boxes (0 when they meet).
Rat linf_gap_balls(const LInfBall& a, const LInfBall& b);

/// Piecewise-linear function on [0,1], stored as breakpoints (t, value) with
/// strictly increasing t, first t = 0, last t = 1. Evaluation between
/// breakpoints is linear interpolation, so the function is continuous by
/// construction.
struct PLPath {
    std::vector<std::pair<Rat, Rat>> pts;
};

PLPath make_chord(const Rat& a, const Rat& b);  // straight (0,a) -> (1,b)
PLPath make_constant(const Rat& a);

/// Throws std::invalid_argument if the breakpoint list violates the PLPath
/// invariants.
void check_plpath(const PLPath& p);

Rat pl_eval(const PLPath& p, const Rat& t);
Rat pl_min_value(const PLPath& p);
Rat pl_max_value(const PLPath& p);

/// True iff pa(t) = pb(t) for some t in [0,1]. Exact: the difference is
/// piecewise linear on the merged breakpoint grid, so it vanishes somewhere
/// iff it is zero at a grid point or changes sign between adjacent ones.
bool paths_equal_somewhere(const PLPath& pa, const PLPath& pb);

/// True iff the closed box misses the graph {(t, p(t)) : t in [0,1]}.
bool ball_avoids_path(const LInfBall& b, const PLPath& p);

/// True iff (px, py) lies on the graph of p (requires 0 <= px <= 1).
bool point_on_path(const PLPath& p, const Rat& px, const Rat& py);

/// Exact l-infinity distance from a point to the segment (x0,y0)-(x1,y1).
Rat linf_dist_point_segment(const RatPoint& p, const Rat& x0, const Rat& y0,
                            const Rat& x1, const Rat& y1);

/// Exact l-infinity distance from a point to the graph of p.
Rat linf_dist_point_path(const RatPoint& p, const PLPath& path);

/// Trapezoid with two vertical sides. Chart corners:
///   v00 = (x_left,  y_left_bottom)   v10 = (x_right, y_right_bottom)
///   v01 = (x_left,  y_left_top)      v11 = (x_right, y_right_top)
struct VSTrapezoid {
    Rat x_left, x_right;
    Rat y_left_bottom, y_left_top;
    Rat y_right_bottom, y_right_top;
};

VSTrapezoid make_vstrap(Rat xl, Rat xr, Rat ylb, Rat ylt, Rat yrb, Rat yrt);
VSTrapezoid make_box_trap(const Rat& x0, const Rat& x1, const Rat& y0, const Rat& y1);
VSTrapezoid ball_as_trap(const LInfBall& b);

/// Bottom / top edge value at abscissa x (linear between the sides).
Rat trap_bottom_at(const VSTrapezoid& q, const Rat& x);
Rat trap_top_at(const VSTrapezoid& q, const Rat& x);

bool trap_contains(const VSTrapezoid& q, const RatPoint& z);           // closed
bool trap_interior_contains(const VSTrapezoid& q, const RatPoint& z);  // open

/// Exact disjointness of two closed vertical-sided trapezoids.
bool traps_disjoint(const VSTrapezoid& a, const VSTrapezoid& b);

/// Exact interior-overlap test (shared boundary does not count).
bool trap_interiors_overlap(const VSTrapezoid& a, const VSTrapezoid& b);

/// The bilinear chart of the quad:
///   chi(s,t) = (1-s)(1-t) v00 + (1-s)t v01 + s(1-t) v10 + st v11.
/// Because the sides are vertical the x-output depends on s only.
/// Requires 0 <= s,t <= 1.
RatPoint bilinear_eval(const VSTrapezoid& quad, const Rat& s, const Rat& t);

struct BilinearParams {
    Rat s;
    Rat t;
    bool degenerate_fiber = false;  // fiber had zero height; t reported as 0
};

/// Exact inverse of bilinear_eval: s from x linearly, then t linearly along
/// the fiber. The point must lie in the trapezoid. A collapsed fiber cannot
/// occur for the trapezoids of the square flow at finite depth, so the
/// degeneracy flag signals a caller bug rather than a geometric case.
BilinearParams bilinear_invert(const VSTrapezoid& quad, const RatPoint& p);

}  // namespace carpet
