#include "carpet/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace carpet {

LInfBall make_ball(RatPoint center, Rat radius) {
    if (radius <= 0) throw std::invalid_argument("LInfBall: radius must be > 0");
    return LInfBall{std::move(center), std::move(radius)};
}

bool ball_contains(const LInfBall& b, const RatPoint& z) {
    return rat_abs(z.x - b.center.x) <= b.radius &&
           rat_abs(z.y - b.center.y) <= b.radius;
}

bool ball_interior_contains(const LInfBall& b, const RatPoint& z) {
    return rat_abs(z.x - b.center.x) < b.radius &&
           rat_abs(z.y - b.center.y) < b.radius;
}

Rat linf_dist_point_ball(const RatPoint& p, const LInfBall& b) {
    Rat dx = rat_abs(p.x - b.center.x) - b.radius;
    Rat dy = rat_abs(p.y - b.center.y) - b.radius;
    if (dx < 0) dx = 0;
    if (dy < 0) dy = 0;
    return rat_max(dx, dy);
}

Rat linf_gap_balls(const LInfBall& a, const LInfBall& b) {
    Rat dx = rat_abs(a.center.x - b.center.x) - a.radius - b.radius;
    Rat dy = rat_abs(a.center.y - b.center.y) - a.radius - b.radius;
    if (dx < 0) dx = 0;
    if (dy < 0) dy = 0;
    return rat_max(dx, dy);
}

PLPath make_chord(const Rat& a, const Rat& b) {
    PLPath p;
    p.pts = {{Rat(0), a}, {Rat(1), b}};
    return p;
}

PLPath make_constant(const Rat& a) { return make_chord(a, a); }

void check_plpath(const PLPath& p) {
    if (p.pts.size() < 2) throw std::invalid_argument("PLPath: need >= 2 breakpoints");
    if (p.pts.front().first != 0 || p.pts.back().first != 1)
        throw std::invalid_argument("PLPath: domain must be [0,1]");
    for (std::size_t i = 1; i < p.pts.size(); ++i)
        if (!(p.pts[i - 1].first < p.pts[i].first))
            throw std::invalid_argument("PLPath: breakpoints must strictly increase");
}

Rat pl_eval(const PLPath& p, const Rat& t) {
    if (t < 0 || t > 1) throw std::domain_error("pl_eval: t outside [0,1]");
    // Last segment whose start is <= t.
    auto it = std::upper_bound(
        p.pts.begin(), p.pts.end(), t,
        [](const Rat& v, const std::pair<Rat, Rat>& bp) { return v < bp.first; });
    if (it == p.pts.begin()) return p.pts.front().second;
    if (it == p.pts.end()) return p.pts.back().second;
    const auto& lo = *(it - 1);
    const auto& hi = *it;
    Rat lambda = (t - lo.first) / (hi.first - lo.first);
    return lo.second + lambda * (hi.second - lo.second);
}

Rat pl_min_value(const PLPath& p) {
    Rat m = p.pts.front().second;
    for (const auto& bp : p.pts) m = rat_min(m, bp.second);
    return m;
}

Rat pl_max_value(const PLPath& p) {
    Rat m = p.pts.front().second;
    for (const auto& bp : p.pts) m = rat_max(m, bp.second);
    return m;
}

bool paths_equal_somewhere(const PLPath& pa, const PLPath& pb) {
    std::vector<Rat> grid;
    grid.reserve(pa.pts.size() + pb.pts.size());
    for (const auto& bp : pa.pts) grid.push_back(bp.first);
    for (const auto& bp : pb.pts) grid.push_back(bp.first);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    int prev_sign = 2;  // sentinel
    for (const Rat& t : grid) {
        Rat d = pl_eval(pa, t) - pl_eval(pb, t);
        int sign = d == 0 ? 0 : (d > 0 ? 1 : -1);
        if (sign == 0) return true;
        if (prev_sign != 2 && sign != prev_sign) return true;
        prev_sign = sign;
    }
    return false;
}

namespace {

// Does the segment (x0,y0)-(x1,y1), viewed as part of a graph (x0 < x1),
// meet the closed box?
bool segment_hits_box(const Rat& x0, const Rat& y0, const Rat& x1, const Rat& y1,
                      const LInfBall& b) {
    Rat bx0 = b.center.x - b.radius, bx1 = b.center.x + b.radius;
    Rat lo = rat_max(x0, bx0), hi = rat_min(x1, bx1);
    if (lo > hi) return false;
    Rat slope = (y1 - y0) / (x1 - x0);
    Rat vlo = y0 + slope * (lo - x0);
    Rat vhi = y0 + slope * (hi - x0);
    if (vlo > vhi) std::swap(vlo, vhi);
    return vhi >= b.center.y - b.radius && vlo <= b.center.y + b.radius;
}

}  // namespace

bool ball_avoids_path(const LInfBall& b, const PLPath& p) {
    for (std::size_t i = 1; i < p.pts.size(); ++i) {
        if (segment_hits_box(p.pts[i - 1].first, p.pts[i - 1].second,
                             p.pts[i].first, p.pts[i].second, b))
            return false;
    }
    return true;
}

bool point_on_path(const PLPath& p, const Rat& px, const Rat& py) {
    if (px < 0 || px > 1) return false;
    return pl_eval(p, px) == py;
}

Rat linf_dist_point_segment(const RatPoint& p, const Rat& x0, const Rat& y0,
                            const Rat& x1, const Rat& y1) {
    if (x0 == x1) {
        // Vertical segment.
        Rat dy;
        if (p.y < rat_min(y0, y1)) dy = rat_min(y0, y1) - p.y;
        else if (p.y > rat_max(y0, y1)) dy = p.y - rat_max(y0, y1);
        else dy = 0;
        return rat_max(rat_abs(p.x - x0), dy);
    }
    Rat xl = x0, yl = y0, xr = x1, yr = y1;
    if (xl > xr) {
        std::swap(xl, xr);
        std::swap(yl, yr);
    }
    Rat m = (yr - yl) / (xr - xl);
    auto value_at = [&](const Rat& x) { return yl + m * (x - xl); };
    auto dist_at = [&](const Rat& x) {
        return rat_max(rat_abs(p.x - x), rat_abs(p.y - value_at(x)));
    };
    auto clamp = [&](const Rat& x) { return rat_min(rat_max(x, xl), xr); };

    // max(|px-x|, |py-y(x)|) is convex piecewise linear in x; its minimum is
    // at an endpoint, at a kink of either absolute value, or where the two
    // absolute values cross.
    std::vector<Rat> cand = {xl, xr, clamp(p.x)};
    // |py - y(x)| kink: y(x) = py.
    if (m != 0) cand.push_back(clamp(xl + (p.y - yl) / m));
    // Crossings: px - x = +-(py - y(x)).
    if (m != 1) cand.push_back(clamp((p.y - yl + m * xl - p.x) / (m - 1)));
    if (m != -1) cand.push_back(clamp((p.x + p.y - yl + m * xl) / (m + 1)));

    Rat best = dist_at(cand.front());
    for (std::size_t i = 1; i < cand.size(); ++i) best = rat_min(best, dist_at(cand[i]));
    return best;
}

Rat linf_dist_point_path(const RatPoint& p, const PLPath& path) {
    Rat best = linf_dist_point_segment(p, path.pts[0].first, path.pts[0].second,
                                       path.pts[1].first, path.pts[1].second);
    for (std::size_t i = 2; i < path.pts.size(); ++i) {
        best = rat_min(best, linf_dist_point_segment(
                                 p, path.pts[i - 1].first, path.pts[i - 1].second,
                                 path.pts[i].first, path.pts[i].second));
    }
    return best;
}

VSTrapezoid make_vstrap(Rat xl, Rat xr, Rat ylb, Rat ylt, Rat yrb, Rat yrt) {
    if (!(xl < xr)) throw std::invalid_argument("VSTrapezoid: x_left < x_right required");
    if (ylb > ylt || yrb > yrt)
        throw std::invalid_argument("VSTrapezoid: bottom must not exceed top");
    return VSTrapezoid{std::move(xl),  std::move(xr),  std::move(ylb),
                       std::move(ylt), std::move(yrb), std::move(yrt)};
}

VSTrapezoid make_box_trap(const Rat& x0, const Rat& x1, const Rat& y0, const Rat& y1) {
    return make_vstrap(x0, x1, y0, y1, y0, y1);
}

VSTrapezoid ball_as_trap(const LInfBall& b) {
    return make_box_trap(b.center.x - b.radius, b.center.x + b.radius,
                         b.center.y - b.radius, b.center.y + b.radius);
}

Rat trap_bottom_at(const VSTrapezoid& q, const Rat& x) {
    Rat lambda = (x - q.x_left) / (q.x_right - q.x_left);
    return q.y_left_bottom + lambda * (q.y_right_bottom - q.y_left_bottom);
}

Rat trap_top_at(const VSTrapezoid& q, const Rat& x) {
    Rat lambda = (x - q.x_left) / (q.x_right - q.x_left);
    return q.y_left_top + lambda * (q.y_right_top - q.y_left_top);
}

bool trap_contains(const VSTrapezoid& q, const RatPoint& z) {
    if (z.x < q.x_left || z.x > q.x_right) return false;
    return trap_bottom_at(q, z.x) <= z.y && z.y <= trap_top_at(q, z.x);
}

bool trap_interior_contains(const VSTrapezoid& q, const RatPoint& z) {
    if (z.x <= q.x_left || z.x >= q.x_right) return false;
    return trap_bottom_at(q, z.x) < z.y && z.y < trap_top_at(q, z.x);
}

namespace {

// Candidate abscissas where min(top_a, top_b) - max(bot_a, bot_b) can attain
// its extreme over the common x-range: the range ends plus the crossings of
// the two tops and the two bottoms. All four edges are linear in x.
void edge_crossing(const VSTrapezoid& a, const VSTrapezoid& b, bool tops,
                   const Rat& lo, const Rat& hi, std::vector<Rat>& out) {
    Rat a0 = tops ? trap_top_at(a, lo) : trap_bottom_at(a, lo);
    Rat a1 = tops ? trap_top_at(a, hi) : trap_bottom_at(a, hi);
    Rat b0 = tops ? trap_top_at(b, lo) : trap_bottom_at(b, lo);
    Rat b1 = tops ? trap_top_at(b, hi) : trap_bottom_at(b, hi);
    Rat d0 = a0 - b0, d1 = a1 - b1;
    if (d0 == d1) return;
    Rat t = d0 / (d0 - d1);  // (lo + t (hi - lo)) solves d = 0
    if (t > 0 && t < 1) out.push_back(lo + t * (hi - lo));
}

}  // namespace

bool trap_interiors_overlap(const VSTrapezoid& a, const VSTrapezoid& b) {
    Rat lo = rat_max(a.x_left, b.x_left);
    Rat hi = rat_min(a.x_right, b.x_right);
    if (!(lo < hi)) return false;
    std::vector<Rat> cand = {lo, hi};
    edge_crossing(a, b, true, lo, hi, cand);
    edge_crossing(a, b, false, lo, hi, cand);
    // gap(x) = min(tops) - max(bottoms) is concave piecewise linear, so its
    // maximum over [lo,hi] is attained on the candidate set.
    for (const Rat& x : cand) {
        Rat top = rat_min(trap_top_at(a, x), trap_top_at(b, x));
        Rat bot = rat_max(trap_bottom_at(a, x), trap_bottom_at(b, x));
        if (top > bot) return true;
    }
    return false;
}

bool traps_disjoint(const VSTrapezoid& a, const VSTrapezoid& b) {
    Rat lo = rat_max(a.x_left, b.x_left);
    Rat hi = rat_min(a.x_right, b.x_right);
    if (lo > hi) return true;
    std::vector<Rat> cand = {lo, hi};
    if (lo < hi) {
        edge_crossing(a, b, true, lo, hi, cand);
        edge_crossing(a, b, false, lo, hi, cand);
    }
    for (const Rat& x : cand) {
        Rat top = rat_min(trap_top_at(a, x), trap_top_at(b, x));
        Rat bot = rat_max(trap_bottom_at(a, x), trap_bottom_at(b, x));
        if (top >= bot) return false;  // closed sets meet at (x, y) for y in [bot,top]
    }
    return true;
}

RatPoint bilinear_eval(const VSTrapezoid& quad, const Rat& s, const Rat& t) {
    if (s < 0 || s > 1 || t < 0 || t > 1)
        throw std::domain_error("bilinear_eval: parameters outside [0,1]");
    Rat x = (1 - s) * quad.x_left + s * quad.x_right;
    Rat yb = (1 - s) * quad.y_left_bottom + s * quad.y_right_bottom;
    Rat yt = (1 - s) * quad.y_left_top + s * quad.y_right_top;
    return RatPoint{std::move(x), (1 - t) * yb + t * yt};
}

BilinearParams bilinear_invert(const VSTrapezoid& quad, const RatPoint& p) {
    if (p.x < quad.x_left || p.x > quad.x_right)
        throw std::domain_error("bilinear_invert: point outside trapezoid (x)");
    Rat s = (p.x - quad.x_left) / (quad.x_right - quad.x_left);
    Rat yb = (1 - s) * quad.y_left_bottom + s * quad.y_right_bottom;
    Rat yt = (1 - s) * quad.y_left_top + s * quad.y_right_top;
    if (p.y < yb || p.y > yt)
        throw std::domain_error("bilinear_invert: point outside trapezoid (y)");
    BilinearParams out;
    out.s = std::move(s);
    if (yt == yb) {
        out.t = 0;
        out.degenerate_fiber = true;
    } else {
        out.t = (p.y - yb) / (yt - yb);
    }
    return out;
}

}  // namespace carpet
