#include "carpet/recipe.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace carpet {

RecipeBall box_ball(const LInfBall& b) {
    return RecipeBall{QuadBall{ball_as_trap(b)}, std::nullopt};
}

RecipeBall rect_ball(const Rat& x0, const Rat& x1, const Rat& y0, const Rat& y1) {
    return RecipeBall{QuadBall{make_box_trap(x0, x1, y0, y1)}, std::nullopt};
}

bool recipe_ball_contains(const RecipeBall& b, const RatPoint& z) {
    if (const auto* q = std::get_if<QuadBall>(&b.shape)) return trap_contains(q->q, z);
    const auto& w = std::get<WarpedBall>(b.shape);
    Rat X = w.fwd.ax * z.x + w.fwd.bx;
    if (X < w.x0 || X > w.x1) return false;
    Rat f = w.fwd.c0 + w.fwd.c1 * z.x;
    Rat Y = f * z.y;
    return w.y0 <= Y && Y <= w.y1;
}

bool recipe_ball_interior_contains(const RecipeBall& b, const RatPoint& z) {
    if (const auto* q = std::get_if<QuadBall>(&b.shape))
        return trap_interior_contains(q->q, z);
    const auto& w = std::get<WarpedBall>(b.shape);
    Rat X = w.fwd.ax * z.x + w.fwd.bx;
    if (X <= w.x0 || X >= w.x1) return false;
    Rat f = w.fwd.c0 + w.fwd.c1 * z.x;
    Rat Y = f * z.y;
    return w.y0 < Y && Y < w.y1;
}

BBox recipe_ball_bbox(const RecipeBall& b) {
    if (const auto* q = std::get_if<QuadBall>(&b.shape)) {
        return BBox{q->q.x_left, q->q.x_right,
                    rat_min(q->q.y_left_bottom, q->q.y_right_bottom),
                    rat_max(q->q.y_left_top, q->q.y_right_top)};
    }
    const auto& w = std::get<WarpedBall>(b.shape);
    Rat xa = (w.x0 - w.fwd.bx) / w.fwd.ax;
    Rat xb = (w.x1 - w.fwd.bx) / w.fwd.ax;
    if (xa > xb) std::swap(xa, xb);
    // The fiber factor is linear in x and nonzero on [xa, xb], so each of
    // y0/f, y1/f is monotone there; extremes sit at the interval ends.
    Rat fa = w.fwd.c0 + w.fwd.c1 * xa;
    Rat fb = w.fwd.c0 + w.fwd.c1 * xb;
    if (fa == 0 || fb == 0 || (fa < 0) != (fb < 0))
        throw ShapeError("WarpedBall: fiber factor changes sign on the ball");
    Rat cands[4] = {w.y0 / fa, w.y0 / fb, w.y1 / fa, w.y1 / fb};
    Rat lo = cands[0], hi = cands[0];
    for (int i = 1; i < 4; ++i) {
        lo = rat_min(lo, cands[i]);
        hi = rat_max(hi, cands[i]);
    }
    return BBox{std::move(xa), std::move(xb), std::move(lo), std::move(hi)};
}

namespace {

bool bboxes_disjoint(const BBox& a, const BBox& b) {
    return a.x1 < b.x0 || b.x1 < a.x0 || a.y1 < b.y0 || b.y1 < a.y0;
}

bool same_fiber_chart(const FiberScaleMap& a, const FiberScaleMap& b) {
    return a.ax == b.ax && a.bx == b.bx && a.c0 == b.c0 && a.c1 == b.c1;
}

}  // namespace

bool recipe_balls_disjoint(const RecipeBall& a, const RecipeBall& b) {
    const auto* qa = std::get_if<QuadBall>(&a.shape);
    const auto* qb = std::get_if<QuadBall>(&b.shape);
    if (qa && qb) return traps_disjoint(qa->q, qb->q);

    const auto* wa = std::get_if<WarpedBall>(&a.shape);
    const auto* wb = std::get_if<WarpedBall>(&b.shape);
    if (wa && wb && same_fiber_chart(wa->fwd, wb->fwd)) {
        // Same homeomorphic chart: disjoint iff the source rects are.
        return wa->x1 < wb->x0 || wb->x1 < wa->x0 || wa->y1 < wb->y0 ||
               wb->y1 < wa->y0;
    }
    if (bboxes_disjoint(recipe_ball_bbox(a), recipe_ball_bbox(b))) return true;
    throw ShapeError("recipe_balls_disjoint: indeterminate warped pairing");
}

bool ball_in_region_interior(const RecipeBall& b, const Region& r) {
    BBox bb = recipe_ball_bbox(b);
    auto [rx0, rx1] = region_x_range(r);
    if (!(rx0 < bb.x0 && bb.x1 < rx1)) return false;

    if (std::holds_alternative<VStripRegion>(r)) return true;

    if (const auto* q = std::get_if<QuadBall>(&b.shape)) {
        RegionProfile p = region_profile(r);
        // Compare straight quad edges against the region's piecewise-linear
        // profile at every breakpoint in range plus the quad's own ends.
        std::vector<Rat> xs = {q->q.x_left, q->q.x_right};
        for (const auto& bp : p.bottom)
            if (bp.first > q->q.x_left && bp.first < q->q.x_right) xs.push_back(bp.first);
        for (const auto& bp : p.top)
            if (bp.first > q->q.x_left && bp.first < q->q.x_right) xs.push_back(bp.first);
        for (const Rat& x : xs) {
            RatPoint top{x, trap_top_at(q->q, x)};
            RatPoint bot{x, trap_bottom_at(q->q, x)};
            if (!region_interior_contains(r, top) || !region_interior_contains(r, bot))
                return false;
        }
        return true;
    }
    // Warped balls live in y-unbounded strips; for bounded regions fall back
    // to the exact bounding box (conservative only against curved region
    // boundaries, which never carry warped balls here).
    RatPoint corners[4] = {{bb.x0, bb.y0}, {bb.x0, bb.y1}, {bb.x1, bb.y0}, {bb.x1, bb.y1}};
    for (const auto& c : corners)
        if (!region_interior_contains(r, c)) return false;
    return true;
}

ValidationReport validate_recipe(const DeballingRecipe& r, unsigned grid) {
    ValidationReport rep;

    // Containment.
    for (std::size_t i = 0; i < r.balls.size(); ++i) {
        if (!ball_in_region_interior(r.balls[i], r.region)) {
            rep.contained = false;
            rep.failures.push_back("ball " + std::to_string(i) +
                                   " not inside the region interior");
        }
    }

    // Pairwise disjointness with a sweep over bbox x-intervals.
    std::vector<BBox> boxes;
    boxes.reserve(r.balls.size());
    for (const auto& b : r.balls) boxes.push_back(recipe_ball_bbox(b));
    std::vector<std::size_t> order(r.balls.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return boxes[i].x0 < boxes[j].x0;
    });
    std::vector<std::size_t> active;
    for (std::size_t oi = 0; oi < order.size(); ++oi) {
        std::size_t i = order[oi];
        active.erase(std::remove_if(active.begin(), active.end(),
                                    [&](std::size_t j) { return boxes[j].x1 < boxes[i].x0; }),
                     active.end());
        for (std::size_t j : active) {
            if (boxes[i].y1 < boxes[j].y0 || boxes[j].y1 < boxes[i].y0) continue;
            if (!recipe_balls_disjoint(r.balls[i], r.balls[j])) {
                rep.disjoint = false;
                rep.failures.push_back("balls " + std::to_string(i) + " and " +
                                       std::to_string(j) + " intersect");
            }
        }
        active.push_back(i);
    }

    rep.coverage = coverage_fraction(r, grid);
    return rep;
}

bool carpet_membership(const DeballingRecipe& r, const RatPoint& z) {
    if (!region_contains(r.region, z)) return false;
    for (const auto& b : r.balls)
        if (recipe_ball_interior_contains(b, z)) return false;
    return true;
}

DeballingRecipe seed_recipe_box(const BoxRegion& box, unsigned depth) {
    DeballingRecipe out;
    out.region = box;
    out.depth = depth;

    struct Cell {
        Rat x0, x1, y0, y1;
    };
    std::vector<Cell> cells = {{box.x0, box.x1, box.y0, box.y1}};
    for (unsigned g = 1; g <= depth; ++g) {
        Rat shrink = 1 - pow2(-2 * static_cast<long>(g));  // 1 - 4^-g
        std::vector<Cell> next;
        next.reserve(cells.size() * 8);
        for (const Cell& c : cells) {
            Rat w3 = (c.x1 - c.x0) / 3, h3 = (c.y1 - c.y0) / 3;
            Rat cx = (c.x0 + c.x1) / 2, cy = (c.y0 + c.y1) / 2;
            Rat hw = w3 / 2 * shrink, hh = h3 / 2 * shrink;
            out.balls.push_back(rect_ball(cx - hw, cx + hw, cy - hh, cy + hh));
            for (int iy = 0; iy < 3; ++iy) {
                for (int ix = 0; ix < 3; ++ix) {
                    if (ix == 1 && iy == 1) continue;
                    next.push_back(Cell{c.x0 + ix * w3, c.x0 + (ix + 1) * w3,
                                        c.y0 + iy * h3, c.y0 + (iy + 1) * h3});
                }
            }
        }
        cells = std::move(next);
    }
    return out;
}

Rat coverage_fraction(const DeballingRecipe& r, unsigned grid) {
    if (grid == 0) throw std::domain_error("coverage_fraction: grid must be >= 1");
    auto [x0, x1] = region_x_range(r.region);
    Rat y0, y1;
    if (auto yr = region_y_range(r.region)) {
        y0 = yr->first;
        y1 = yr->second;
    } else if (!r.balls.empty()) {
        BBox bb = recipe_ball_bbox(r.balls.front());
        y0 = bb.y0;
        y1 = bb.y1;
        for (const auto& b : r.balls) {
            BBox c = recipe_ball_bbox(b);
            y0 = rat_min(y0, c.y0);
            y1 = rat_max(y1, c.y1);
        }
    } else {
        y0 = 0;
        y1 = 1;
    }

    long n = static_cast<long>(grid);
    long covered = 0;
    for (long i = 0; i < n; ++i) {
        Rat cx = x0 + (x1 - x0) * make_rat(2 * i + 1, 2 * n);
        for (long j = 0; j < n; ++j) {
            RatPoint z{cx, y0 + (y1 - y0) * make_rat(2 * j + 1, 2 * n)};
            for (const auto& b : r.balls) {
                if (recipe_ball_contains(b, z)) {
                    ++covered;
                    break;
                }
            }
        }
    }
    return make_rat(Int(covered), Int(n) * Int(n));
}

namespace {

RecipeBall pull_ball_through(const PlanarChart& chart, const RecipeBall& ball) {
    const auto* q = std::get_if<QuadBall>(&ball.shape);
    if (!q) throw ShapeError("pullback of a warped ball is not supported");

    return std::visit(
        [&](const auto& m) -> RecipeBall {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, AxisAffineMap>) {
                return RecipeBall{QuadBall{affine_image_trap(affine_inverse(m), q->q)},
                                  ball.tag};
            } else if constexpr (std::is_same_v<T, FiberScaleMap>) {
                const VSTrapezoid& t = q->q;
                bool is_rect = t.y_left_bottom == t.y_right_bottom &&
                               t.y_left_top == t.y_right_top;
                if (!is_rect)
                    throw ShapeError(
                        "fiber-scaling pullback needs an axis-box source ball");
                return RecipeBall{
                    WarpedBall{m, t.x_left, t.x_right, t.y_left_bottom, t.y_left_top},
                    ball.tag};
            } else {
                // h maps quad -> unit square; h^-1 = the bilinear chart, and
                // the chart of a vertical-sided trapezoid carries axis
                // rectangles onto vertical-sided trapezoids.
                const VSTrapezoid& t = q->q;
                bool is_rect = t.y_left_bottom == t.y_right_bottom &&
                               t.y_left_top == t.y_right_top;
                if (!is_rect)
                    throw ShapeError("bilinear pullback needs an axis-box source ball");
                RatPoint lb = bilinear_eval(m.quad, t.x_left, t.y_left_bottom);
                RatPoint lt = bilinear_eval(m.quad, t.x_left, t.y_left_top);
                RatPoint rb = bilinear_eval(m.quad, t.x_right, t.y_right_bottom);
                RatPoint rt = bilinear_eval(m.quad, t.x_right, t.y_right_top);
                return RecipeBall{
                    QuadBall{make_vstrap(lb.x, rb.x, lb.y, lt.y, rb.y, rt.y)}, ball.tag};
            }
        },
        chart);
}

}  // namespace

DeballingRecipe pullback_recipe(const PiecewisePlanarMap& map,
                                const DeballingRecipe& recipe, Region target_region) {
    if (map.pieces.empty()) throw std::domain_error("pullback_recipe: empty atlas");
    DeballingRecipe out;
    out.region = std::move(target_region);
    out.depth = recipe.depth;
    out.balls.reserve(recipe.balls.size());

    for (const auto& ball : recipe.balls) {
        if (map.pieces.size() == 1) {
            out.balls.push_back(pull_ball_through(map.pieces.front().chart, ball));
            continue;
        }
        bool placed = false;
        for (const auto& piece : map.pieces) {
            RecipeBall cand = pull_ball_through(piece.chart, ball);
            BBox bb = recipe_ball_bbox(cand);
            RatPoint corners[4] = {
                {bb.x0, bb.y0}, {bb.x0, bb.y1}, {bb.x1, bb.y0}, {bb.x1, bb.y1}};
            bool inside = true;
            for (const auto& c : corners)
                if (!region_contains(piece.domain, c)) inside = false;
            if (inside) {
                out.balls.push_back(std::move(cand));
                placed = true;
                break;
            }
        }
        if (!placed)
            throw std::domain_error("pullback_recipe: ball not covered by any piece");
    }
    return out;
}

DeballingRecipe union_recipes(const std::vector<DeballingRecipe>& parts, Region whole) {
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j)
            if (region_interiors_overlap(parts[i].region, parts[j].region))
                throw std::domain_error("union_recipes: part interiors overlap");

    DeballingRecipe out;
    out.region = std::move(whole);
    for (const auto& p : parts) {
        out.depth = std::max(out.depth, p.depth);
        out.balls.insert(out.balls.end(), p.balls.begin(), p.balls.end());
    }
    ValidationReport rep = validate_recipe(out, 8);
    if (!rep.disjoint)
        throw std::logic_error("union_recipes: cross-part ball overlap: " +
                               (rep.failures.empty() ? std::string("?") : rep.failures[0]));
    return out;
}

}  // namespace carpet
