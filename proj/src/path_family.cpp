#include "carpet/path_family.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace carpet {

namespace {

struct SpiralTable {
    std::vector<std::pair<long, long>> seq;
    std::map<std::pair<long, long>, unsigned> index;

    SpiralTable() { seq.reserve(1024); }

    void extend_to(std::size_t n) {
        while (seq.size() <= n) grow();
    }

    void extend_ring(long ring) {
        std::size_t need = static_cast<std::size_t>(2 * ring + 1) *
                           static_cast<std::size_t>(2 * ring + 1);
        extend_to(need == 0 ? 0 : need - 1);
    }

private:
    long x_ = 0, y_ = 0;
    int dir_ = 0;       // 0:+x 1:+y 2:-x 3:-y
    long leg_len_ = 1;  // current run length
    long leg_left_ = 1;
    bool second_leg_ = false;

    void grow() {
        if (seq.empty()) {
            push(0, 0);
            return;
        }
        static const long DX[4] = {1, 0, -1, 0};
        static const long DY[4] = {0, 1, 0, -1};
        x_ += DX[dir_];
        y_ += DY[dir_];
        push(x_, y_);
        if (--leg_left_ == 0) {
            dir_ = (dir_ + 1) % 4;
            if (second_leg_) ++leg_len_;
            second_leg_ = !second_leg_;
            leg_left_ = leg_len_;
        }
    }

    void push(long a, long b) {
        index.emplace(std::make_pair(a, b), static_cast<unsigned>(seq.size()));
        seq.emplace_back(a, b);
    }
};

SpiralTable& spiral() {
    static SpiralTable t;
    return t;
}

// w-th integer that is not a multiple of 3, ordered 1,-1,2,-2,4,-4,5,-5,...
long nonmultiple_of_3(unsigned w) {
    unsigned m = w / 2;
    long mag = 3 * static_cast<long>(m / 2) + (m % 2 ? 2 : 1);
    return (w % 2) ? -mag : mag;
}

}  // namespace

std::pair<long, long> pair_enum(unsigned n) {
    auto& t = spiral();
    t.extend_to(n);
    return t.seq[n];
}

unsigned spiral_index(long a, long b) {
    auto& t = spiral();
    t.extend_ring(std::max(a < 0 ? -a : a, b < 0 ? -b : b));
    return t.index.at({a, b});
}

RatPoint q_point(unsigned n) {
    // Unpair n into (alpha, beta) by rectangular shells max(alpha, beta/8):
    // the ordinate index advances eight times faster, which spreads the
    // family quickly over the unbounded y direction.
    unsigned long s = 0;
    while (8 * (s + 1) * (s + 1) <= n) ++s;
    unsigned long o = n - 8 * s * s;
    unsigned long alpha, beta;
    if (o < 8 * s + 8) {
        alpha = s;
        beta = o;
    } else {
        unsigned long oo = o - (8 * s + 8);
        alpha = oo / 8;
        beta = 8 * s + oo % 8;
    }

    // alpha -> x = u / 2^i over blocks i = 1, 2, ... of the odd numerators.
    unsigned i = 1;
    while ((1ul << i) - 1 <= alpha) ++i;
    unsigned long off = alpha - ((1ul << (i - 1)) - 1);
    Rat x = make_rat(Int(2 * off + 1), Int(1) << i);

    // beta -> (j, w) by the Cantor diagonal, then y = v / 3^j.
    unsigned long d = 0;
    while ((d + 1) * (d + 2) / 2 <= beta) ++d;
    unsigned long pos = beta - d * (d + 1) / 2;
    unsigned j = static_cast<unsigned>(pos) + 1;
    unsigned w = static_cast<unsigned>(d - pos);
    Rat y = make_rat(Int(nonmultiple_of_3(w)), ipow(Int(3), j));
    return RatPoint{std::move(x), std::move(y)};
}

long locate_band(const RatPoint& z) {
    return floor_int(z.y).convert_to<long>();
}

// --- PathFamily -----------------------------------------------------------

std::vector<const LInfBall*> PathFamily::all_obstacles() const {
    std::vector<const LInfBall*> out;
    out.reserve(balls_.size() + planted_.size());
    for (const auto& b : balls_) out.push_back(&b);
    for (const auto& b : planted_) out.push_back(&b);
    return out;
}

PathFamily PathFamily::build(unsigned N) {
    PathFamily fam;
    fam.built_n_ = N;
    fam.horizon_ = N;
    fam.qpts_.reserve(N);
    for (unsigned n = 0; n < N; ++n) fam.qpts_.push_back(q_point(n));

    for (unsigned n = 0; n < N; ++n) {
        fam.place_ball(n);
        auto [a, b] = pair_enum(n);
        fam.insert_path(a, b, fam.construct_path(a, b));
        fam.audit_.push_back(
            {n, "path",
             "(" + std::to_string(a) + "," + std::to_string(b) + ") breakpoints=" +
                 std::to_string(fam.paths_.at({a, b}).pts.size())});
    }
    return fam;
}

void PathFamily::place_ball(unsigned n) {
    const RatPoint& c = qpts_[n];

    // A center swallowed by an earlier ball admits no positive radius with
    // closed-ball disjointness; the recipe stays valid without it (any open
    // set meeting the would-be ball already meets the covering ball).
    for (const auto& b : balls_) {
        if (ball_contains(b, c)) {
            audit_.push_back({n, "ball-skipped", "center covered by earlier ball"});
            return;
        }
    }
    for (const auto& b : planted_) {
        if (ball_contains(b, c)) {
            audit_.push_back({n, "ball-skipped", "center covered by planted ball"});
            return;
        }
    }

    Rat dmin = rat_min(c.x, 1 - c.x);  // strip boundary

    // Integer lines y in Z (keeps every future constant path safe).
    Rat frac = c.y - Rat(floor_int(c.y));
    dmin = rat_min(dmin, rat_min(frac, 1 - frac));

    // Existing balls.
    for (const auto& b : balls_) dmin = rat_min(dmin, linf_dist_point_ball(c, b));
    for (const auto& b : planted_) dmin = rat_min(dmin, linf_dist_point_ball(c, b));

    // Detoured paths built so far. Paths that are plain chords coincide with
    // members of the chord horizon below, so only extra breakpoints matter.
    for (const auto& [key, p] : paths_) {
        if (p.pts.size() <= 2) continue;
        dmin = rat_min(dmin, linf_dist_point_path(c, p));
    }

    // Straight chords p_m for m <= horizon, with a point-to-line prescreen:
    // the l-inf distance to the segment is at least
    // |a + (b-a)x - y| / (1 + |b-a|).
    for (unsigned m = 0; m <= horizon_; ++m) {
        auto [a, b] = pair_enum(m);
        Rat num = rat_abs(Rat(a) + Rat(b - a) * c.x - c.y);
        Rat denom = 1 + Rat(b < a ? a - b : b - a);
        if (num >= dmin * denom) continue;
        dmin = rat_min(dmin, linf_dist_point_segment(c, Rat(0), Rat(a), Rat(1), Rat(b)));
    }

    Rat radius = rat_min(dmin / 2, make_rat(1, 4));
    balls_.push_back(make_ball(c, radius));
    ball_step_.push_back(n);
    audit_.push_back({n, "ball", "radius=" + rat_str(radius)});
}

bool PathFamily::has_path(long a, long b) const { return paths_.count({a, b}) > 0; }

void PathFamily::insert_path(long a, long b, PLPath p) {
    by_class_[b - a].emplace_back(a, b);
    paths_.emplace(std::make_pair(a, b), std::move(p));
}

const PLPath& PathFamily::path(long a, long b) { return materialize(a, b); }

const PLPath& PathFamily::materialize(long a, long b) {
    auto it = paths_.find({a, b});
    if (it != paths_.end()) return it->second;

    // Deterministic on-demand rule: all same-slope pairs that precede (a,b)
    // in the enumeration are built first, in enumeration order, so the
    // result does not depend on the query order.
    long d = b - a;
    unsigned target = spiral_index(a, b);
    std::vector<std::pair<unsigned, long>> todo;  // (index, a')
    long ring = std::max(std::max(a < 0 ? -a : a, b < 0 ? -b : b), 1l);
    for (long aa = -ring - (d > 0 ? d : 0); aa <= ring + (d < 0 ? -d : 0); ++aa) {
        long bb = aa + d;
        if (std::max(aa < 0 ? -aa : aa, bb < 0 ? -bb : bb) > ring) continue;
        unsigned idx = spiral_index(aa, bb);
        if (idx < target && !paths_.count({aa, bb})) todo.emplace_back(idx, aa);
    }
    std::sort(todo.begin(), todo.end());
    for (const auto& [idx, aa] : todo) {
        insert_path(aa, aa + d, construct_path(aa, aa + d));
        audit_.push_back({idx, "path-lazy",
                          "(" + std::to_string(aa) + "," + std::to_string(aa + d) + ")"});
    }
    insert_path(a, b, construct_path(a, b));
    audit_.push_back({target, "path-lazy",
                      "(" + std::to_string(a) + "," + std::to_string(b) + ")"});
    return paths_.at({a, b});
}

bool PathFamily::path_clear_of_qpoints(const PLPath& p) const {
    // Integer chords cannot meet Q: at x = u/2^i the chord value is dyadic
    // while 3 divides every Q denominator.
    if (p.pts.size() == 2 && denominator(p.pts[0].second) == 1 &&
        denominator(p.pts[1].second) == 1)
        return true;
    Rat lo = pl_min_value(p), hi = pl_max_value(p);
    for (const auto& q : qpts_) {
        if (q.y < lo || q.y > hi) continue;
        if (point_on_path(p, q.x, q.y)) return false;
    }
    return true;
}

PLPath PathFamily::construct_path(long a, long b) {
    if (a == b) {
        PLPath c = make_constant(Rat(a));
        for (const LInfBall* o : all_obstacles()) {
            if (!ball_avoids_path(*o, c))
                throw ConstructionFailure(
                    "constant path (" + std::to_string(a) + "," + std::to_string(b) +
                    ") meets a ball; integer-line avoidance was violated");
        }
        if (!path_clear_of_qpoints(c))
            throw ConstructionFailure("constant path hits a Q point");
        return c;
    }
    return detoured_path(a, b);
}

PLPath PathFamily::detoured_path(long A, long B) {
    const Rat band_lo = Rat(std::min(A, B) - 1);
    const Rat band_hi = Rat(std::max(A, B) + 1);
    std::vector<const LInfBall*> obstacles;
    for (const LInfBall* o : all_obstacles()) {
        if (o->center.y + o->radius < band_lo || o->center.y - o->radius > band_hi)
            continue;
        obstacles.push_back(o);
    }

    // Same-slope paths already materialized; the new path must avoid all of
    // them at equal abscissa.
    std::vector<const PLPath*> rivals;
    if (auto it = by_class_.find(B - A); it != by_class_.end())
        for (const auto& key : it->second) rivals.push_back(&paths_.at(key));

    auto nearest_other_gap = [&](const LInfBall* m) {
        Rat best = make_rat(1, 4);
        for (const LInfBall* o : obstacles) {
            if (o == m) continue;
            Rat g = linf_gap_balls(*m, *o);
            if (g > 0) best = rat_min(best, g / 2);
        }
        return best;
    };

    for (int attempt = 0; attempt < 64; ++attempt) {
        Rat scale = pow2(-attempt);
        PLPath path = make_chord(Rat(A), Rat(B));
        bool attempt_failed = false;

        std::size_t guard = obstacles.size() * 4 + 8;
        while (guard-- > 0) {
            // Leftmost ball whose closed box meets the working graph.
            const LInfBall* hit = nullptr;
            for (const LInfBall* o : obstacles) {
                if (ball_avoids_path(*o, path)) continue;
                if (!hit || o->center.x < hit->center.x ||
                    (o->center.x == hit->center.x && o->center.y < hit->center.y))
                    hit = o;
            }
            if (!hit) break;

            Rat eps = scale * rat_min(hit->radius, nearest_other_gap(hit));
            Rat top = hit->center.y + hit->radius;
            Rat bottom = hit->center.y - hit->radius;

            // Prefer passing above the ball; go below only when the upper
            // gap would leave the band.
            bool above = top + eps <= band_hi;
            if (!above && !(bottom - eps >= band_lo)) {
                attempt_failed = true;  // neither side fits; shrink and retry
                break;
            }

            Rat xm = hit->center.x, rm = hit->radius;
            Rat xl = rat_max(Rat(0), xm - rm - eps / 2);
            Rat xr = rat_min(Rat(1), xm + rm + eps / 2);
            Rat vl = pl_eval(path, xl);
            Rat vr = pl_eval(path, xr);

            // Detour heights: midpoint of the open gap, nudged by halving
            // toward the ball until all three segments avoid Q.
            auto segment_hits_q = [&](const Rat& sx0, const Rat& sy0, const Rat& sx1,
                                      const Rat& sy1) {
                for (const auto& q : qpts_) {
                    if (q.x < sx0 || q.x > sx1 || sx0 == sx1) continue;
                    if (sy0 + (sy1 - sy0) * (q.x - sx0) / (sx1 - sx0) == q.y)
                        return true;
                }
                return false;
            };
            Rat y0 = above ? Rat(top + eps / 2) : Rat(bottom - eps / 2);
            Rat y1 = y0;
            bool clean = false;
            for (int nudge = 0; nudge < 64 && !clean; ++nudge) {
                clean = !segment_hits_q(xl, vl, xm - rm, y0) &&
                        !segment_hits_q(xm - rm, y0, xm + rm, y1) &&
                        !segment_hits_q(xm + rm, y1, xr, vr);
                if (!clean) {
                    y0 = above ? Rat((y0 + top) / 2) : Rat((y0 + bottom) / 2);
                    y1 = above ? Rat((y1 + top) / 2) : Rat((y1 + bottom) / 2);
                }
            }
            if (!clean) {
                attempt_failed = true;
                break;
            }

            // Splice the three detour segments over the window [xl, xr].
            PLPath next;
            for (const auto& bp : path.pts)
                if (bp.first < xl) next.pts.push_back(bp);
            next.pts.push_back({xl, vl});
            next.pts.push_back({xm - rm, y0});
            next.pts.push_back({xm + rm, y1});
            next.pts.push_back({xr, vr});
            for (const auto& bp : path.pts)
                if (bp.first > xr) next.pts.push_back(bp);
            path = std::move(next);
        }
        if (attempt_failed) continue;

        // Full exact verification of this candidate.
        bool ok = true;
        for (const LInfBall* o : obstacles)
            if (!ball_avoids_path(*o, path)) ok = false;
        for (const auto& bp : path.pts)
            if (bp.second < band_lo || bp.second > band_hi) ok = false;
        for (const PLPath* r : rivals)
            if (paths_equal_somewhere(path, *r)) ok = false;
        if (ok && !path_clear_of_qpoints(path)) ok = false;
        if (ok) return path;
    }
    throw ConstructionFailure("detoured_path(" + std::to_string(A) + "," +
                              std::to_string(B) + "): no epsilon scale succeeded");
}

void PathFamily::plant_obstacle(const LInfBall& ball) {
    if (!(ball.center.x - ball.radius > 0) || !(ball.center.x + ball.radius < 1))
        throw std::invalid_argument("plant_obstacle: ball must avoid the strip boundary");
    Rat frac = ball.center.y - Rat(floor_int(ball.center.y));
    if (rat_min(frac, 1 - frac) <= ball.radius)
        throw std::invalid_argument("plant_obstacle: ball must avoid integer lines");
    for (const LInfBall* o : all_obstacles())
        if (!(linf_gap_balls(*o, ball) > 0))
            throw std::invalid_argument("plant_obstacle: ball meets an existing ball");
    for (const auto& [key, p] : paths_)
        if (!ball_avoids_path(ball, p))
            throw std::invalid_argument("plant_obstacle: ball meets an existing path");
    for (const auto& q : qpts_)
        if (ball_contains(ball, q))
            throw std::invalid_argument("plant_obstacle: ball covers a Q point");
    planted_.push_back(ball);
    audit_.push_back({built_n_, "planted", "radius=" + rat_str(ball.radius)});
}

RatPoint PathFamily::fiberwise_shift(long k, long l, const RatPoint& z) {
    if (z.x < 0 || z.x > 1)
        throw std::domain_error("fiberwise_shift: point outside the strip");
    long a = locate_band(z);
    Rat lambda = z.y - Rat(a);
    Rat lo = pl_eval(path(a + k, a + l), z.x);
    Rat hi = pl_eval(path(a + k + 1, a + l + 1), z.x);
    return RatPoint{z.x, lo + lambda * (hi - lo)};
}

RatPoint PathFamily::fiberwise_shift_inv(long k, long l, const RatPoint& z) {
    if (z.x < 0 || z.x > 1)
        throw std::domain_error("fiberwise_shift_inv: point outside the strip");
    // Scan the bounded range of candidate source bands, lowest first; a
    // point on a shared image-path graph resolves to the lower band (same
    // value either way, by continuity of the band stack).
    long fy = floor_int(z.y).convert_to<long>();
    long a_lo = fy - std::max(k, l) - 2;
    long a_hi = fy - std::min(k, l) + 2;
    for (long a = a_lo; a <= a_hi; ++a) {
        Rat lo = pl_eval(path(a + k, a + l), z.x);
        if (lo > z.y) continue;
        Rat hi = pl_eval(path(a + k + 1, a + l + 1), z.x);
        if (z.y > hi) continue;
        Rat lambda = (z.y - lo) / (hi - lo);  // hi > lo by non-crossing order
        return RatPoint{z.x, Rat(a) + lambda};
    }
    throw std::logic_error("fiberwise_shift_inv: no source band found");
}

PathFamily::Distortion PathFamily::distortion_check(long k, long l, const RatPoint& z) {
    Distortion d;
    d.image = fiberwise_shift(k, l, z);
    Rat fy{floor_int(z.y)};
    d.lower_slack = d.image.y - (fy + Rat(std::min(k, l)) - 1);
    d.upper_slack = (fy + 1 + Rat(std::max(k, l)) + 1) - d.image.y;
    d.ok = d.lower_slack >= 0 && d.upper_slack >= 0;
    return d;
}

FamilyVerifyReport PathFamily::verify_invariants(bool full) const {
    FamilyVerifyReport rep;
    auto fail = [&](bool& flag, const std::string& msg) {
        flag = false;
        rep.failures.push_back(msg);
    };

    // 1(a): band containment at every breakpoint (hence everywhere, each
    // segment being a convex combination). Constant rule rides along.
    for (const auto& [key, p] : paths_) {
        Rat lo = Rat(std::min(key.first, key.second) - 1);
        Rat hi = Rat(std::max(key.first, key.second) + 1);
        for (const auto& bp : p.pts) {
            ++rep.checks;
            if (bp.second < lo || bp.second > hi)
                fail(rep.band_ok, "band violation on path (" +
                                      std::to_string(key.first) + "," +
                                      std::to_string(key.second) + ")");
        }
        if (p.pts.front().second != Rat(key.first) ||
            p.pts.back().second != Rat(key.second))
            fail(rep.band_ok, "endpoint mismatch");
        if (key.first == key.second &&
            (p.pts.size() != 2 || p.pts[0].second != Rat(key.first)))
            fail(rep.constant_ok, "constant rule violated at a=" +
                                       std::to_string(key.first));
    }

    // 1(b): same-slope classes never meet at equal abscissa.
    for (const auto& [d, keys] : by_class_) {
        (void)d;
        for (std::size_t i = 0; i < keys.size(); ++i) {
            for (std::size_t j = i + 1; j < keys.size(); ++j) {
                ++rep.checks;
                if (paths_equal_somewhere(paths_.at(keys[i]), paths_.at(keys[j])))
                    fail(rep.noncross_ok,
                         "same-class paths meet: (" + std::to_string(keys[i].first) +
                             "," + std::to_string(keys[i].second) + ") and (" +
                             std::to_string(keys[j].first) + "," +
                             std::to_string(keys[j].second) + ")");
            }
        }
    }

    // 1(c): no Q point on any path graph. Integer chords are covered by the
    // denominator argument inside path_clear_of_qpoints; in full mode they
    // are also checked directly.
    for (const auto& [key, p] : paths_) {
        if (!full && p.pts.size() == 2) continue;
        Rat lo = pl_min_value(p), hi = pl_max_value(p);
        for (const auto& q : qpts_) {
            if (q.y < lo || q.y > hi) continue;
            ++rep.checks;
            if (point_on_path(p, q.x, q.y))
                fail(rep.q_ok, "Q point on path (" + std::to_string(key.first) + "," +
                                   std::to_string(key.second) + ")");
        }
    }

    // 2(a): balls pairwise disjoint and off the strip boundary.
    std::vector<const LInfBall*> obs = all_obstacles();
    std::vector<std::size_t> order(obs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return obs[i]->center.y < obs[j]->center.y;
    });
    for (std::size_t oi = 0; oi < order.size(); ++oi) {
        const LInfBall& bi = *obs[order[oi]];
        ++rep.checks;
        if (!(bi.center.x - bi.radius > 0 && bi.center.x + bi.radius < 1))
            fail(rep.balls_ok, "ball meets the strip boundary");
        for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
            const LInfBall& bj = *obs[order[oj]];
            if (bj.center.y - bi.center.y > 1) break;  // radii are capped at 1/4
            ++rep.checks;
            if (!(linf_gap_balls(bi, bj) > 0)) fail(rep.balls_ok, "balls touch");
        }
    }

    // 2(b): every ball misses every path graph, including paths built after
    // the ball (construction order enforces it; this re-checks exactly).
    for (const auto& [key, p] : paths_) {
        Rat lo = pl_min_value(p), hi = pl_max_value(p);
        std::size_t stride = 1;
        if (!full && p.pts.size() == 2 && obs.size() > 400) stride = 7;
        for (std::size_t t = 0; t < obs.size(); t += stride) {
            const LInfBall& o = *obs[t];
            if (o.center.y + o.radius < lo || o.center.y - o.radius > hi) continue;
            ++rep.checks;
            if (!ball_avoids_path(o, p))
                fail(rep.avoid_ok, "ball meets path (" + std::to_string(key.first) +
                                       "," + std::to_string(key.second) + ")");
        }
    }

    return rep;
}

}  // namespace carpet
