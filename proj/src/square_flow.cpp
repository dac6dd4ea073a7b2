#include "carpet/square_flow.hpp"

#include <map>
#include <stdexcept>

namespace carpet {

Rat s_seq(unsigned k, unsigned n) {
    static std::map<std::pair<unsigned, unsigned>, Rat> memo;
    if (n == 0) return Rat(0);
    if (k == 0) return pow2(-static_cast<long>(n));
    auto key = std::make_pair(k, n);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Rat v = s_seq(k - 1, (n + 1) / 2) / 2;  // s^{k}_{2m-1} = s^{k}_{2m} = s^{k-1}_m / 2
    memo.emplace(key, v);
    return v;
}

Rat s_partial(unsigned k, unsigned n) {
    unsigned block = 1u << k;
    unsigned q = n / block, r = n % block;
    return 1 - pow2(-static_cast<long>(q)) +
           Rat(r) * pow2(-static_cast<long>(k + q + 1));
}

Rat s_tail(unsigned k, unsigned n) { return 1 - s_partial(k, n); }

Rat column_line(long m) {
    if (m >= 0) return 1 - pow2(-m);
    return pow2(m) - 1;
}

Rat row_edge(long line, long b) {
    unsigned k = static_cast<unsigned>(line < 0 ? -line : line);
    if (b >= 0) return s_partial(k, static_cast<unsigned>(b));
    return -s_partial(k, static_cast<unsigned>(-b));
}

VSTrapezoid flow_trapezoid(long a, long b) {
    return make_vstrap(column_line(a), column_line(a + 1), row_edge(a, b),
                       row_edge(a, b + 1), row_edge(a + 1, b), row_edge(a + 1, b + 1));
}

SquareFlow::SquareFlow(long a_max, long b_max) : a_max_(a_max), b_max_(b_max) {
    if (a_max < 1 || b_max < 1)
        throw std::invalid_argument("SquareFlow: window must be at least 1x1");
    esum_.resize(static_cast<std::size_t>(a_max_) + 2);
    for (long k = 0; k <= a_max_ + 1; ++k) {
        auto& row = esum_[static_cast<std::size_t>(k)];
        row.reserve(static_cast<std::size_t>(b_max_) + 3);
        Rat acc(0);
        row.push_back(acc);
        for (long m = 1; m <= b_max_ + 2; ++m) {
            acc += s_seq(static_cast<unsigned>(k), static_cast<unsigned>(m));
            row.push_back(acc);
        }
    }
}

Rat SquareFlow::edge(long line, long b) const {
    long k = line < 0 ? -line : line;
    long m = b < 0 ? -b : b;
    if (k <= a_max_ + 1 && m <= b_max_ + 2) {
        const Rat& v = esum_[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)];
        return b < 0 ? Rat(-v) : v;
    }
    return row_edge(line, b);
}

VSTrapezoid SquareFlow::trapezoid(long a, long b) const {
    return make_vstrap(column_line(a), column_line(a + 1), edge(a, b), edge(a, b + 1),
                       edge(a + 1, b), edge(a + 1, b + 1));
}

Rat SquareFlow::boundary(long a, const Rat& lambda, long m) const {
    return (1 - lambda) * edge(a, m) + lambda * edge(a + 1, m);
}

SquareFlow::Located SquareFlow::locate_full(const RatPoint& z) const {
    if (rat_abs(z.x) >= 1 || rat_abs(z.y) >= 1)
        throw std::domain_error("SquareFlow::locate: point not interior to J");

    // Column: largest a with X(a) <= x (ties fall to the larger a).
    long a = 0;
    if (z.x >= 0) {
        while (column_line(a + 1) <= z.x) ++a;
    } else {
        while (column_line(a) > z.x) --a;
    }

    Rat xl = column_line(a);
    Rat lambda = (z.x - xl) / (column_line(a + 1) - xl);

    // Row: largest b with boundary(b) <= y. The boundaries are strictly
    // increasing with limits +-1, so doubling brackets any interior y.
    long b;
    if (z.y >= 0) {
        long hi = 1;
        while (boundary(a, lambda, hi) <= z.y) hi *= 2;
        long lo = 0;
        while (hi - lo > 1) {
            long mid = lo + (hi - lo) / 2;
            (boundary(a, lambda, mid) <= z.y ? lo : hi) = mid;
        }
        b = lo;
    } else {
        long lo = -1;
        while (boundary(a, lambda, lo) > z.y) lo *= 2;
        long hi = 0;
        while (hi - lo > 1) {
            long mid = lo + (hi - lo) / 2;
            (boundary(a, lambda, mid) <= z.y ? lo : hi) = mid;
        }
        b = lo;
    }
    return Located{a, b, std::move(lambda)};
}

TrapIndex SquareFlow::locate(const RatPoint& z) const {
    Located loc = locate_full(z);
    long aa = loc.a < 0 ? -loc.a : loc.a;
    long ab = loc.b < 0 ? -loc.b : loc.b;
    if (aa > a_max_ || ab > b_max_)
        throw WindowExceeded(aa > a_max_ ? aa : a_max_, ab > b_max_ ? ab : b_max_);
    return TrapIndex{loc.a, loc.b};
}

RatPoint SquareFlow::p_apply(const RatPoint& z) const {
    if (rat_abs(z.x) > 1 || rat_abs(z.y) > 1)
        throw std::domain_error("SquareFlow::p_apply: point outside J");
    if (rat_abs(z.x) == 1 || rat_abs(z.y) == 1) return z;  // boundary fixed
    Located loc = locate_full(z);
    long aa = loc.a < 0 ? -loc.a : loc.a;
    long ab = loc.b < 0 ? -loc.b : loc.b;
    if (aa > a_max_ || ab > b_max_)
        throw WindowExceeded(aa > a_max_ ? aa : a_max_, ab > b_max_ ? ab : b_max_);
    Rat yb = boundary(loc.a, loc.lambda, loc.b);
    Rat yt = boundary(loc.a, loc.lambda, loc.b + 1);
    Rat t = (z.y - yb) / (yt - yb);
    Rat out = (1 - t) * yt + t * boundary(loc.a, loc.lambda, loc.b + 2);
    return RatPoint{z.x, std::move(out)};
}

RatPoint SquareFlow::p_inverse(const RatPoint& z) const {
    if (rat_abs(z.x) > 1 || rat_abs(z.y) > 1)
        throw std::domain_error("SquareFlow::p_inverse: point outside J");
    if (rat_abs(z.x) == 1 || rat_abs(z.y) == 1) return z;
    Located loc = locate_full(z);
    long aa = loc.a < 0 ? -loc.a : loc.a;
    long ab = loc.b < 0 ? -loc.b : loc.b;
    if (aa > a_max_ || ab > b_max_)
        throw WindowExceeded(aa > a_max_ ? aa : a_max_, ab > b_max_ ? ab : b_max_);
    Rat yb = boundary(loc.a, loc.lambda, loc.b);
    Rat yt = boundary(loc.a, loc.lambda, loc.b + 1);
    Rat t = (z.y - yb) / (yt - yb);
    Rat out = (1 - t) * boundary(loc.a, loc.lambda, loc.b - 1) + t * yb;
    return RatPoint{z.x, std::move(out)};
}

RatPoint SquareFlow::orbit(const RatPoint& z, long n) const {
    if (rat_abs(z.x) > 1 || rat_abs(z.y) > 1)
        throw std::domain_error("SquareFlow::orbit: point outside J");
    if (n == 0 || rat_abs(z.x) == 1 || rat_abs(z.y) == 1) return z;
    Located loc = locate_full(z);
    long aa = loc.a < 0 ? -loc.a : loc.a;
    long target = loc.b + n;
    long ab = loc.b < 0 ? -loc.b : loc.b;
    long at = target < 0 ? -target : target;
    long need_b = std::max(ab, at);
    if (aa > a_max_ || need_b > b_max_)
        throw WindowExceeded(std::max(aa, a_max_), std::max(need_b, b_max_));
    Rat yb = boundary(loc.a, loc.lambda, loc.b);
    Rat yt = boundary(loc.a, loc.lambda, loc.b + 1);
    Rat t = (z.y - yb) / (yt - yb);
    // (s, t) are flow invariants; the n-th iterate lives in row b + n.
    Rat out = (1 - t) * boundary(loc.a, loc.lambda, target) +
              t * boundary(loc.a, loc.lambda, target + 1);
    return RatPoint{z.x, std::move(out)};
}

RatPoint pi_on_unit_square(const SquareFlow& flow, const RatPoint& z, long n) {
    if (z.x < 0 || z.x > 1 || z.y < 0 || z.y > 1)
        throw std::domain_error("pi_on_unit_square: point outside I");
    RatPoint w{2 * z.x - 1, 2 * z.y - 1};
    RatPoint img = flow.orbit(w, n);
    return RatPoint{(img.x + 1) / 2, (img.y + 1) / 2};
}

DeballingRecipe square_recipe(unsigned seed_depth, long bands, long columns) {
    if (bands < 0 || columns < 1)
        throw std::invalid_argument("square_recipe: bands >= 0, columns >= 1");

    DeballingRecipe out;
    out.depth = seed_depth;

    // Region: the rows -bands .. bands of the window columns, bounded by the
    // piecewise-linear row edges through the column lines.
    BandRegion band;
    band.x0 = column_line(-columns);
    band.x1 = column_line(columns);
    for (long j = -columns; j <= columns; ++j) {
        Rat u = (column_line(j) - band.x0) / (band.x1 - band.x0);
        band.lower.pts.emplace_back(u, row_edge(j, -bands));
        band.upper.pts.emplace_back(u, row_edge(j, bands + 1));
    }
    out.region = band;

    DeballingRecipe seed =
        seed_recipe_box(BoxRegion{Rat(0), Rat(1), Rat(0), Rat(1)}, seed_depth);

    for (long a = -columns; a < columns; ++a) {
        for (long c = -bands; c <= bands; ++c) {
            VSTrapezoid quad = flow_trapezoid(a, c);
            for (std::size_t si = 0; si < seed.balls.size(); ++si) {
                const auto& src = std::get<QuadBall>(seed.balls[si].shape).q;
                RatPoint lb = bilinear_eval(quad, src.x_left, src.y_left_bottom);
                RatPoint lt = bilinear_eval(quad, src.x_left, src.y_left_top);
                RatPoint rb = bilinear_eval(quad, src.x_right, src.y_right_bottom);
                RatPoint rt = bilinear_eval(quad, src.x_right, src.y_right_top);
                RecipeBall ball{QuadBall{make_vstrap(lb.x, rb.x, lb.y, lt.y, rb.y, rt.y)},
                                FlowTag{a, c, static_cast<int>(si)}};
                out.balls.push_back(std::move(ball));
            }
        }
    }
    return out;
}

}  // namespace carpet
