#include "carpet/planar_map.hpp"

#include <stdexcept>

namespace carpet {

AxisAffineMap affine_identity() { return {Rat(1), Rat(0), Rat(1), Rat(0)}; }

AxisAffineMap affine_translation(const Rat& dx, const Rat& dy) {
    return {Rat(1), dx, Rat(1), dy};
}

RatPoint chart_apply(const PlanarChart& c, const RatPoint& z) {
    return std::visit(
        [&](const auto& m) -> RatPoint {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, AxisAffineMap>) {
                return {m.ax * z.x + m.bx, m.ay * z.y + m.by};
            } else if constexpr (std::is_same_v<T, FiberScaleMap>) {
                Rat f = m.c0 + m.c1 * z.x;
                if (f == 0) throw std::domain_error("FiberScaleMap: zero fiber factor");
                return {m.ax * z.x + m.bx, f * z.y};
            } else {
                auto st = bilinear_invert(m.quad, z);
                if (st.degenerate_fiber)
                    throw std::domain_error("TrapToUnitMap: degenerate fiber");
                return {st.s, st.t};
            }
        },
        c);
}

RatPoint chart_invert(const PlanarChart& c, const RatPoint& z) {
    return std::visit(
        [&](const auto& m) -> RatPoint {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, AxisAffineMap>) {
                return {(z.x - m.bx) / m.ax, (z.y - m.by) / m.ay};
            } else if constexpr (std::is_same_v<T, FiberScaleMap>) {
                Rat x = (z.x - m.bx) / m.ax;
                Rat f = m.c0 + m.c1 * x;
                if (f == 0) throw std::domain_error("FiberScaleMap: zero fiber factor");
                return {std::move(x), z.y / f};
            } else {
                return bilinear_eval(m.quad, z.x, z.y);
            }
        },
        c);
}

AxisAffineMap affine_compose(const AxisAffineMap& a, const AxisAffineMap& b) {
    return {a.ax * b.ax, a.ax * b.bx + a.bx, a.ay * b.ay, a.ay * b.by + a.by};
}

AxisAffineMap affine_inverse(const AxisAffineMap& a) {
    return {1 / a.ax, -a.bx / a.ax, 1 / a.ay, -a.by / a.ay};
}

VSTrapezoid affine_image_trap(const AxisAffineMap& a, const VSTrapezoid& q) {
    Rat xl = a.ax * q.x_left + a.bx;
    Rat xr = a.ax * q.x_right + a.bx;
    Rat lb = a.ay * q.y_left_bottom + a.by;
    Rat lt = a.ay * q.y_left_top + a.by;
    Rat rb = a.ay * q.y_right_bottom + a.by;
    Rat rt = a.ay * q.y_right_top + a.by;
    if (a.ay < 0) {
        std::swap(lb, lt);
        std::swap(rb, rt);
    }
    if (a.ax < 0) {
        std::swap(xl, xr);
        std::swap(lb, rb);
        std::swap(lt, rt);
    }
    return make_vstrap(std::move(xl), std::move(xr), std::move(lb), std::move(lt),
                       std::move(rb), std::move(rt));
}

PiecewisePlanarMap PiecewisePlanarMap::single(Region domain, PlanarChart chart) {
    PiecewisePlanarMap m;
    m.pieces.push_back({std::move(domain), std::move(chart)});
    return m;
}

RatPoint PiecewisePlanarMap::apply(const RatPoint& z) const {
    for (const auto& p : pieces)
        if (region_contains(p.domain, z)) return chart_apply(p.chart, z);
    throw std::domain_error("PiecewisePlanarMap: point outside atlas");
}

RatPoint PiecewisePlanarMap::invert(const RatPoint& z) const {
    for (const auto& p : pieces) {
        try {
            RatPoint w = chart_invert(p.chart, z);
            if (region_contains(p.domain, w)) return w;
        } catch (const std::domain_error&) {
            // z not in this piece's image; try the next.
        }
    }
    throw std::domain_error("PiecewisePlanarMap: point outside atlas image");
}

}  // namespace carpet
