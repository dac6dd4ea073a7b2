// Deballing recipes: seeds, validation, pullbacks, unions, membership.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carpet/recipe.hpp"

using namespace carpet;

namespace {

DeballingRecipe middle_ninth_unit() {
    // The unshrunk depth-1 carpet recipe: one ball [1/3,2/3]^2.
    DeballingRecipe r;
    r.region = unit_box_region();
    r.depth = 1;
    r.balls.push_back(rect_ball(make_rat(1, 3), make_rat(2, 3), make_rat(1, 3),
                                make_rat(2, 3)));
    return r;
}

}  // namespace

TEST_CASE("validate_recipe basics") {
    DeballingRecipe empty;
    empty.region = unit_box_region();
    auto rep = validate_recipe(empty);
    CHECK(rep.disjoint);
    CHECK(rep.contained);
    CHECK(rep.coverage == 0);

    DeballingRecipe overlapping = empty;
    overlapping.balls.push_back(
        box_ball(make_ball({make_rat(1, 2), make_rat(1, 2)}, make_rat(1, 4))));
    overlapping.balls.push_back(
        box_ball(make_ball({make_rat(5, 8), make_rat(1, 2)}, make_rat(1, 4))));
    CHECK_FALSE(validate_recipe(overlapping).disjoint);

    // 3x3 middle ninth: coverage 1/9 on a 6x6 grid (4 of 36 centers).
    auto rep9 = validate_recipe(middle_ninth_unit(), 6);
    CHECK(rep9.disjoint);
    CHECK(rep9.contained);
    CHECK(rep9.coverage == make_rat(1, 9));

    // A ball touching the region boundary is rejected.
    DeballingRecipe touching = empty;
    touching.balls.push_back(
        box_ball(make_ball({make_rat(1, 4), make_rat(1, 4)}, make_rat(1, 4))));
    CHECK_FALSE(validate_recipe(touching).contained);
}

TEST_CASE("seed_recipe_box counts and validity") {
    BoxRegion unit{Rat(0), Rat(1), Rat(0), Rat(1)};
    CHECK(seed_recipe_box(unit, 0).balls.empty());
    CHECK(seed_recipe_box(unit, 1).balls.size() == 1);
    CHECK(seed_recipe_box(unit, 2).balls.size() == 9);
    CHECK(seed_recipe_box(unit, 3).balls.size() == 73);  // 1 + 8 + 64

    for (unsigned d = 0; d <= 4; ++d) {
        auto rep = validate_recipe(seed_recipe_box(unit, d), 8);
        CHECK(rep.disjoint);
        CHECK(rep.contained);
    }

    // Works on non-square boxes too (rect balls).
    BoxRegion wide{Rat(-1), Rat(3), Rat(0), Rat(1)};
    auto rep = validate_recipe(seed_recipe_box(wide, 3), 8);
    CHECK(rep.disjoint);
    CHECK(rep.contained);

    // Determinism: identical ball lists across runs.
    auto a = seed_recipe_box(unit, 3), b = seed_recipe_box(unit, 3);
    REQUIRE(a.balls.size() == b.balls.size());
    for (std::size_t i = 0; i < a.balls.size(); ++i) {
        BBox ba = recipe_ball_bbox(a.balls[i]), bb = recipe_ball_bbox(b.balls[i]);
        CHECK(ba.x0 == bb.x0);
        CHECK(ba.y1 == bb.y1);
    }
}

TEST_CASE("coverage_fraction is nondecreasing in depth") {
    BoxRegion unit{Rat(0), Rat(1), Rat(0), Rat(1)};
    Rat prev(-1);
    for (unsigned d = 0; d <= 4; ++d) {
        Rat c = coverage_fraction(seed_recipe_box(unit, d), 32);
        CHECK(c >= prev);
        prev = c;
    }
    // Full cover: one ball over nearly everything, coarse grid.
    DeballingRecipe full;
    full.region = unit_box_region();
    full.balls.push_back(rect_ball(make_rat(1, 100), make_rat(99, 100),
                                   make_rat(1, 100), make_rat(99, 100)));
    CHECK(coverage_fraction(full, 4) == 1);
}

TEST_CASE("carpet_membership") {
    auto r = middle_ninth_unit();
    // Boundary of the region is retained.
    CHECK(carpet_membership(r, {Rat(0), Rat(0)}));
    CHECK(carpet_membership(r, {make_rat(1, 2), Rat(1)}));
    // Ball centers are carved out; ball boundary corners are retained.
    CHECK_FALSE(carpet_membership(r, {make_rat(1, 2), make_rat(1, 2)}));
    CHECK(carpet_membership(r, {make_rat(1, 3), make_rat(1, 3)}));
    // Outside the region entirely.
    CHECK_FALSE(carpet_membership(r, {Rat(2), Rat(0)}));

    // Monotone under extension: adding balls can only flip true -> false.
    auto extended = r;
    extended.balls.push_back(rect_ball(make_rat(1, 10), make_rat(2, 10),
                                       make_rat(1, 10), make_rat(2, 10)));
    for (int i = 0; i <= 10; ++i) {
        for (int j = 0; j <= 10; ++j) {
            RatPoint z{make_rat(i, 10), make_rat(j, 10)};
            if (!carpet_membership(r, z)) CHECK_FALSE(carpet_membership(extended, z));
        }
    }
}

TEST_CASE("pullback_recipe: identity, translation, affine scaling") {
    auto src = seed_recipe_box(BoxRegion{Rat(0), Rat(1), Rat(0), Rat(1)}, 2);

    auto ident = PiecewisePlanarMap::single(unit_box_region(), affine_identity());
    auto back = pullback_recipe(ident, src, unit_box_region());
    REQUIRE(back.balls.size() == src.balls.size());
    for (std::size_t i = 0; i < back.balls.size(); ++i) {
        BBox a = recipe_ball_bbox(back.balls[i]), b = recipe_ball_bbox(src.balls[i]);
        CHECK(a.x0 == b.x0);
        CHECK(a.x1 == b.x1);
        CHECK(a.y0 == b.y0);
        CHECK(a.y1 == b.y1);
    }

    // Vertical translation by k: pullback shifts centers by (0, -k)...
    // h(x,y) = (x, y+3) maps the target onto the recipe region, so
    // h^-1(ball) sits 3 lower.
    auto shift = PiecewisePlanarMap::single(box_region(Rat(0), Rat(1), Rat(-3), Rat(-2)),
                                            affine_translation(Rat(0), Rat(3)));
    auto shifted = pullback_recipe(shift, src, box_region(Rat(0), Rat(1), Rat(-3), Rat(-2)));
    for (std::size_t i = 0; i < shifted.balls.size(); ++i) {
        BBox a = recipe_ball_bbox(shifted.balls[i]), b = recipe_ball_bbox(src.balls[i]);
        CHECK(a.y0 == b.y0 - 3);
        CHECK(a.x0 == b.x0);
    }
    CHECK(validate_recipe(shifted).ok());

    // Axis-affine chart with the I_{n,k} scalings (n = 1, k = 0):
    // h(x,y) = (16(x - 1/16), 2(y + 1/2)) maps the cell onto the unit box;
    // pulled-back boxes are scaled by (1/16, 1/2).
    AxisAffineMap rnk{Rat(16), Rat(-1), Rat(2), Rat(1)};
    Region cell = box_region(make_rat(1, 16), make_rat(2, 16), make_rat(-1, 2), Rat(0));
    auto pulled = pullback_recipe(PiecewisePlanarMap::single(cell, rnk), src, cell);
    CHECK(validate_recipe(pulled).ok());
    for (std::size_t i = 0; i < pulled.balls.size(); ++i) {
        BBox a = recipe_ball_bbox(pulled.balls[i]), b = recipe_ball_bbox(src.balls[i]);
        CHECK((a.x1 - a.x0) == (b.x1 - b.x0) / 16);
        CHECK((a.y1 - a.y0) == (b.y1 - b.y0) / 2);
    }

    // Pullback preserves cardinality and disjointness (injective chart).
    CHECK(pulled.balls.size() == src.balls.size());
}

TEST_CASE("pullback through a fiber-scaling chart keeps membership exact") {
    // h(x,y) = (2x - 1, (2 - x) y) on x in [1/2, 1]: the warped-ball route.
    FiberScaleMap h{Rat(2), Rat(-1), Rat(2), Rat(-1)};
    Region strip = VStripRegion{make_rat(1, 2), Rat(1)};

    DeballingRecipe src;
    src.region = VStripRegion{Rat(0), Rat(1)};
    src.balls.push_back(box_ball(make_ball({make_rat(1, 2), Rat(2)}, make_rat(1, 4))));
    src.balls.push_back(box_ball(make_ball({make_rat(1, 4), Rat(-1)}, make_rat(1, 8))));

    auto pulled = pullback_recipe(PiecewisePlanarMap::single(strip, h), src, strip);
    REQUIRE(pulled.balls.size() == 2);
    CHECK(validate_recipe(pulled).ok());

    // Membership via the chart: z in pulled ball iff h(z) in source ball.
    PlanarChart chart = h;
    for (int i = 0; i <= 20; ++i) {
        for (int j = -40; j <= 40; ++j) {
            RatPoint z{make_rat(10 + i, 20), make_rat(j, 10)};
            RatPoint w = chart_apply(chart, z);
            bool in_src = false;
            for (const auto& b : src.balls)
                if (recipe_ball_contains(b, w)) in_src = true;
            bool in_pulled = false;
            for (const auto& b : pulled.balls)
                if (recipe_ball_contains(b, z)) in_pulled = true;
            CHECK(in_src == in_pulled);
        }
    }
}

TEST_CASE("bilinear chart pullback materializes vertical-sided quads") {
    VSTrapezoid t12 = make_vstrap(make_rat(1, 2), make_rat(3, 4), make_rat(1, 2),
                                  make_rat(5, 8), make_rat(1, 4), make_rat(3, 8));
    // Map T_{1,2} -> unit square; pulling the unit-square seed back.
    auto chart = PiecewisePlanarMap::single(Region{TrapRegion{t12}}, TrapToUnitMap{t12});
    auto src = seed_recipe_box(BoxRegion{Rat(0), Rat(1), Rat(0), Rat(1)}, 2);
    auto pulled = pullback_recipe(chart, src, Region{TrapRegion{t12}});
    CHECK(pulled.balls.size() == src.balls.size());
    auto rep = validate_recipe(pulled);
    CHECK(rep.disjoint);
    CHECK(rep.contained);

    // Membership commutes with the chart on sample points.
    for (int i = 1; i < 8; ++i) {
        for (int j = 1; j < 8; ++j) {
            Rat s = make_rat(i, 8), t = make_rat(j, 8);
            RatPoint z = bilinear_eval(t12, s, t);
            bool in_src = false;
            for (const auto& b : src.balls)
                if (recipe_ball_contains(b, {s, t})) in_src = true;
            bool in_pulled = false;
            for (const auto& b : pulled.balls)
                if (recipe_ball_contains(b, z)) in_pulled = true;
            CHECK(in_src == in_pulled);
        }
    }
}

TEST_CASE("union_recipes") {
    BoxRegion lower{Rat(0), Rat(1), Rat(0), Rat(1)};
    BoxRegion upper{Rat(0), Rat(1), Rat(1), Rat(2)};
    auto a = seed_recipe_box(lower, 1);
    auto b = seed_recipe_box(upper, 1);

    // One part: itself.
    auto single = union_recipes({a}, Region{lower});
    CHECK(single.balls.size() == a.balls.size());

    auto both = union_recipes({a, b}, box_region(Rat(0), Rat(1), Rat(0), Rat(2)));
    CHECK(both.balls.size() == 2);
    CHECK(validate_recipe(both).ok());

    // Overlapping part regions are rejected.
    CHECK_THROWS_AS(union_recipes({a, a}, Region{lower}), std::domain_error);
}

TEST_CASE("region interior overlap decisions") {
    Region left = VStripRegion{Rat(0), Rat(1)};
    Region right = VStripRegion{Rat(1), Rat(2)};
    CHECK_FALSE(region_interiors_overlap(left, right));  // shared edge only
    CHECK(region_interiors_overlap(left, Region{VStripRegion{make_rat(1, 2), Rat(2)}}));

    Region boxA = box_region(Rat(0), Rat(1), Rat(0), Rat(1));
    Region boxB = box_region(Rat(0), Rat(1), Rat(1), Rat(2));
    CHECK_FALSE(region_interiors_overlap(boxA, boxB));
    CHECK(region_interiors_overlap(boxA, left));

    // Slanted trapezoids that cross mid-range.
    Region t1 = Region{TrapRegion{make_vstrap(Rat(0), Rat(1), Rat(0), Rat(1), Rat(2), Rat(3))}};
    Region t2 = Region{TrapRegion{make_vstrap(Rat(0), Rat(1), Rat(2), Rat(3), Rat(0), Rat(1))}};
    CHECK(region_interiors_overlap(t1, t2));
}
