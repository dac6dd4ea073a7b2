// The strip path family: enumerations, ball placement, obstacle detours,
// the family invariants, and the fiberwise shifts with their distortion
// bound.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carpet/path_family.hpp"

using namespace carpet;

TEST_CASE("pair_enum: spiral order, injectivity, exact inverse") {
    CHECK(pair_enum(0) == std::make_pair(0l, 0l));
    CHECK(pair_enum(1) == std::make_pair(1l, 0l));
    CHECK(pair_enum(2) == std::make_pair(1l, 1l));
    CHECK(pair_enum(3) == std::make_pair(0l, 1l));
    CHECK(pair_enum(4) == std::make_pair(-1l, 1l));

    std::set<std::pair<long, long>> seen;
    for (unsigned n = 0; n < 10000; ++n) {
        auto p = pair_enum(n);
        CHECK(seen.insert(p).second);  // injective
        CHECK(spiral_index(p.first, p.second) == n);
    }
    // Ring r completes after (2r+1)^2 entries.
    for (long r = 1; r <= 20; ++r) {
        auto last = pair_enum(static_cast<unsigned>((2 * r + 1) * (2 * r + 1) - 1));
        CHECK(std::max(std::abs(last.first), std::abs(last.second)) == r);
    }
}

TEST_CASE("q_point: membership, chord avoidance, density proxy") {
    CHECK(q_point(0) == RatPoint{make_rat(1, 2), make_rat(1, 3)});

    std::set<std::pair<std::string, std::string>> seen;
    for (unsigned n = 0; n < 2000; ++n) {
        RatPoint q = q_point(n);
        CHECK(q.x > 0);
        CHECK(q.x < 1);
        // 2-adic abscissa, 3-adic ordinate.
        Int dx = denominator(q.x);
        while (dx % 2 == 0) dx /= 2;
        CHECK(dx == 1);
        CHECK(denominator(q.y) % 3 == 0);
        CHECK(seen.insert({rat_str(q.x), rat_str(q.y)}).second);  // injective
    }

    // No family point lies on any integer chord: denominator argument,
    // checked directly against |a|,|b| <= 100 for the first points.
    for (unsigned n = 0; n < 60; ++n) {
        RatPoint q = q_point(n);
        for (long a = -100; a <= 100; ++a) {
            // (1-x) a + x b = y  <=>  b = (y - (1-x) a) / x; integer b would
            // contradict the 3-adic denominator, so check solvability.
            Rat b = (q.y - (1 - q.x) * Rat(a)) / q.x;
            CHECK(denominator(b) != 1);
        }
    }

    // Density proxy: the first 10^4 points hit every cell of a 16x16 grid on
    // [0,1] x [-4,4].
    bool cell[16][16] = {};
    for (unsigned n = 0; n < 10000; ++n) {
        RatPoint q = q_point(n);
        if (q.y < -4 || q.y >= 4) continue;
        long cx = floor_int(q.x * 16).convert_to<long>();
        long cy = floor_int((q.y + 4) * 2).convert_to<long>();
        if (cx >= 0 && cx < 16 && cy >= 0 && cy < 16) cell[cx][cy] = true;
    }
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) CHECK(cell[i][j]);
}

TEST_CASE("locate_band follows the floor convention") {
    CHECK(locate_band({make_rat(1, 2), Rat(0)}) == 0);
    CHECK(locate_band({make_rat(1, 2), make_rat(5, 2)}) == 2);
    CHECK(locate_band({make_rat(1, 2), make_rat(-1, 2)}) == -1);
    CHECK(locate_band({Rat(0), Rat(3)}) == 3);
}

TEST_CASE("place_ball radius rule on the first center") {
    PathFamily fam = PathFamily::build(1);
    REQUIRE(fam.balls().size() == 1);
    const LInfBall& b = fam.balls()[0];
    CHECK(b.center == RatPoint{make_rat(1, 2), make_rat(1, 3)});

    // Independent recomputation of the constraint list: strip boundary,
    // integer lines, and the chords with enumeration index <= 1.
    Rat expect = rat_min(make_rat(1, 2), make_rat(1, 3));
    expect = rat_min(expect, linf_dist_point_segment(b.center, Rat(0), Rat(0), Rat(1), Rat(0)));
    expect = rat_min(expect, linf_dist_point_segment(b.center, Rat(0), Rat(1), Rat(1), Rat(0)));
    expect = expect / 2;
    CHECK(b.radius == expect);
    CHECK(b.radius == make_rat(1, 24));
    CHECK(b.radius <= make_rat(1, 6));  // the coarse bound from the rule
}

TEST_CASE("build: empty family, invariants at N=25, determinism") {
    PathFamily empty = PathFamily::build(0);
    CHECK(empty.balls().empty());
    CHECK(empty.q_points().empty());

    PathFamily fam = PathFamily::build(25);
    auto rep = fam.verify_invariants(true);
    for (const auto& f : rep.failures) MESSAGE(f);
    CHECK(rep.passed());
    CHECK(rep.checks > 0);

    // Every ball has positive radius and x-extent inside (0,1).
    for (const auto& b : fam.balls()) {
        CHECK(b.radius > 0);
        CHECK(b.center.x - b.radius > 0);
        CHECK(b.center.x + b.radius < 1);
    }

    // Constant rule: pairs with a = b produce the constant path.
    CHECK(fam.has_path(0, 0));
    {
        PathFamily fam2 = PathFamily::build(25);
        const PLPath& c = fam2.path(1, 1);
        CHECK(c.pts.size() == 2);
        CHECK(c.pts[0].second == 1);
        CHECK(c.pts[1].second == 1);
    }

    // Determinism: a rebuilt family is bit-identical.
    PathFamily again = PathFamily::build(25);
    REQUIRE(again.balls().size() == fam.balls().size());
    for (std::size_t i = 0; i < fam.balls().size(); ++i) {
        CHECK(fam.balls()[i].center == again.balls()[i].center);
        CHECK(fam.balls()[i].radius == again.balls()[i].radius);
    }
    for (long a = -2; a <= 2; ++a) {
        for (long b = -2; b <= 2; ++b) {
            if (!fam.has_path(a, b)) continue;
            REQUIRE(again.has_path(a, b));
            PathFamily f1 = PathFamily::build(25), f2 = PathFamily::build(25);
            CHECK(f1.path(a, b).pts == f2.path(a, b).pts);
        }
    }
}

TEST_CASE("straight chords when nothing obstructs") {
    PathFamily fam = PathFamily::build(12);
    // Built paths with horizon-protected chords never detour.
    for (unsigned n = 0; n < 12; ++n) {
        auto [a, b] = pair_enum(n);
        const PLPath& p = fam.path(a, b);
        CHECK(p.pts.size() == 2);
        CHECK(p.pts[0].second == Rat(a));
        CHECK(p.pts[1].second == Rat(b));
    }
}

TEST_CASE("planted obstacle forces a verified detour") {
    PathFamily fam = PathFamily::build(8);
    LInfBall obstacle = make_ball({make_rat(1, 2), make_rat(3, 2)}, make_rat(1, 10));
    fam.plant_obstacle(obstacle);

    // The chord of (3,0) passes through the planted ball, so the lazy path
    // must skirt it.
    const PLPath& p = fam.path(3, 0);
    CHECK(p.pts.size() >= 5);
    CHECK(p.pts.front().second == 3);
    CHECK(p.pts.back().second == 0);
    CHECK(ball_avoids_path(obstacle, p));
    for (const auto& bp : p.pts) {
        CHECK(bp.second >= Rat(-1));
        CHECK(bp.second <= Rat(4));
    }
    for (const auto& b : fam.balls()) CHECK(ball_avoids_path(b, p));

    auto rep = fam.verify_invariants(true);
    for (const auto& f : rep.failures) MESSAGE(f);
    CHECK(rep.passed());

    // Planting something that violates the state is rejected.
    CHECK_THROWS_AS(fam.plant_obstacle(make_ball({make_rat(1, 2), Rat(0)}, make_rat(1, 8))),
                    std::invalid_argument);  // touches an integer line
    CHECK_THROWS_AS(
        fam.plant_obstacle(make_ball({make_rat(1, 100), Rat(5)}, make_rat(1, 10))),
        std::invalid_argument);  // pokes out of the strip
}

TEST_CASE("fiberwise_shift: identities, boundary restriction, translations") {
    PathFamily fam = PathFamily::build(25);

    // k = l = 0 over constant paths: the identity map.
    for (int i = 1; i < 6; ++i) {
        RatPoint z{make_rat(i, 7), make_rat(3 * i - 7, 5)};
        CHECK(fam.fiberwise_shift(0, 0, z) == z);
    }

    // k = l = m: exact vertical translation.
    for (long m : {-3l, -1l, 2l, 5l}) {
        for (int i = 1; i < 5; ++i) {
            RatPoint z{make_rat(i, 5), make_rat(2 * i - 5, 3)};
            RatPoint w = fam.fiberwise_shift(m, m, z);
            CHECK(w.x == z.x);
            CHECK(w.y == z.y + Rat(m));
        }
    }

    // Boundary restriction is exactly the prescribed shift.
    for (long k : {-2l, 0l, 3l}) {
        for (long l : {-1l, 2l, 4l}) {
            for (int j = -3; j <= 3; ++j) {
                Rat y = make_rat(2 * j + 1, 3);
                RatPoint left = fam.fiberwise_shift(k, l, {Rat(0), y});
                CHECK(left == RatPoint{Rat(0), y + Rat(k)});
                RatPoint right = fam.fiberwise_shift(k, l, {Rat(1), y});
                CHECK(right == RatPoint{Rat(1), y + Rat(l)});
            }
        }
    }

    // Band boundaries map to the image paths: at y = a the output is
    // pi_{a+k,a+l}(x) itself.
    RatPoint corner{make_rat(2, 5), Rat(1)};
    RatPoint img = fam.fiberwise_shift(2, 3, corner);
    CHECK(img.y == pl_eval(fam.path(3, 4), corner.x));
}

TEST_CASE("fiberwise_shift_inv: exact round trips and band ties") {
    PathFamily fam = PathFamily::build(25);
    for (long k : {-4l, 0l, 1l, 5l}) {
        for (long l : {-5l, -1l, 2l, 4l}) {
            for (int i = 1; i <= 5; ++i) {
                for (int j = -8; j <= 8; ++j) {
                    RatPoint z{make_rat(i, 6), make_rat(5 * j + 2, 11)};
                    RatPoint w = fam.fiberwise_shift(k, l, z);
                    RatPoint back = fam.fiberwise_shift_inv(k, l, w);
                    CHECK(back == z);
                    CHECK(fam.fiberwise_shift(k, l, back) == w);
                }
            }
        }
    }
    // A point exactly on an image-path graph still round-trips.
    RatPoint edge = fam.fiberwise_shift(1, 2, {make_rat(1, 3), Rat(2)});
    CHECK(fam.fiberwise_shift(1, 2, fam.fiberwise_shift_inv(1, 2, edge)) == edge);
}

TEST_CASE("fiberwise_shift is strictly increasing in y along a fiber") {
    PathFamily fam = PathFamily::build(25);
    Rat x = make_rat(3, 7);
    Rat prev;
    bool first = true;
    for (int j = -20; j <= 20; ++j) {
        RatPoint w = fam.fiberwise_shift(2, -1, {x, make_rat(j, 4)});
        if (!first) CHECK(w.y > prev);
        prev = w.y;
        first = false;
    }
}

TEST_CASE("distortion bound: pinned instance and sweep") {
    PathFamily fam = PathFamily::build(25);

    // The illustrated values k=3, l=4 at (1/2, 1/2): with chord paths the
    // image ordinate is exactly 4, inside [2, 6].
    auto d = fam.distortion_check(3, 4, {make_rat(1, 2), make_rat(1, 2)});
    CHECK(d.ok);
    CHECK(d.image.y == 4);
    CHECK(d.lower_slack == 2);
    CHECK(d.upper_slack == 2);

    // k = l = 0: the bound reads floor(y) - 1 <= y <= floor(y) + 2.
    auto d0 = fam.distortion_check(0, 0, {make_rat(1, 3), make_rat(7, 5)});
    CHECK(d0.ok);
    CHECK(d0.image.y == make_rat(7, 5));

    // Sweep k, l in [-5,5]^2 at sample points: zero violations.
    for (long k = -5; k <= 5; ++k) {
        for (long l = -5; l <= 5; ++l) {
            for (int t = 0; t < 6; ++t) {
                RatPoint z{make_rat(t + 1, 8), make_rat(7 * t - 20, 6)};
                CHECK(fam.distortion_check(k, l, z).ok);
            }
        }
    }
}

TEST_CASE("lazy materialization is order-independent") {
    PathFamily f1 = PathFamily::build(16);
    PathFamily f2 = PathFamily::build(16);
    // Query the same pairs in different orders; results must be identical.
    std::vector<std::pair<long, long>> pairs = {{4, 6}, {-3, -1}, {6, 4}, {0, 5}};
    for (auto it = pairs.begin(); it != pairs.end(); ++it)
        (void)f1.path(it->first, it->second);
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it)
        (void)f2.path(it->first, it->second);
    for (const auto& [a, b] : pairs) CHECK(f1.path(a, b).pts == f2.path(a, b).pts);
}
