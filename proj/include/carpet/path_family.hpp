#pragma once

// The obstacle-avoiding path family on the strip L = [0,1] x R and the
// bounded-distortion fiberwise shifts built on it.
//
// The family interleaves two constructions over a fixed enumeration of
// integer pairs (a_n, b_n):
//   * a ball B_n centered at the n-th point of a fixed countable dense set Q
//     (2-adic abscissas, 3-adic ordinates), with a radius that keeps it off
//     the strip boundary, every integer line, every straight chord within
//     the construction horizon, and everything built before it;
//   * a path pi_n from (0, a_n) to (1, b_n) that stays in the band
//     [min-1, max+1], never meets a same-slope path at equal abscissa,
//     avoids every Q point, and detours around any ball in its way.
// Pairs with a_n = b_n get the constant path.
//
// Paths for pairs outside the built range are materialized on demand by the
// same deterministic rule (same-slope predecessors in enumeration order
// first), so queries are reproducible regardless of query order.
//
// The fiberwise shift h_{k,l} maps the band a <= y <= a+1 onto the band
// between pi_{a+k,a+l} and pi_{a+k+1,a+l+1} by linear interpolation in the
// fiber; restricted to the strip boundary it is exactly y -> y + k (left)
// and y -> y + l (right), and the image ordinate obeys
//   floor(y) + min(k,l) - 1 <= y~ <= floor(y) + 1 + max(k,l) + 1.

#include "carpet/geometry.hpp"
#include "carpet/support.hpp"

#include <map>
#include <string>
#include <vector>

namespace carpet {

/// Fixed square-spiral enumeration of Z^2: (0,0),(1,0),(1,1),(0,1),(-1,1),...
std::pair<long, long> pair_enum(unsigned n);

/// Inverse of pair_enum.
unsigned spiral_index(long a, long b);

/// The n-th point of the fixed dense family {(u/2^i, v/3^j)} with u odd,
/// 0 < u < 2^i, j >= 1, 3 not dividing v. No such point lies on a line
/// y = (1-x)a + xb with integer a,b: at x = u/2^i the line value is dyadic
/// while v/3^j is not.
RatPoint q_point(unsigned n);

/// Band index of the source decomposition: a = floor(y).
long locate_band(const RatPoint& z);

struct AuditEvent {
    unsigned step;
    std::string kind;
    std::string detail;
};

struct FamilyVerifyReport {
    bool band_ok = true;        // 1(a)
    bool noncross_ok = true;    // 1(b), same slope class
    bool q_ok = true;           // 1(c)
    bool balls_ok = true;       // 2(a): pairwise disjoint, off the boundary
    bool avoid_ok = true;       // 2(b): balls miss every path graph
    bool constant_ok = true;    // constant rule for a_n = b_n
    unsigned long checks = 0;
    std::vector<std::string> failures;

    bool passed() const {
        return band_ok && noncross_ok && q_ok && balls_ok && avoid_ok && constant_ok;
    }
};

class PathFamily {
public:
    /// Runs the interleaved construction for n < N: place the ball for
    /// q_point(n), then build the path for pair_enum(n). The ball-radius
    /// horizon covers every chord with enumeration index <= N.
    static PathFamily build(unsigned N);

    unsigned built_steps() const { return built_n_; }
    const std::vector<RatPoint>& q_points() const { return qpts_; }
    const std::vector<LInfBall>& balls() const { return balls_; }
    const std::vector<LInfBall>& planted() const { return planted_; }
    const std::vector<AuditEvent>& audit() const { return audit_; }

    bool has_path(long a, long b) const;

    /// The unique family path from (0,a) to (1,b); built on demand by the
    /// deterministic rule when outside the constructed range.
    const PLPath& path(long a, long b);

    /// Diagnostic hook for renders and tests: inject an obstacle ball that
    /// later-built paths must detour around. The ball must stay clear of the
    /// strip boundary, integer lines, Q points, and everything already built.
    void plant_obstacle(const LInfBall& ball);

    RatPoint fiberwise_shift(long k, long l, const RatPoint& z);
    RatPoint fiberwise_shift_inv(long k, long l, const RatPoint& z);

    struct Distortion {
        RatPoint image;
        Rat lower_slack;  // y~ - (floor(y) + min(k,l) - 1)
        Rat upper_slack;  // (floor(y) + 1 + max(k,l) + 1) - y~
        bool ok = false;
    };
    Distortion distortion_check(long k, long l, const RatPoint& z);

    /// Post-hoc verification of the five family invariants. The full mode
    /// checks every pair; the reduced mode keeps the linear checks and
    /// spot-checks the quadratic ones (used for very large families).
    FamilyVerifyReport verify_invariants(bool full = true) const;

private:
    unsigned built_n_ = 0;
    unsigned horizon_ = 0;
    std::vector<RatPoint> qpts_;
    std::vector<LInfBall> balls_;
    std::vector<unsigned> ball_step_;  // construction step of each ball
    std::vector<LInfBall> planted_;
    std::map<std::pair<long, long>, PLPath> paths_;
    std::map<long, std::vector<std::pair<long, long>>> by_class_;  // key: b - a
    std::vector<AuditEvent> audit_;

    void place_ball(unsigned n);
    const PLPath& materialize(long a, long b);
    PLPath construct_path(long a, long b);
    PLPath detoured_path(long a, long b);
    bool path_clear_of_qpoints(const PLPath& p) const;
    void insert_path(long a, long b, PLPath p);
    std::vector<const LInfBall*> all_obstacles() const;
};

}  // namespace carpet
