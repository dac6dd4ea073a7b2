#pragma once

// The trapezoid decomposition of J = [-1,1]^2 and the flow homeomorphism p
// that shifts each trapezoid one row up, built from the row-height sequences
//
//   s^0_0 = 0,  s^0_n = 1/2^n,  s^{k+1}_{2n-1} = s^{k+1}_{2n} = s^k_n / 2.
//
// Columns and rows are indexed over all of Z. For nonnegative indices the
// vertices are the partial sums of these sequences; negative columns mirror
// across x = 0 (a -> -a-1) and negative rows across y = 0 (b -> -b-1), which
// glues the quadrants along the axes. p maps T_{a,b} onto T_{a,b+1} by the
// bilinear charts, fixes the boundary of J pointwise, preserves x exactly,
// and pushes every interior orbit to the top edge (bottom edge backwards).
//
// A SquareFlow materializes a finite window of the decomposition. Anything
// outside the window raises WindowExceeded with the size that would have
// sufficed.

#include "carpet/geometry.hpp"
#include "carpet/recipe.hpp"
#include "carpet/support.hpp"

#include <vector>

namespace carpet {

/// The row-height sequence s^k_n, by the defining recursion.
Rat s_seq(unsigned k, unsigned n);

/// Partial sum sum_{j=0..n} s^k_j in closed form: with n = q 2^k + r,
/// the value is 1 - 2^-q + r 2^-(k+q+1).
Rat s_partial(unsigned k, unsigned n);

/// Exact tail 1 - s_partial.
Rat s_tail(unsigned k, unsigned n);

/// Column boundary line: X(m) = 1 - 2^-m for m >= 0, mirrored for m < 0.
Rat column_line(long m);

/// Row boundary height on the vertical line with index `line`:
/// sign(b) * s_partial(|line|, |b|).
Rat row_edge(long line, long b);

struct TrapIndex {
    long a, b;
    bool operator==(const TrapIndex&) const = default;
};

/// T_{a,b} for any (a,b) in Z^2 (window-free; computed from closed forms).
VSTrapezoid flow_trapezoid(long a, long b);

class SquareFlow {
public:
    /// Materializes columns |a| <= a_max and rows |b| <= b_max. The cached
    /// edge table covers lines |m| <= a_max + 1 and rows |b| <= b_max + 2 so
    /// any single flow step inside the window stays in cache.
    SquareFlow(long a_max, long b_max);

    long a_max() const { return a_max_; }
    long b_max() const { return b_max_; }

    VSTrapezoid trapezoid(long a, long b) const;

    /// Point location for interior points of J. Ties on shared edges resolve
    /// to the larger b, then the larger a.
    TrapIndex locate(const RatPoint& z) const;

    /// One flow step: boundary points are fixed; interior points move by the
    /// chart rule with x preserved exactly.
    RatPoint p_apply(const RatPoint& z) const;
    RatPoint p_inverse(const RatPoint& z) const;

    /// n-fold composition of p (negative n iterates the inverse). Exact: the
    /// chart parameters (s,t) are invariant along an orbit, so the n-th
    /// iterate is a single evaluation against row b+n.
    RatPoint orbit(const RatPoint& z, long n) const;

    /// Cached row edge; outside the cache this recomputes the closed form.
    Rat edge(long line, long b) const;

private:
    long a_max_, b_max_;
    std::vector<std::vector<Rat>> esum_;  // esum_[k][m], k <= a_max_+1, m <= b_max_+2

    struct Located {
        long a, b;
        Rat lambda;  // fiber parameter from x
    };
    Located locate_full(const RatPoint& z) const;
    Rat boundary(long a, const Rat& lambda, long m) const;
};

/// Conjugate of the flow on the unit square I = [0,1]^2 through
/// alpha(x,y) = ((x+1)/2, (y+1)/2): fixes the boundary of I, orbits converge
/// to (x,1) forward and (x,0) backward.
RatPoint pi_on_unit_square(const SquareFlow& flow, const RatPoint& z, long n = 1);

/// The flow-invariant recipe: seed recipes in every window column of the
/// b = 0 band, transported through the band iterates p^c for |c| <= bands.
/// Each ball records its (column, band, seed index), making the transport
/// identity p(ball in band c) = same ball in band c+1 exact bookkeeping.
DeballingRecipe square_recipe(unsigned seed_depth, long bands, long columns);

}  // namespace carpet
