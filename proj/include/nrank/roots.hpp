#pragma once

#include <optional>
#include <vector>

#include "nrank/interval.hpp"
#include "nrank/rational_poly.hpp"

namespace nrank {

// Number of roots of a squarefree p strictly inside the rectangle, by the
// argument principle: the winding number of p along the boundary, computed
// exactly through Cauchy indices of Sturm chains on each edge. Returns
// nullopt when a root lies on (or a corner degenerates onto) the boundary;
// callers nudge the rectangle and retry.
std::optional<long> count_roots_in_box(const RationalPoly& p, const BoxC& box);

// Isolating rectangles for all complex roots of p (squarefree part is taken
// internally): pairwise disjoint, each containing exactly one root, ordered
// by (re.lo, im.lo). Rational roots of linear polynomials come back as
// degenerate point boxes.
std::vector<BoxC> isolate_roots(const RationalPoly& p);

// Shrink a certified single-root rectangle until both sides are narrower
// than 2^-bits. Interval Newton with verified bisection fallback; endpoints
// stay dyadic rationals.
BoxC refine_root_box(const RationalPoly& p, BoxC box, unsigned bits);

// Certified enclosure of p evaluated over a rectangle.
BoxC eval_poly_box(const RationalPoly& p, const BoxC& z);
// Exact evaluation at a Gaussian rational point.
std::pair<Rat, Rat> eval_poly_point(const RationalPoly& p, const Rat& re, const Rat& im);

// Number of real roots in [a, b] by Sturm's theorem (p squarefree).
long count_real_roots(const RationalPoly& p, const Rat& a, const Rat& b);

}  // namespace nrank
