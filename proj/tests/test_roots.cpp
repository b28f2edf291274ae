#include <doctest.h>

#include "nrank/roots.hpp"
#include "nrank/errors.hpp"

using namespace nrank;

namespace {

QInterval qi(long nlo, long dlo, long nhi, long dhi) { return QInterval(Rat(nlo, dlo), Rat(nhi, dhi)); }

bool box_contains(const BoxC& b, double re, double im) {
    return to_double(b.re.lo) <= re && re <= to_double(b.re.hi) && to_double(b.im.lo) <= im &&
           im <= to_double(b.im.hi);
}

}  // namespace

TEST_CASE("winding count on crafted rectangles") {
    RationalPoly f{1, 0, 1};  // x^2 + 1, roots +-i
    CHECK(count_roots_in_box(f, {qi(-1, 2, 1, 2), qi(1, 3, 7, 3)}) == 1);   // around i
    CHECK(count_roots_in_box(f, {qi(-3, 1, 3, 1), qi(-3, 1, 3, 1)}) == 2);  // both
    CHECK(count_roots_in_box(f, {qi(1, 1, 2, 1), qi(1, 1, 2, 1)}) == 0);

    RationalPoly g{-2, 1};  // x - 2
    CHECK(count_roots_in_box(g, {qi(3, 2, 5, 2), qi(-1, 3, 1, 5)}) == 1);

    // root exactly on the boundary: must refuse, not miscount
    CHECK(!count_roots_in_box(g, {qi(2, 1, 3, 1), qi(-1, 1, 1, 1)}).has_value());
}

TEST_CASE("isolation counts and locations") {
    auto roots_x2p1 = isolate_roots(RationalPoly{1, 0, 1});
    REQUIRE(roots_x2p1.size() == 2);
    CHECK(box_contains(roots_x2p1[0], 0.0, -1.0));
    CHECK(box_contains(roots_x2p1[1], 0.0, 1.0));

    auto cube = isolate_roots(RationalPoly{-2, 0, 0, 1});  // x^3 - 2
    REQUIRE(cube.size() == 3);
    int with_real_root = 0;
    for (const auto& b : cube)
        if (box_contains(b, 1.2599210498948732, 0.0)) ++with_real_root;
    CHECK(with_real_root == 1);

    auto lin = isolate_roots(RationalPoly{3, -6, 3});  // 3(x-1)^2 -> squarefree x-1
    REQUIRE(lin.size() == 1);
    CHECK(lin[0].re.is_point());
    CHECK(lin[0].re.lo == 1);

    auto trio = isolate_roots(RationalPoly{-6, 11, -6, 1});  // (x-1)(x-2)(x-3)
    REQUIRE(trio.size() == 3);
    CHECK(box_contains(trio[0], 1.0, 0.0));
    CHECK(box_contains(trio[1], 2.0, 0.0));
    CHECK(box_contains(trio[2], 3.0, 0.0));
}

TEST_CASE("isolation separates close roots") {
    // (x - 999/1000)(x - 1001/1000) scaled to integer coefficients
    RationalPoly f(std::vector<Rat>{Rat(999 * 1001, 1000000), Rat(-2, 1), Rat(1)});
    auto boxes = isolate_roots(f);
    REQUIRE(boxes.size() == 2);
    // disjoint interiors; a shared cut edge is fine since roots are interior
    CHECK(boxes[0].re.hi <= boxes[1].re.lo);
    CHECK(count_roots_in_box(f, boxes[0]) == 1);
    CHECK(count_roots_in_box(f, boxes[1]) == 1);
}

TEST_CASE("refinement reaches requested width and keeps the root") {
    RationalPoly f{-2, 0, 1};  // x^2 - 2
    auto boxes = isolate_roots(f);
    REQUIRE(boxes.size() == 2);
    BoxC pos = boxes[1];  // larger real part
    BoxC tight = refine_root_box(f, pos, 80);
    CHECK(tight.re.width() <= Rat(Int(1), Int(1) << 80));
    // sign change across the real interval certifies containment exactly
    CHECK(f.eval(tight.re.lo) < 0);
    CHECK(f.eval(tight.re.hi) > 0);
    CHECK(tight.re.lo > 1);
    // midpoint squared agrees with 2 to ~2^-79
    Rat err = abs(tight.re.mid() * tight.re.mid() - 2);
    CHECK(err < Rat(Int(1), Int(1) << 78));
}

TEST_CASE("refinement of a complex root") {
    RationalPoly f{5, 3, 1};  // x^2 + 3x + 5, roots (-3 +- i sqrt(11))/2
    auto boxes = isolate_roots(f);
    REQUIRE(boxes.size() == 2);
    auto upper = boxes[0].im.lo > 0 ? boxes[0] : boxes[1];
    BoxC tight = refine_root_box(f, upper, 64);
    CHECK(tight.max_width() <= Rat(Int(1), Int(1) << 64));
    // real part is exactly -3/2; imaginary part squared is 11/4
    CHECK(tight.re.contains(Rat(-3, 2)));
    Rat err = abs(tight.im.mid() * tight.im.mid() - Rat(11, 4));
    CHECK(err < Rat(Int(1), Int(1) << 62));
    // the enclosure must still contain a root: p evaluated over it straddles 0
    auto img = eval_poly_box(f, tight);
    CHECK(img.re.contains_zero());
    CHECK(img.im.contains_zero());
}

TEST_CASE("real root counting by Sturm") {
    RationalPoly f{-2, 0, 1};
    CHECK(count_real_roots(f, Rat(0), Rat(2)) == 1);
    CHECK(count_real_roots(f, Rat(-2), Rat(2)) == 2);
    CHECK(count_real_roots(f, Rat(2), Rat(3)) == 0);
    CHECK(count_real_roots(RationalPoly{1, 0, 1}, Rat(-5), Rat(5)) == 0);
}

TEST_CASE("point evaluation") {
    RationalPoly f{1, 2, 1};  // (x+1)^2
    auto [re, im] = eval_poly_point(f, Rat(-1), Rat(0));
    CHECK(re == 0);
    CHECK(im == 0);
    auto [re2, im2] = eval_poly_point(RationalPoly{0, 1}, Rat(3), Rat(-2));
    CHECK(re2 == 3);
    CHECK(im2 == -2);
}
