#include <doctest.h>

#include "nrank/rational_poly.hpp"
#include "nrank/errors.hpp"
#include "test_util.hpp"

using namespace nrank;

TEST_CASE("arithmetic and division") {
    RationalPoly f{6, -5, 1};   // x^2 - 5x + 6
    RationalPoly g{-2, 1};      // x - 2
    auto [q, r] = f.divmod(g);
    CHECK(r.is_zero());
    CHECK(q == RationalPoly{-3, 1});
    CHECK(f.eval(2) == 0);
    CHECK(f.eval(0) == 6);
    CHECK((g * q + r) == f);
    CHECK_THROWS(f.divexact(RationalPoly{1, 1}));
}

TEST_CASE("gcd and squarefree detection") {
    RationalPoly f{-2, 1};
    RationalPoly g = f * f * RationalPoly{-3, 1};
    CHECK(gcd(g, g.derivative()) == f.monic());
    CHECK(!is_squarefree(g));
    CHECK(is_squarefree(RationalPoly{6, -5, 1}));
}

TEST_CASE("char_poly fixtures") {
    IntegerMatrix D(2);
    D(0, 0) = 2; D(1, 1) = 3;
    CHECK(char_poly(D) == RationalPoly{6, -5, 1});

    // companion of x^2 - t x + q for t = 7, q = 3
    IntegerMatrix C{{0, -3}, {1, 7}};
    CHECK(char_poly(C) == RationalPoly{3, -7, 1});

    IntegerMatrix E1{{21, -10, 2, -12, 1},
                     {15, -7, 5, -15, 3},
                     {3, -2, 4, -3, 1},
                     {9, -4, -1, 0, -1},
                     {-2, 1, 1, 2, 2}};
    // (x-2)(x-3)^3(x-9)
    RationalPoly expected = RationalPoly{-2, 1} * RationalPoly{-3, 1}.pow(3) * RationalPoly{-9, 1};
    CHECK(char_poly(E1) == expected);
}

TEST_CASE("char_poly matches cofactor-expansion determinant of xI - A") {
    std::mt19937_64 rng(2024);
    for (std::size_t d = 1; d <= 5; ++d)
        for (int trial = 0; trial < 8; ++trial) {
            auto A = testutil::random_matrix(rng, d, -6, 6);
            auto cp = char_poly(A);
            // evaluate det(xI - A) at several integer points via the oracle
            for (long x = -3; x <= 3; ++x) {
                IntegerMatrix M(d);
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j) M(i, j) = (i == j ? Int(x) : Int(0)) - A(i, j);
                CHECK(cp.eval(Rat(x)) == Rat(testutil::det_cofactor(M)));
            }
        }
}

TEST_CASE("resultant fixtures and Sylvester oracle") {
    // res(x - a, x - b) = a - b
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b)
            CHECK(resultant(RationalPoly{-a, 1}, RationalPoly{-b, 1}) == Rat(a - b));

    CHECK(resultant(RationalPoly{-2, 0, 1}, RationalPoly{-3, 0, 1}) == 1);
    RationalPoly f{1, 2, 3};
    CHECK(resultant(f, f) == 0);
    CHECK_THROWS(resultant(RationalPoly::zero(), f));
    // resultant vanishes iff common factor
    RationalPoly p{-2, 1}, q{-5, 1};
    CHECK(resultant(p * q, q * RationalPoly{7, 1}) == 0);
    CHECK(resultant(p, q) != 0);
}

TEST_CASE("power sums round-trip") {
    RationalPoly f = RationalPoly{-2, 1} * RationalPoly{-3, 1} * RationalPoly{1, 1};
    auto ps = root_power_sums(f, 6);
    CHECK(ps[0] == 4);        // 2 + 3 - 1
    CHECK(ps[1] == 14);       // 4 + 9 + 1
    CHECK(poly_from_power_sums({ps[0], ps[1], ps[2]}) == f);
}

TEST_CASE("power and product root polynomials") {
    RationalPoly f{-2, 0, 1};  // roots +-sqrt(2)
    auto sq = power_roots_poly(f, 2);
    CHECK(sq == RationalPoly{4, -4, 1});  // (x-2)^2

    RationalPoly g{-3, 1};  // root 3
    auto pr = product_roots_poly(f, g);
    CHECK(pr == RationalPoly{-18, 0, 1});  // roots +-3 sqrt 2

    // golden ratio pair: products of roots of x^2-x-1 with themselves
    RationalPoly phi{-1, -1, 1};
    auto pp = product_roots_poly(phi, phi);
    // roots: phi^2, phi phibar = -1 (twice), phibar^2 -> (x+1)^2 (x^2 - 3x + 1)
    CHECK(pp == RationalPoly{1, 1}.pow(2) * RationalPoly{1, -3, 1});
}

TEST_CASE("reversed_monic gives inverse roots") {
    RationalPoly f{5, 3, 1};  // x^2 + 3x + 5
    auto inv = f.reversed_monic();
    // roots 1/alpha: minimal polynomial x^2 + (3/5) x + 1/5
    CHECK(inv == RationalPoly(std::vector<Rat>{Rat(1, 5), Rat(3, 5), Rat(1)}));
    CHECK_THROWS(RationalPoly{0, 1}.reversed_monic());
}

TEST_CASE("poly text format") {
    auto p = parse_poly("6,-5,1");
    CHECK(p == RationalPoly{6, -5, 1});
    CHECK(format_poly(p) == "6,-5,1");
    auto q = parse_poly("1/2, 3");
    CHECK(q == RationalPoly(std::vector<Rat>{Rat(1, 2), Rat(3)}));
    CHECK_THROWS_AS(parse_poly("1,,2"), ParseError);
    CHECK_THROWS_AS(parse_poly("a,b"), ParseError);
    CHECK(pretty_poly(p) == "x^2 - 5x + 6");
}
