#include <doctest.h>

#include "nrank/invariant_factors.hpp"
#include "test_util.hpp"

using namespace nrank;

namespace {

IntegerMatrix example1() {
    return IntegerMatrix{{21, -10, 2, -12, 1},
                         {15, -7, 5, -15, 3},
                         {3, -2, 4, -3, 1},
                         {9, -4, -1, 0, -1},
                         {-2, 1, 1, 2, 2}};
}

// Independent block-count oracle: number of Jordan blocks of a rational
// eigenvalue lam equals d - rank(A - lam I).
std::size_t blocks_by_rank(const IntegerMatrix& A, long lam) {
    IntegerMatrix M = A;
    for (std::size_t i = 0; i < A.dim(); ++i) M(i, i) -= lam;
    return A.dim() - M.rank();
}

}  // namespace

TEST_CASE("identity and unipotent fixtures") {
    auto inv_i2 = invariant_factors(IntegerMatrix::identity(2));
    REQUIRE(inv_i2.factors.size() == 2);
    CHECK(inv_i2.factors[0] == RationalPoly{-1, 1});
    CHECK(inv_i2.factors[1] == RationalPoly{-1, 1});

    auto inv_u = invariant_factors(IntegerMatrix{{1, 1}, {0, 1}});
    REQUIRE(inv_u.factors.size() == 1);
    CHECK(inv_u.factors[0] == RationalPoly{1, -2, 1});  // (x-1)^2
}

TEST_CASE("the 5x5 mixed-spectrum fixture is cyclic") {
    auto inv = invariant_factors(example1());
    REQUIRE(inv.factors.size() == 1);
    CHECK(inv.factors[0] == char_poly(example1()));
    // oracle cross-check: one block per eigenvalue
    CHECK(blocks_by_rank(example1(), 2) == 1);
    CHECK(blocks_by_rank(example1(), 3) == 1);
    CHECK(blocks_by_rank(example1(), 9) == 1);
    CHECK(jordan_block_count(inv, RationalPoly{-3, 1}) == 1);
}

TEST_CASE("product, chain, and minimal polynomial invariants") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t d = 2 + trial % 4;
        auto A = testutil::random_matrix(rng, d, -4, 4);
        auto inv = invariant_factors(A);
        RationalPoly prod = RationalPoly::constant(1);
        for (std::size_t i = 0; i < inv.factors.size(); ++i) {
            CHECK(inv.factors[i].is_monic());
            prod = prod * inv.factors[i];
            if (i + 1 < inv.factors.size())
                CHECK(inv.factors[i + 1].divmod(inv.factors[i]).second.is_zero());
        }
        CHECK(prod == char_poly(A));
        // minimal polynomial annihilates A (integer coefficients: monic
        // divisor of the integer characteristic polynomial)
        CHECK(eval_poly_at_matrix(inv.minimal_poly(), A).is_zero());
    }
}

TEST_CASE("block counts match the rank oracle for crafted Jordan data") {
    // diag(3, 3, J_2(5)) assembled as a block matrix
    auto J = IntegerMatrix::block_diag({IntegerMatrix{{3}}, IntegerMatrix{{3}}, IntegerMatrix{{5, 1}, {0, 5}}});
    auto inv = invariant_factors(J);
    REQUIRE(inv.factors.size() == 2);
    CHECK(inv.factors[0] == RationalPoly{-3, 1});
    CHECK(inv.factors[1] == RationalPoly{-3, 1} * RationalPoly{-5, 1}.pow(2));
    CHECK(jordan_block_count(inv, RationalPoly{-3, 1}) == blocks_by_rank(J, 3));
    CHECK(jordan_block_count(inv, RationalPoly{-5, 1}) == blocks_by_rank(J, 5));
}
