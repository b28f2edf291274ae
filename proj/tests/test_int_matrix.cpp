#include <doctest.h>

#include "nrank/int_matrix.hpp"
#include "nrank/errors.hpp"
#include "test_util.hpp"

using namespace nrank;

TEST_CASE("identity powers stay identity mod N") {
    auto I3 = IntegerMatrix::identity(3);
    CHECK(I3.pow_mod(7, 5) == I3);
}

TEST_CASE("unipotent power adds k to the corner") {
    IntegerMatrix A{{1, 1}, {0, 1}};
    auto P = A.pow_mod(6, 4);
    CHECK(P(0, 0) == 1);
    CHECK(P(0, 1) == 2);  // 6 mod 4
    CHECK(P(1, 0) == 0);
    CHECK(P(1, 1) == 1);
}

TEST_CASE("pow_mod agrees with brute-force repeated multiplication") {
    IntegerMatrix R{{0, -1}, {1, 0}};
    auto P = R.pow_mod(4, 7);
    CHECK(P == IntegerMatrix::identity(2));

    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        auto A = testutil::random_matrix(rng, 3);
        Int N = 2 + (trial % 11);
        unsigned long k = 1 + (trial % 9);
        IntegerMatrix brute = IntegerMatrix::identity(3);
        for (unsigned long s = 0; s < k; ++s) brute = brute * A;
        CHECK(A.pow_mod(k, N) == brute.reduced_mod(N));
    }
}

TEST_CASE("det matches cofactor oracle") {
    std::mt19937_64 rng(7);
    for (std::size_t d = 1; d <= 5; ++d)
        for (int trial = 0; trial < 25; ++trial) {
            auto A = testutil::random_matrix(rng, d);
            CHECK(A.det() == testutil::det_cofactor(A));
        }
}

TEST_CASE("rank of singular and unimodular matrices") {
    IntegerMatrix S{{1, 2}, {2, 4}};
    CHECK(S.rank() == 1);
    std::mt19937_64 rng(3);
    auto P = testutil::random_unimodular(rng, 4);
    CHECK(P.rank() == 4);
    CHECK(abs(P.det()) == 1);
}

TEST_CASE("matrix text format round-trips") {
    IntegerMatrix A{{21, -10, 2}, {15, -7, 5}, {3, -2, 4}};
    auto B = parse_matrix(format_matrix(A));
    CHECK(A == B);
    CHECK_THROWS_AS(parse_matrix("2\n1 2 3"), ParseError);
    CHECK_THROWS_AS(parse_matrix("0\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix("2\n1 x 3 4"), ParseError);
}

TEST_CASE("block_diag assembles Jordan-style fixtures") {
    auto A = IntegerMatrix::block_diag({IntegerMatrix{{1}}, IntegerMatrix{{2, 1}, {0, 2}}});
    CHECK(A.dim() == 3);
    CHECK(A(0, 0) == 1);
    CHECK(A(1, 1) == 2);
    CHECK(A(1, 2) == 1);
    CHECK(A(2, 1) == 0);
}
