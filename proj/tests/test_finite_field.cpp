#include <doctest.h>

#include "nrank/finite_field.hpp"
#include "nrank/errors.hpp"

using namespace nrank;

TEST_CASE("primality helper") {
    CHECK(is_prime(2));
    CHECK(is_prime(5));
    CHECK(is_prime(1000003));
    CHECK(!is_prime(1));
    CHECK(!is_prime(15625));
}

TEST_CASE("prime field arithmetic") {
    FiniteField F(7, 1);
    CHECK(F.q() == 7);
    auto three = F.from_int(3), five = F.from_int(5);
    CHECK(F.mul(three, five) == F.from_int(1));  // 15 = 1 mod 7
    CHECK(F.add(three, five) == F.from_int(1));
    CHECK(F.inv(three) == five);
    CHECK(F.pow(three, 6) == F.one());
    CHECK(F.is_zero(F.sub(three, three)));
    CHECK(F.from_int(-1) == F.from_int(6));
}

TEST_CASE("extension field F_25") {
    FiniteField F(5, 2);
    CHECK(F.q() == 25);
    // the multiplicative group has order 24
    auto g = F.element_from_index(5);  // the generator candidate x
    CHECK(F.pow(g, 24) == F.one());
    // every nonzero element satisfies a^24 = 1
    for (long i = 1; i < 25; ++i) {
        auto a = F.element_from_index(i);
        CHECK(F.pow(a, 24) == F.one());
        CHECK(F.mul(a, F.inv(a)) == F.one());
    }
}

TEST_CASE("index round-trip") {
    FiniteField F(5, 3);
    for (long i : {0l, 1l, 7l, 31l, 124l}) {
        auto e = F.element_from_index(i);
        CHECK(F.index_of(e) == i);
    }
    CHECK_THROWS(F.element_from_index(125));
}

TEST_CASE("quadratic character and square roots") {
    FiniteField F(13, 1);
    int squares = 0;
    for (long i = 1; i < 13; ++i) {
        auto a = F.element_from_index(i);
        int c = F.chi(a);
        if (c == 1) {
            ++squares;
            auto r = F.sqrt(a);
            REQUIRE(r.has_value());
            CHECK(F.mul(*r, *r) == a);
        } else {
            CHECK(!F.sqrt(a).has_value());
        }
    }
    CHECK(squares == 6);
    CHECK(F.chi(F.zero()) == 0);
    auto zero_root = F.sqrt(F.zero());
    REQUIRE(zero_root.has_value());
    CHECK(F.is_zero(*zero_root));
}

TEST_CASE("square roots in an extension with q = 1 mod 4") {
    FiniteField F(5, 2);  // q = 25 = 1 mod 4, full Tonelli-Shanks path
    int squares = 0;
    for (long i = 1; i < 25; ++i) {
        auto a = F.element_from_index(i);
        if (F.chi(a) == 1) {
            ++squares;
            auto r = F.sqrt(a);
            REQUIRE(r.has_value());
            CHECK(F.mul(*r, *r) == a);
        }
    }
    CHECK(squares == 12);
}

TEST_CASE("deterministic modulus") {
    FiniteField a(5, 2), b(5, 2);
    CHECK(a.modulus() == b.modulus());
    CHECK(a == b);
    // x^2 + 2 is the lexicographically first irreducible over F_5
    CHECK(a.modulus() == fp::Poly{2, 0, 1});
}

TEST_CASE("input validation") {
    CHECK_THROWS(FiniteField(4, 1));
    CHECK_THROWS(FiniteField(5, 0));
    FiniteField F(5, 1);
    CHECK_THROWS(F.inv(F.zero()));
}
