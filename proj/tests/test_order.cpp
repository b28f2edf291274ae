#include <doctest.h>

#include <cmath>

#include "nrank/order.hpp"
#include "nrank/smith.hpp"
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

IntegerMatrix diag(std::initializer_list<long> v) {
    IntegerMatrix m(v.size());
    std::size_t i = 0;
    for (long x : v) m(i, i) = x, ++i;
    return m;
}

// brute-force oracle: first k with all (r+1)-minors of A^k - I divisible by N
std::optional<unsigned long> ord_brute(const IntegerMatrix& A, const Int& N, std::size_t r,
                                       unsigned long k_max) {
    IntegerMatrix P = IntegerMatrix::identity(A.dim());
    for (unsigned long k = 1; k <= k_max; ++k) {
        P = P * A;
        IntegerMatrix M = P;
        for (std::size_t i = 0; i < M.dim(); ++i) M(i, i) -= 1;
        bool all = true;
        for (const auto& mi : all_minors(M, r + 1))
            if (!mpz_divisible_p(mi.get_mpz_t(), N.get_mpz_t())) {
                all = false;
                break;
            }
        if (all) return k;
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("unipotent order mod N equals N") {
    IntegerMatrix U{{1, 1}, {0, 1}};
    for (long N = 2; N <= 40; ++N) {
        auto res = ord_r(U, N, 0);
        REQUIRE(res.finite);
        CHECK(res.value == static_cast<unsigned long>(N));
    }
}

TEST_CASE("2^k - 1 is never even: infinite order with period 1") {
    auto res = ord_r(IntegerMatrix{{2}}, 2, 0);
    CHECK(!res.finite);
    CHECK(res.period == 1);
    CHECK(res.preperiod == 0);
}

TEST_CASE("diag(2,3) mod 7 at r=1 first hits at k=3") {
    auto res = ord_r(diag({2, 3}), 7, 1);
    REQUIRE(res.finite);
    CHECK(res.value == 3);
    CHECK(res.value == ord_brute(diag({2, 3}), 7, 1, 50));
}

TEST_CASE("ord matches the brute-force oracle on random inputs") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 30; ++trial) {
        auto A = testutil::random_matrix(rng, 2 + trial % 2, -4, 4);
        Int N = 2 + trial % 9;
        std::size_t r = trial % 2;
        auto fast = ord_r(A, N, r);
        auto brute = ord_brute(A, N, r, 300);
        if (fast.finite) {
            REQUIRE(brute.has_value());
            CHECK(fast.value == *brute);
        } else {
            CHECK(!brute.has_value());
        }
    }
}

TEST_CASE("ord is monotone decreasing in r and trivial at r = d") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 15; ++trial) {
        auto A = testutil::random_matrix(rng, 3, -3, 3);
        Int N = 2 + trial % 7;
        unsigned long prev = 0;
        bool prev_finite = false;
        for (std::size_t r = 0; r <= 3; ++r) {
            auto res = ord_r(A, N, r);
            if (r == 3) CHECK((res.finite && res.value == 1));
            // once finite, stays finite and never grows as r increases
            if (prev_finite) {
                REQUIRE(res.finite);
                CHECK(res.value <= prev);
            }
            prev = res.value;
            prev_finite = res.finite;
        }
    }
}

TEST_CASE("mod-N locality of ord") {
    std::mt19937_64 rng(71);
    auto A = diag({2, 3});
    for (int trial = 0; trial < 10; ++trial) {
        Int N = 5 + trial;
        auto R = testutil::random_matrix(rng, 2, -4, 4);
        IntegerMatrix shifted = A;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) shifted(i, j) += N * R(i, j);
        auto a = ord_r(A, N, 1), b = ord_r(shifted, N, 1);
        CHECK(a.finite == b.finite);
        if (a.finite) CHECK(a.value == b.value);
    }
}

TEST_CASE("matrix order identities") {
    auto rot = ord0_matches_matrix_order(IntegerMatrix{{0, -1}, {1, 0}}, 5);
    CHECK(rot.matches);
    CHECK(rot.order == 4);

    auto ident = ord0_matches_matrix_order(IntegerMatrix::identity(3), 11);
    CHECK(ident.matches);
    CHECK(ident.order == 1);

    // Fibonacci companion and the Pisano period pi(10) = 60
    auto fib = ord0_matches_matrix_order(IntegerMatrix{{0, 1}, {1, 1}}, 10);
    CHECK(fib.matches);
    CHECK(fib.order == 60);

    CHECK_THROWS(ord0_matches_matrix_order(IntegerMatrix{{2}}, 4));
}

TEST_CASE("growth series: diag(2,3) has the single minor (2^n-1)(3^n-1)") {
    auto s = gcd_growth_series(diag({2, 3}), 1, 8);
    REQUIRE(s.points.size() == 8);
    Int p2 = 1, p3 = 1;
    for (unsigned long n = 1; n <= 8; ++n) {
        p2 *= 2;
        p3 *= 3;
        CHECK(s.points[n - 1].gcd == (p2 - 1) * (p3 - 1));
    }
}

TEST_CASE("growth series: identity has all-vanishing minors") {
    auto s = gcd_growth_series(IntegerMatrix::identity(2), 0, 3);
    for (const auto& p : s.points) {
        CHECK(p.gcd == 0);
        CHECK(std::isinf(p.log_gcd));
    }
}

TEST_CASE("growth series of the 5x5 fixture is divisible by 3^n - 1 at r = 3") {
    auto s = gcd_growth_series(example1(), 3, 6);
    Int v = 728;  // 3^6 - 1
    CHECK(mpz_divisible_p(s.points[5].gcd.get_mpz_t(), v.get_mpz_t()));
}

TEST_CASE("ord consistency with the growth series") {
    auto A = diag({2, 3});
    Int N(7);
    auto res = ord_r(A, N, 1);
    REQUIRE(res.finite);
    auto s = gcd_growth_series(A, 1, res.value + 3);
    for (unsigned long k = 1; k < res.value; ++k)
        CHECK(!mpz_divisible_p(s.points[k - 1].gcd.get_mpz_t(), N.get_mpz_t()));
    CHECK(mpz_divisible_p(s.points[res.value - 1].gcd.get_mpz_t(), N.get_mpz_t()));
}

TEST_CASE("k_invariant on the Frobenius companion of x^2+3x+5") {
    IntegerMatrix F{{0, -5}, {1, -3}};
    auto k3 = k_invariant(F, 3, 20);
    REQUIRE(k3.has_value());
    CHECK(*k3 == 2);
    // alpha_{2,1} = -3 and alpha_{2,2} = 27 exactly
    auto M = F.pow(2);
    M(0, 0) -= 1;
    M(1, 1) -= 1;
    CHECK(M.trace() == -3);
    CHECK(M.det() == 27);
}

TEST_CASE("k_invariant trivial case: A = I mod 2") {
    IntegerMatrix A{{3, 2}, {4, 5}};
    auto k = k_invariant(A, 2, 10);
    REQUIRE(k.has_value());
    CHECK(*k == 1);
}

TEST_CASE("k_invariant for diag(2,3) mod 7 by brute oracle") {
    auto A = diag({2, 3});
    auto k = k_invariant(A, 7, 50);
    REQUIRE(k.has_value());
    // brute force: smallest n with 7 | alpha_{n,1}^2 and 7 | alpha_{n,2}
    unsigned long expect = 0;
    Int p2 = 1, p3 = 1;
    for (unsigned long n = 1; n <= 50 && expect == 0; ++n) {
        p2 *= 2;
        p3 *= 3;
        Int a1 = (p2 - 1) + (p3 - 1), a2 = (p2 - 1) * (p3 - 1);
        if ((a1 * a1) % 7 == 0 && a2 % 7 == 0) expect = n;
    }
    CHECK(*k == expect);
    CHECK(*k == 6);
}

TEST_CASE("k_invariant is monotone under modulus growth") {
    auto A = diag({2, 3});
    auto k7 = k_invariant(A, 7, 100);
    auto k35 = k_invariant(A, 35, 100);
    REQUIRE(k7.has_value());
    REQUIRE(k35.has_value());
    CHECK(*k7 <= *k35);
}

TEST_CASE("lemma minor determinants in closed form") {
    // k = 1: the single entry is n eta^(n-1)
    for (unsigned long n : {1ul, 2ul, 5ul, 9ul}) {
        Int two_pow;
        mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, n - 1);
        CHECK(lemma_minor_det(2, 1, n) == Int(n) * two_pow);
        CHECK(abs(lemma_minor_det(-1, 1, n)) == n);
    }
    // k = 2, eta = 3, n = 4: brute force from B(3)^4 - I
    IntegerMatrix B{{3, 1, 0}, {0, 3, 1}, {0, 0, 3}};
    auto P = B.pow(4);
    IntegerMatrix M = P;
    for (int i = 0; i < 3; ++i) M(i, i) -= 1;
    Int expect = minor_det(M, {{0, 1}, {1, 2}});
    CHECK(lemma_minor_det(3, 2, 4) == expect);
}

TEST_CASE("lemma gcd check: gcd(4^n-1, n 2^(n-1)) = gcd(4^n-1, n) <= n") {
    auto s = lemma_gcd_check(4, 2, 1, 200);
    for (const auto& p : s.points) {
        CHECK(p.gcd <= p.n);
        if (p.n >= 2) CHECK(p.log_gcd <= std::log(static_cast<double>(p.n)) + 1e-12);
    }
}

TEST_CASE("lemma gcd check validates dependence") {
    CHECK_THROWS(lemma_gcd_check(2, 3, 1, 5));   // independent
    CHECK_NOTHROW(lemma_gcd_check(9, 3, 1, 5));  // 9 = 3^2
    CHECK_NOTHROW(lemma_gcd_check(2, -1, 1, 5));  // unity branch
    CHECK_THROWS(lemma_gcd_check(1, 2, 1, 5));
}

TEST_CASE("witness series of the 5x5 fixture at r = 3") {
    auto A = example1();
    auto prof = spectral_profile(A);
    auto w = exceptional_witness_series(A, prof, 3, 40);
    CHECK(w.m == 1);
    // representative is 3, the minimal height in {3, 9}
    CHECK(prof.eigen[w.rep_index].value.integer_value() == 3);
    CHECK(w.rep_height_lo <= std::log(3.0) + 1e-12);
    CHECK(w.rep_height_hi >= std::log(3.0) - 1e-12);
    // slope over the top half approaches log 3
    auto fit = fit_slope_top_half(w.series);
    CHECK(fit.slope > 0.9 * std::log(3.0));
    CHECK(fit.slope < 1.1 * (std::log(3.0) + std::log(9.0)));
}

TEST_CASE("witness series of diag(2,4) at r = 0: gcd is exactly 2^n - 1") {
    auto A = diag({2, 4});
    auto prof = spectral_profile(A);
    auto w = exceptional_witness_series(A, prof, 0, 30);
    CHECK(w.m == 1);
    CHECK(prof.eigen[w.rep_index].value.integer_value() == 2);
    for (const auto& pt : w.series.points) {
        Int expect;  // gcd(2^n - 1, 4^n - 1) = 2^n - 1
        mpz_ui_pow_ui(expect.get_mpz_t(), 2, pt.n);
        expect -= 1;
        CHECK(pt.gcd == expect);
    }
    auto fit = fit_slope_top_half(w.series);
    CHECK(std::abs(fit.slope - std::log(2.0)) < 0.05);
}

TEST_CASE("witness series with torsion: the Jordan-data realization") {
    auto A = IntegerMatrix::block_diag(
        {IntegerMatrix{{1}}, IntegerMatrix{{-1}}, IntegerMatrix{{2, 1}, {0, 2}}, IntegerMatrix{{4}}});
    auto prof = spectral_profile(A);
    auto w = exceptional_witness_series(A, prof, 1, 24);
    CHECK(w.m == 2);  // torsion order of -1
    for (const auto& pt : w.series.points) CHECK(pt.n % 2 == 0);
    CHECK_THROWS(exceptional_witness_series(A, prof, 0, 10));
}

TEST_CASE("slope fitting basics") {
    GrowthSeries s;
    for (unsigned long n = 1; n <= 10; ++n) {
        GrowthPoint p;
        p.n = n;
        p.gcd = 1;
        p.log_gcd = 2.5 * n + 1.0;
        s.points.push_back(p);
    }
    auto fit = fit_slope(s, 1, 10);
    CHECK(fit.slope == doctest::Approx(2.5));
    CHECK(fit.intercept == doctest::Approx(1.0));
    CHECK(fit.residual == doctest::Approx(0.0));
}
