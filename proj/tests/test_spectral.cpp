#include <doctest.h>

#include "nrank/spectral.hpp"
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

// block-diag(1, -1, J_2(2), 4): two roots of unity, a dependent pair {2, 4}
// with a nontrivial Jordan block on 2
IntegerMatrix example2_realization() {
    return IntegerMatrix::block_diag(
        {IntegerMatrix{{1}}, IntegerMatrix{{-1}}, IntegerMatrix{{2, 1}, {0, 2}}, IntegerMatrix{{4}}});
}

IntegerMatrix diag(std::initializer_list<long> v) {
    IntegerMatrix m(v.size());
    std::size_t i = 0;
    for (long x : v) m(i, i) = x, ++i;
    return m;
}

long class_value_of(const SpectralProfile& p, std::size_t class_idx) {
    return p.eigen[p.classes[class_idx].members.front()].value.integer_value().get_si();
}

}  // namespace

TEST_CASE("profile of the 5x5 mixed-spectrum fixture") {
    auto p = spectral_profile(example1());
    CHECK(p.d == 5);
    CHECK(p.l == 0);
    CHECK(p.l_bar == 0);
    REQUIRE(p.classes.size() == 2);
    // classes: {2} with (h, h_bar) = (1, 0); {3, 9} with (4, 2)
    unsigned h2 = 0, hb2 = 0, h39 = 0, hb39 = 0;
    for (std::size_t i = 0; i < p.classes.size(); ++i) {
        if (p.classes[i].members.size() == 1 && class_value_of(p, i) == 2) {
            h2 = p.classes[i].h;
            hb2 = p.classes[i].h_bar;
        } else {
            h39 = p.classes[i].h;
            hb39 = p.classes[i].h_bar;
        }
    }
    CHECK(h2 == 1);
    CHECK(hb2 == 0);
    CHECK(h39 == 4);
    CHECK(hb39 == 2);
    CHECK(p.dependence_decisive);
    REQUIRE(p.witnesses.size() == 1);
    // the recorded relation connects 3 and 9, exactly verified
    const auto& w = p.witnesses[0];
    std::vector<long> pair_vals = {p.eigen[w.i].value.integer_value().get_si(),
                                   p.eigen[w.j].value.integer_value().get_si()};
    std::sort(pair_vals.begin(), pair_vals.end());
    CHECK(pair_vals == std::vector<long>{3, 9});
    CHECK(verify_witness(p.eigen[w.i].value, p.eigen[w.j].value, w.witness.a1, w.witness.a2));
}

TEST_CASE("verdicts for the 5x5 fixture: 3-exceptional, 2-regular") {
    auto p = spectral_profile(example1());
    CHECK(classify(p, 3).kind == RegularityVerdict::Kind::Exceptional);
    CHECK(classify(p, 2).kind == RegularityVerdict::Kind::Regular);
    CHECK(classify(p, 1).kind == RegularityVerdict::Kind::Regular);
    CHECK(classify(p, 0).kind == RegularityVerdict::Kind::Regular);
    auto v3 = classify(p, 3);
    REQUIRE(v3.witness_class.has_value());
    CHECK(p.classes[*v3.witness_class].h == 4);  // the {3, 9} class

    auto rows = classify_all(p);
    REQUIRE(rows.size() == 6);
    CHECK(rows[4].kind == RegularityVerdict::Kind::ExceptionalByTheory);
    CHECK(rows[5].kind == RegularityVerdict::Kind::Trivial);
}

TEST_CASE("unity-part bookkeeping: 1-exceptional 0-regular fixture") {
    auto p = spectral_profile(example2_realization());
    CHECK(p.l == 2);
    CHECK(p.l_bar == 0);
    REQUIRE(p.classes.size() == 1);
    CHECK(p.classes[0].h == 3);
    CHECK(p.classes[0].h_bar == 1);
    CHECK(classify(p, 0).kind == RegularityVerdict::Kind::Regular);
    CHECK(classify(p, 1).kind == RegularityVerdict::Kind::Exceptional);
    CHECK(classify(p, 2).kind == RegularityVerdict::Kind::Exceptional);
    // at r = 3 the two unity blocks alone cap the rank of A^2 - I at 3
    auto v3 = classify(p, 3);
    CHECK(v3.kind == RegularityVerdict::Kind::FiniteGlobalOrder);
    CHECK(v3.k == 2);
}

TEST_CASE("unipotent matrix: all unity, no classes") {
    auto p = spectral_profile(IntegerMatrix{{1, 1}, {0, 1}});
    CHECK(p.l == 2);
    CHECK(p.l_bar == 1);
    CHECK(p.classes.empty());
    // d - (l - l_bar) = 1 > 0: no finite global order at r = 0
    CHECK(classify(p, 0).kind == RegularityVerdict::Kind::Regular);
}

TEST_CASE("identity: finite global order with k = 1") {
    auto p = spectral_profile(IntegerMatrix::identity(4));
    auto v = classify(p, 2);
    CHECK(v.kind == RegularityVerdict::Kind::FiniteGlobalOrder);
    CHECK(v.k == 1);
    auto rows = classify_all(p);
    CHECK(rows[0].kind == RegularityVerdict::Kind::FiniteGlobalOrder);
    CHECK(rows[0].k == 1);
}

TEST_CASE("minimal finite global order tracks which orders are needed") {
    // diag(1, -1): A - I kills the first block only; rank(A - I) = 1,
    // rank(A^2 - I) = 0
    auto p = spectral_profile(diag({1, -1}));
    auto v0 = classify(p, 0);
    CHECK(v0.kind == RegularityVerdict::Kind::FiniteGlobalOrder);
    CHECK(v0.k == 2);
    // at r = 1 = d - 1, k = 1 already works
    auto rows = classify_all(p);
    CHECK(rows[1].kind == RegularityVerdict::Kind::FiniteGlobalOrder);
    CHECK(rows[1].k == 1);
}

TEST_CASE("three independent rationals and the corollary") {
    auto p = spectral_profile(diag({3, 5, 15}));
    CHECK(p.classes.size() == 3);
    CHECK(classify(p, 1).kind == RegularityVerdict::Kind::Regular);
    auto cor = corollary_check(p);
    REQUIRE(cor.has_value());
    CHECK(cor->e == 2);
    CHECK(cor->f == 0);
    CHECK(cor->consistent);
}

TEST_CASE("corollary data for the 5x5 fixture") {
    auto p = spectral_profile(example1());
    auto cor = corollary_check(p);
    REQUIRE(cor.has_value());
    CHECK(cor->e == 2);  // exponent vectors of 2, 3, 9 span rank 2
    CHECK(cor->f == 1);  // non-diagonalizable
    CHECK(cor->consistent);
}

TEST_CASE("corollary is none for irrational spectra") {
    auto p = spectral_profile(IntegerMatrix{{0, -5}, {1, -3}});
    CHECK(!corollary_check(p).has_value());
}

TEST_CASE("monotonicity of verdicts in r") {
    std::mt19937_64 rng(13);
    int done = 0;
    for (int trial = 0; trial < 40 && done < 12; ++trial) {
        auto A = testutil::random_matrix(rng, 4, -3, 3);
        if (A.det() == 0) continue;
        ++done;
        auto p = spectral_profile(A);
        bool fell = false;
        for (long r = 0; r + 2 <= 4; ++r) {
            auto v = classify(p, r);
            bool non_regular = v.kind != RegularityVerdict::Kind::Regular;
            if (fell) CHECK(non_regular);
            if (non_regular) fell = true;
        }
    }
    CHECK(done > 0);
}

TEST_CASE("conjugation invariance of the verdict table") {
    std::mt19937_64 rng(29);
    auto A = example2_realization();
    for (int trial = 0; trial < 4; ++trial) {
        auto P = testutil::random_unimodular(rng, 5);
        auto Pinv = testutil::inverse_unimodular(P);
        auto B = P * A * Pinv;
        auto pa = spectral_profile(A);
        auto pb = spectral_profile(B);
        CHECK(pa.l == pb.l);
        CHECK(pa.l_bar == pb.l_bar);
        for (long r = 0; r + 2 <= 5; ++r) CHECK(classify(pa, r).kind == classify(pb, r).kind);
    }
}

TEST_CASE("profile bookkeeping identities on random rational-spectrum matrices") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> ev(-4, 4);
    int built = 0;
    for (int trial = 0; trial < 60 && built < 25; ++trial) {
        // random conjugated diagonal matrix with possibly repeated eigenvalues
        std::size_t d = 3 + trial % 2;
        IntegerMatrix D(d);
        bool ok = true;
        for (std::size_t i = 0; i < d; ++i) {
            long v = ev(rng);
            if (v == 0) v = 5;
            D(i, i) = v;
        }
        if (!ok) continue;
        auto P = testutil::random_unimodular(rng, d);
        auto A = P * D * testutil::inverse_unimodular(P);
        ++built;
        auto p = spectral_profile(A);
        unsigned sum_h = 0;
        for (const auto& c : p.classes) {
            sum_h += c.h;
            CHECK(c.h_bar + 1 <= c.h);  // h_bar <= h - 1 for nonempty classes
        }
        CHECK(sum_h + p.l == p.d);
        if (p.l > 0) CHECK(p.l_bar < p.l);
        auto cor = corollary_check(p);
        REQUIRE(cor.has_value());
        CHECK(cor->consistent);
    }
    CHECK(built == 25);
}

TEST_CASE("singular matrices are rejected") {
    CHECK_THROWS(spectral_profile(IntegerMatrix{{1, 1}, {1, 1}}));
    CHECK_THROWS(classify(spectral_profile(diag({2, 3})), 1));  // r > d-2
}
