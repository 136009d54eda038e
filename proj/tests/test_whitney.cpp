#include <catch2/catch_amalgamated.hpp>

#include "strichartz/whitney.hpp"

#include <random>
#include <set>

using namespace strichartz;

TEST_CASE("square selection predicate") {
    CHECK(select(1, 0, 2));
    CHECK(select(1, 0, 3));
    CHECK_FALSE(select(1, 0, 4));  // parents two apart
    CHECK_FALSE(select(1, 0, 1));  // touching the diagonal
    CHECK_FALSE(select(0, 5, 5));
    CHECK(select(-3, 8, 11));
    CHECK_FALSE(select(-3, 9, 12));  // odd i has a single partner
    // scale invariance and negative indices
    for (int k : {-4, 0, 4}) {
        CHECK(select(k, -6, -4));
        CHECK(select(k, -6, -3));
        CHECK_FALSE(select(k, -5, -2));
        CHECK(select(k, -5, -3));
    }
}

TEST_CASE("partner sets") {
    CHECK(partners(1, 0) == std::vector<long long>{2, 3});
    CHECK(partners(1, 1) == std::vector<long long>{3});
    CHECK(partners(0, -6) == std::vector<long long>{-4, -3});
    CHECK(partners(0, -5) == std::vector<long long>{-3});
    for (long long i = -20; i <= 20; ++i) {
        auto p = partners(0, i);
        CHECK(p.size() == (i % 2 == 0 ? 2u : 1u));
        for (long long j : p) CHECK((j == i + 2 || j == i + 3));
    }
}

TEST_CASE("each point lands in exactly one selected square") {
    auto squares = decompose(Window(Rat(0), Rat(3)), -6, 2);

    auto covering = [&](Rat s, Rat t) {
        std::vector<DyadicSquare> hits;
        for (const auto& q : squares)
            if (q.contains(s, t)) hits.push_back(q);
        return hits;
    };

    auto a = covering(Rat(3, 10), Rat(13, 5));
    REQUIRE(a.size() == 1);
    CHECK(a[0] == DyadicSquare{0, 0, 2});

    auto b = covering(Rat(11, 10), Rat(7, 5));
    REQUIRE(b.size() == 1);
    CHECK(b[0] == DyadicSquare{-3, 8, 11});
}

TEST_CASE("near diagonal windows decompose to nothing") {
    CHECK(decompose(Window(Rat(0), Rat(1, 4)), 0, 4).empty());
    CHECK(decompose(Window(Rat(5), Rat(21, 4)), -2, 4).empty());
}

TEST_CASE("decomposition output is ordered and deduplicated") {
    auto squares = decompose(Window(Rat(0), Rat(8)), -4, 3);
    REQUIRE(!squares.empty());
    for (size_t m = 1; m < squares.size(); ++m) CHECK(squares[m - 1] < squares[m]);
    for (const auto& q : squares) {
        CHECK(select(q.k, q.i, q.j));
        // separation between the intervals is one or two side lengths
        Rat d = q.separation();
        CHECK((d == q.side() || d == 2 * q.side()));
    }
}

TEST_CASE("raster multiplicity over the window") {
    // sample offsets are odd multiples of 1/32, so no sample ever sits on a
    // dyadic boundary at the scales in play
    const int k_min = -3, k_max = 2;
    auto squares = decompose(Window(Rat(0), Rat(4)), k_min, k_max);
    Rat cutoff = 4 * pow2_rat(k_min);
    for (int a = 0; a < 64; ++a)
        for (int b = 0; b < 64; ++b) {
            Rat s = Rat(2 * a + 1, 32), t = Rat(2 * b + 1, 32);
            if (t <= s) continue;
            int hits = 0;
            for (const auto& q : squares) hits += q.contains(s, t);
            if (t - s >= cutoff) {
                REQUIRE(hits == 1);
            } else {
                REQUIRE(hits <= 1);
            }
        }
}

TEST_CASE("window and scale range validation") {
    CHECK_THROWS_AS(Window(Rat(1), Rat(1)), std::invalid_argument);
    CHECK_THROWS_AS(Window(Rat(2), Rat(1)), std::invalid_argument);
    CHECK_THROWS_AS(decompose(Window(Rat(0), Rat(1)), 2, 1), std::invalid_argument);
}

TEST_CASE("sequence norms") {
    std::vector<double> a = {3, -4};
    CHECK(lp_norm(a, Rat(1, 2)) == Catch::Approx(5.0));
    CHECK(lp_norm(a, Rat(1)) == Catch::Approx(7.0));
    CHECK(lp_norm(a, Rat(0)) == Catch::Approx(4.0));
    CHECK(lp_norm({}, Rat(1, 2)) == 0.0);
}

TEST_CASE("paired sum against product of sequence norms") {
    // single unit entry on each side: equality up to partner multiplicity
    std::map<long long, double> f = {{0, 1.0}}, g = {{2, 1.0}, {3, 1.0}};
    auto r = sum_inequality(f, g, 0, Rat(1, 2), Rat(1, 2));
    CHECK(r.lhs == Catch::Approx(2.0));
    CHECK(r.rhs == Catch::Approx(std::sqrt(2.0)));
    CHECK(r.hypothesis);
    CHECK(r.holds);

    // random data under the hypothesis never breaks constant two
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int it = 0; it < 1000; ++it) {
        std::map<long long, double> fn, gn;
        for (long long i = 0; i < 24; ++i) {
            if (u(rng) < 0.7) fn[i] = u(rng);
            if (u(rng) < 0.7) gn[i] = u(rng);
        }
        auto dual = sum_inequality(fn, gn, 0, Rat(1, 2), Rat(1, 2));
        CHECK(dual.hypothesis);
        CHECK(dual.holds);
        auto skew = sum_inequality(fn, gn, 0, Rat(1, 4), Rat(3, 4));
        CHECK(skew.hypothesis);
        CHECK(skew.holds);
    }

    // all ones at p = pt = 4 grows like the index count and escapes any
    // constant once the hypothesis fails
    std::map<long long, double> ones_f, ones_g;
    for (long long i = 0; i < 4096; ++i) ones_f[i] = ones_g[i] = 1.0;
    auto v = sum_inequality(ones_f, ones_g, 0, Rat(1, 4), Rat(1, 4));
    CHECK_FALSE(v.hypothesis);
    CHECK_FALSE(v.holds);
    CHECK(v.lhs > 40 * v.rhs);
}

TEST_CASE("termwise pairing with constant one") {
    auto r = pair_inequality({1, 1, 1, 1}, {1, 1, 1, 1}, Rat(1, 2), Rat(1, 2));
    CHECK(r.lhs == Catch::Approx(4.0));
    CHECK(r.rhs == Catch::Approx(4.0));
    CHECK(r.holds);

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int it = 0; it < 1000; ++it) {
        std::vector<double> A(16), B(16);
        for (auto& x : A) x = u(rng);
        for (auto& x : B) x = u(rng);
        CHECK(pair_inequality(A, B, Rat(1, 2), Rat(1, 2)).holds);
        CHECK(pair_inequality(A, B, Rat(1), Rat(0)).holds);
        CHECK(pair_inequality(A, B, Rat(3, 4), Rat(1, 3)).holds);
    }

    // all ones of length 16 at p = pt = 4: lhs 16 vs rhs 4
    std::vector<double> ones(16, 1.0);
    auto v = pair_inequality(ones, ones, Rat(1, 4), Rat(1, 4));
    CHECK_FALSE(v.hypothesis);
    CHECK_FALSE(v.holds);
    CHECK(v.lhs > 3 * v.rhs);
}
