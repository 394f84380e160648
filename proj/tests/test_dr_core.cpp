#include "drshift/dr_core.hpp"
#include "drshift/graph_model.hpp"
#include "drshift/shift_space.hpp"

#include <doctest.h>

#include <random>

using namespace drshift;

TEST_CASE("index sets are initial segments with the documented values") {
    IntervalDoublingSystem sys;
    CHECK(index_set(sys, Rational(1, 4), 3) == std::vector<int>{0, 1});
    CHECK(index_set(sys, Rational(1, 4), 7) == std::vector<int>{0, 1});
    CHECK(index_set(sys, Rational(3, 5), 1) == std::vector<int>{0});
    CHECK(index_set(sys, Rational(0), 5) == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("doubling-system distances are exact rationals") {
    IntervalDoublingSystem sys;
    CHECK(iterate_distance(sys, Rational(0), Rational(6, 25), 3) == Rational(24, 25));
    CHECK(iterate_distance(sys, Rational(0), Rational(1, 4), 3) == Rational(1, 2));
    CHECK(iterate_distance(sys, Rational(1, 4), Rational(6, 25), 3) == Rational(1, 50));
    // the two legs sum to 13/25, strictly below 24/25: no triangle inequality
    CHECK(Rational(1, 2) + Rational(1, 50) == Rational(13, 25));
    CHECK(iterate_distance(sys, Rational(0), Rational(6, 25), 3) > Rational(13, 25));
}

TEST_CASE("padded binary shift reproduces the clopen counterexample") {
    PaddedBinarySystem sys;
    auto x = BinaryWord::parse("000111111111");
    auto y = BinaryWord::parse("0000111111111");
    auto z = BinaryWord::parse("00111111111");
    CHECK(sys.domain_horizon(x, 2) == 1);
    CHECK(sys.domain_horizon(z, 2) == 0);
    CHECK(iterate_distance(sys, x, y, 2) == Rational(1));
    CHECK(iterate_distance(sys, x, z, 2) == Rational(1, 4));
    CHECK(iterate_distance(sys, z, y, 2) == Rational(1, 4));
}

TEST_CASE("padded binary membership needs enough depth") {
    PaddedBinarySystem sys;
    auto shallow = BinaryWord::parse("0000");
    CHECK_THROWS_AS(sys.domain_horizon(shallow, 3), insufficient_depth);
    CHECK(sys.domain_horizon(shallow, 2) == 1);
    auto shifted = sys.shift(BinaryWord::parse("000111"));
    CHECK(shifted == BinaryWord::parse("111"));
    CHECK_THROWS_AS(sys.shift(BinaryWord::parse("01")), insufficient_depth);
    CHECK_THROWS_AS(sys.shift(BinaryWord::parse("100")), std::domain_error);
}

TEST_CASE("dynamical ball membership") {
    IntervalDoublingSystem sys;
    CHECK(in_dynamical_ball(sys, Rational(1, 8), Rational(1, 8), 3, Rational(1, 100)));
    CHECK_FALSE(in_dynamical_ball(sys, Rational(0), Rational(6, 25), 3, Rational(24, 25)));
    CHECK(in_dynamical_ball(sys, Rational(0), Rational(6, 25), 1, Rational(1, 2)));
    // membership implies the strict d_n bound
    CHECK(in_dynamical_ball(sys, Rational(0), Rational(6, 25), 3, Rational(99, 100)));
    CHECK(iterate_distance(sys, Rational(0), Rational(6, 25), 3) < Rational(99, 100));
}

TEST_CASE("d_n symmetry, identity, and growth in n") {
    IntervalDoublingSystem sys;
    std::mt19937 rng(7);
    for (int t = 0; t < 50; ++t) {
        Rational x(static_cast<int>(rng() % 64), 64);
        Rational y(static_cast<int>(rng() % 64), 64);
        int n = 1 + static_cast<int>(rng() % 4);
        CHECK(iterate_distance(sys, x, y, n) == iterate_distance(sys, y, x, n));
        CHECK(iterate_distance(sys, x, x, n) == Rational(0));
        CHECK(iterate_distance(sys, x, y, n) <= iterate_distance(sys, x, y, n + 1));
    }
}

TEST_CASE("restricted triangle inequality holds inside Dom(sigma^{n-1})") {
    IntervalDoublingSystem sys;
    const int n = 3;
    std::mt19937 rng(11);
    for (int t = 0; t < 200; ++t) {
        // Dom(sigma^2) = [0, 1/4)
        Rational x(static_cast<int>(rng() % 32), 128);
        Rational y(static_cast<int>(rng() % 32), 128);
        Rational z(static_cast<int>(rng() % 32), 128);
        Rational dxz = iterate_distance(sys, x, z, n);
        Rational dxy = iterate_distance(sys, x, y, n);
        Rational dyz = iterate_distance(sys, y, z, n);
        CHECK(dxz <= dxy + dyz);
    }
}

TEST_CASE("separation persists on whole cylinders around separated points") {
    GraphShiftSystem sys(make_rose(2), MetricChoice::CanonicalDx);
    const int n = 2;
    const Rational eps = dyadic(3);
    Ultrapath x = Ultrapath::least_extended({0, 0, 0, 0, 0});
    Ultrapath y = Ultrapath::least_extended({0, 1, 1, 0, 0});
    Rational d = iterate_distance(sys, x, y, n);
    REQUIRE(d > eps);
    // every pair drawn from the two depth-5 cylinders stays separated
    for (EdgeId a : {0, 1}) {
        for (EdgeId b : {0, 1}) {
            Ultrapath xa = Ultrapath::least_extended({0, 0, 0, 0, 0, a});
            Ultrapath yb = Ultrapath::least_extended({0, 1, 1, 0, 0, b});
            CHECK(iterate_distance(sys, xa, yb, n) > eps);
        }
    }
}

TEST_CASE("neighborhood-extension check: analytic for graph shifts, sampled elsewhere") {
    GraphShiftSystem rose(make_rose(3), MetricChoice::CanonicalDx);
    auto graph_report = check_hypothesis_niceone_sampled(
        rose, {Ultrapath::least_extended({0}), Ultrapath::least_extended({1, 2})}, 3);
    CHECK(graph_report.all_pass());
    for (const auto& row : graph_report.rows) CHECK(row.status == NiceoneStatus::AnalyticPass);

    IntervalDoublingSystem doubling;
    auto zero_report = check_hypothesis_niceone_sampled(doubling, {Rational(0)}, 4);
    CHECK(zero_report.all_pass());

    // just below the 1/2^n boundary: witnesses exist below 1/2^{n+1}
    auto near_report = check_hypothesis_niceone_sampled(doubling, {Rational(15, 64)}, 2);
    CHECK(near_report.all_pass());

    // above the boundary the sampled generator is exhausted: inconclusive
    auto stuck_report = check_hypothesis_niceone_sampled(doubling, {Rational(3, 8)}, 2);
    bool saw_inconclusive = false;
    for (const auto& row : stuck_report.rows)
        saw_inconclusive = saw_inconclusive || row.status == NiceoneStatus::Inconclusive;
    CHECK(saw_inconclusive);
}
