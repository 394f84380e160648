#include "drshift/shift_space.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace drshift;

namespace {
GraphShiftSystem renewal_sys() { return GraphShiftSystem(make_renewal(), MetricChoice::CanonicalDx); }
} // namespace

TEST_CASE("shift drops the first edge and ends at the emitter pair") {
    GraphShiftSystem sys = renewal_sys();
    Ultrapath long_path = Ultrapath::emitter_point({0, 1, 0}, 0); // (e f_1 e, A)
    Ultrapath shifted = shift_apply(sys, long_path);
    CHECK(shifted == Ultrapath::emitter_point({1, 0}, 0));
    Ultrapath one = Ultrapath::emitter_point({0}, 0);
    CHECK(shift_apply(sys, one) == Ultrapath::emitter_point({}, 0)); // (A, A)
    CHECK_THROWS_AS(shift_apply(sys, Ultrapath::emitter_point({}, 0)), length_zero_error);
    CHECK_THROWS_AS(shift_apply(sys, Ultrapath::truncated({})), insufficient_depth);

    Ultrapath trunc = Ultrapath::truncated({0, 4, 3});
    CHECK(shift_apply(sys, trunc).word == std::vector<EdgeId>{4, 3});
    // the canonical extension survives shifting past its anchor
    Ultrapath least = Ultrapath::least_extended({2});
    Ultrapath tail = shift_apply(sys, least);
    CHECK(tail.tail == TailKind::LeastExtension);
    CHECK(tail.word == std::vector<EdgeId>{1}); // after f_2 the forced step is f_1
}

TEST_CASE("the staged enumeration is deterministic and stage-complete") {
    GraphShiftSystem sys = renewal_sys();
    const PathEnumeration& e = sys.enumeration();
    // stage 1 over {e} and base {r(e)}: the pair (r(e), r(e)) then (e, r(e))
    CHECK(e.at(1).word.empty());
    CHECK(e.at(1).base.size() == 1);
    CHECK(e.at(1).base[0].is_emitter);
    CHECK(e.at(2).word == std::vector<EdgeId>{0});
    // regenerating gives the same stream
    PathEnumeration fresh(sys.graph());
    for (int i = 1; i <= 200; ++i) CHECK(fresh.at(i) == e.at(i));
    // every element of a stage stays within its edge and length budget
    for (int i = 1; i <= 200; ++i) {
        const PathElem& p = e.at(i);
        CHECK(p.word.size() <= 200);
    }
}

TEST_CASE("metric d_X: exact separating indices with budget semantics") {
    GraphShiftSystem sys = renewal_sys();
    Ultrapath x = Ultrapath::least_extended({0});      // e e e ...
    Ultrapath fin = Ultrapath::emitter_point({0}, 0);  // (e, r(e))
    CHECK(sys.metric_dx(x, x, 8).kind == DxResult::Kind::Equal);
    Rational d = sys.metric_dx_exact(x, fin);
    CHECK(d == oracles::oracle_dx(sys, x, fin));
    CHECK(d > 0);

    DxResult budgeted = sys.metric_dx(x, fin, 1);
    CHECK(budgeted.kind == DxResult::Kind::UpperBound);
    CHECK(budgeted.value == dyadic(2));
    CHECK(d <= budgeted.value);

    Ultrapath shallow = Ultrapath::truncated({0});
    CHECK(sys.metric_dx(shallow, x, 64).kind == DxResult::Kind::Undecidable);

    // a batch of representative pairs against the linear-scan oracle
    auto reps = representatives(sys, 2, 3).points;
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j)
            CHECK(sys.metric_dx_exact(reps[i], reps[j]) == oracles::oracle_dx(sys, reps[i], reps[j]));
}

TEST_CASE("edge metric and summation metric") {
    GraphShiftSystem ladder(make_ladder(), MetricChoice::EdgeMetric);
    Ultrapath x = Ultrapath::least_extended({4}); // e_3
    Ultrapath y = Ultrapath::least_extended({5}); // f_3
    CHECK(ladder.edge_metric(x, y) == Rational(1, 2));
    CHECK(ladder.edge_metric(x, x) == Rational(0));
    Ultrapath x2 = Ultrapath::least_extended({4, 2});
    CHECK(ladder.edge_metric(x, x2) == Rational(0)); // same canonical extension

    GurevichInterval same = ladder.gurevich_metric(x, x, 5);
    CHECK(same.lo == 0);
    CHECK(same.hi == dyadic(5));
    GurevichInterval diff = ladder.gurevich_metric(x, y, 6);
    CHECK(diff.lo == abs(Rational(1, 5) - Rational(1, 6)) / 2);
    CHECK(diff.hi - diff.lo == dyadic(6));
}

TEST_CASE("representatives cover cylinders with the promised density") {
    GraphShiftSystem rose(make_rose(3), MetricChoice::CanonicalDx);
    Representatives reps = representatives(rose, 2, 3);
    CHECK(reps.points.size() == 9);
    for (const auto& p : reps.points) CHECK(p.tail == TailKind::LeastExtension);

    GraphShiftSystem renewal = renewal_sys();
    Representatives r1 = representatives(renewal, 1, 3);
    // admissible first edges e, f_1, f_2 plus the finite points (r(e),r(e)) and (e, r(e))
    CHECK(r1.points.size() == 5);
    int finite = 0;
    for (const auto& p : r1.points) finite += p.finite_point();
    CHECK(finite == 2);

    Representatives r0 = representatives(renewal, 0, 3);
    CHECK(r0.points.size() == 1);
    CHECK(r0.points[0] == Ultrapath::emitter_point({}, 0));

    // delta really bounds the distance of same-cylinder points
    Representatives r2 = representatives(rose, 3, 3);
    for (auto& w : admissible_words(rose.graph(), 3, 3)) {
        std::vector<EdgeId> a = w, b = w;
        a.push_back(0);
        b.push_back(2);
        CHECK(rose.metric_dx_exact(Ultrapath::least_extended(a), Ultrapath::least_extended(b)) <=
              r2.delta);
    }
}

TEST_CASE("shifting a representative lands in the shifted cylinder") {
    GraphShiftSystem rose(make_rose(2), MetricChoice::CanonicalDx);
    for (auto& w : admissible_words(rose.graph(), 3, 2)) {
        Ultrapath p = Ultrapath::least_extended(w);
        Ultrapath s = shift_apply(rose, p);
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            CHECK(rose.edge_at(s, static_cast<int>(i)) == w[i + 1]);
    }
}

TEST_CASE("modulus table shapes") {
    GraphShiftSystem rose(make_rose(2), MetricChoice::CanonicalDx);
    auto reps = representatives(rose, 4, 2).points;
    std::vector<std::pair<Ultrapath, Ultrapath>> pairs;
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j) pairs.emplace_back(reps[i], reps[j]);
    ExactMetric dx = [&](const Ultrapath& a, const Ultrapath& b) {
        return rose.metric_dx_exact(a, b);
    };
    // identical metric on both sides: the worst d_b in a bucket is below delta
    ModulusTable diag = modulus_table(dx, dx, pairs, 2, 8);
    for (const auto& row : diag.rows)
        if (row.pairs_in_bucket > 0) CHECK(row.worst_b < dyadic(row.t));
}

TEST_CASE("full-p enumeration with union bases stays uniformly comparable") {
    GraphShiftSystem canonical(make_renewal(), MetricChoice::CanonicalDx);
    GraphShiftSystem full(make_renewal(), MetricChoice::FullDx);
    auto reps = representatives(canonical, 2, 3).points;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            Rational d1 = canonical.metric_dx_exact(reps[i], reps[j]);
            Rational dX = full.metric_dx_exact(reps[i], reps[j]);
            CHECK(d1 > 0);
            CHECK(dX > 0);
        }
    }
}
