#include "drshift/cover_entropy.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace drshift;

namespace {
GraphShiftSystem renewal_sys() { return GraphShiftSystem(make_renewal(), MetricChoice::CanonicalDx); }
GraphShiftSystem rose_sys(int k) {
    return GraphShiftSystem(make_rose(k), MetricChoice::CanonicalDx);
}
} // namespace

TEST_CASE("renewal cover contents are the admissible words over F") {
    RenewalCover c1 = renewal_cover(1);
    CHECK(c1.q_set.empty());
    CHECK(c1.r_set == std::vector<std::vector<EdgeId>>{{0}, {1}});
    CHECK(c1.member_count == 3);

    RenewalCover c2 = renewal_cover(2);
    CHECK(c2.q_set == std::vector<std::vector<EdgeId>>{{0}});
    // ee, e f_1, e f_2, f_1 e, f_2 f_1
    CHECK(c2.r_set == std::vector<std::vector<EdgeId>>{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {2, 1}});
    CHECK(c2.member_count == 7);

    // members are pairwise disjoint for every m
    Ultragraph g = make_renewal();
    for (int m = 1; m <= 5; ++m) {
        RenewalCover rc = renewal_cover(m);
        CHECK(BigInt(rc.cover.members.size()) == rc.member_count);
        for (std::size_t i = 0; i < rc.cover.members.size(); ++i)
            for (std::size_t j = i + 1; j < rc.cover.members.size(); ++j)
                for (const auto& a : rc.cover.members[i].parts)
                    for (const auto& b : rc.cover.members[j].parts)
                        CHECK_FALSE(intersect(a, b, g).has_value());
    }

    // the cover really covers: every sampled point lies in exactly one member
    GraphShiftSystem sys = renewal_sys();
    RenewalCover rc = renewal_cover(2);
    auto reps = representatives(sys, 3, 5).points;
    for (const auto& p : reps) {
        int hits = 0;
        for (const auto& member : rc.cover.members) hits += member_contains_point(member, p, sys);
        CHECK(hits == 1);
    }
}

TEST_CASE("pullback of the renewal cylinders follows the two-part split") {
    Ultragraph g = make_renewal();
    // sigma^{-1}(D_{(r(e),r(e)),F}) = D_{(r(e),r(e)),F u {f_{m+1}}} u D_{e,F}
    Cylinder emitter = make_excluded_cylinder({}, CylinderBase::at_emitter(0), {0, 1, 2});
    auto parts = pullback_cylinder(emitter, g);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].word == std::vector<EdgeId>{0});
    CHECK(parts[0].excluded == std::vector<EdgeId>{0, 1, 2});
    CHECK(parts[1].word.empty());
    CHECK(parts[1].excluded == std::vector<EdgeId>{0, 1, 2, 3});

    // sigma^{-1}(D_{beta,F}) = D_{e beta,F} u D_{a_beta beta,F}
    Cylinder q = make_excluded_cylinder({0}, CylinderBase::full(), {0, 1, 2});
    auto qparts = pullback_cylinder(q, g);
    REQUIRE(qparts.size() == 2);
    CHECK(qparts[0].word == std::vector<EdgeId>{0, 0});
    CHECK(qparts[1].word == std::vector<EdgeId>{1, 0}); // a_beta = f_1 since s(beta) = v_1

    // finite graph: union over g with r(g) = s(word)
    Ultragraph cycle = make_cycle(3);
    auto cparts = pullback_cylinder(make_word_cylinder({1}), cycle);
    REQUIRE(cparts.size() == 1);
    CHECK(cparts[0].word == std::vector<EdgeId>{0, 1});
}

TEST_CASE("join keeps disjoint members and absorbs the trivial cover") {
    Ultragraph g = make_rose(3);
    Cover alpha = word_cover(g, 1);
    Cover self = join(alpha, alpha, g);
    CHECK(self.members.size() == alpha.members.size());

    Cover trivial;
    CoverMember whole;
    for (EdgeId e = 0; e < 3; ++e) whole.parts.push_back(make_word_cylinder({e}));
    trivial.members.push_back(whole);
    Cover joined = join(alpha, trivial, g);
    CHECK(joined.members.size() == alpha.members.size());

    // the renewal join alpha v sigma^{-1}(alpha) has 2M members
    Ultragraph r = make_renewal();
    for (int m = 1; m <= 3; ++m) {
        RenewalCover rc = renewal_cover(m);
        Cover level1 = join(rc.cover, pullback(rc.cover, r), r);
        CHECK(BigInt(level1.members.size()) == 2 * rc.member_count);
    }
}

TEST_CASE("minimal subcover counts: disjoint fast path and exact search") {
    Ultragraph g = make_rose(2);
    Cover alpha = word_cover(g, 2);
    SubcoverCount direct = minimal_subcover_count(alpha, g);
    CHECK(direct.disjoint_fast_path);
    CHECK(direct.n == 4);

    // one member inside the union of the other two forces N = 2
    Cover redundant;
    redundant.members.push_back(CoverMember{{make_word_cylinder({0})}});
    redundant.members.push_back(CoverMember{{make_word_cylinder({1})}});
    redundant.members.push_back(
        CoverMember{{make_word_cylinder({0, 0}), make_word_cylinder({1, 0})}});
    SubcoverCount searched = minimal_subcover_count(redundant, g);
    CHECK_FALSE(searched.disjoint_fast_path);
    CHECK(searched.n == 2);

    // renewal: N(alpha_n, X_n) = 2^n M via the general machinery at small n
    Ultragraph r = make_renewal();
    RenewalCover rc = renewal_cover(1);
    Cover current = rc.cover;
    BigInt expected = rc.member_count;
    for (int n = 0; n <= 3; ++n) {
        SubcoverCount count = minimal_subcover_count(current, r);
        CHECK(count.n == expected);
        current = join(rc.cover, pullback(current, r), r);
        expected *= 2;
    }
}

TEST_CASE("cover entropy: renewal doubles, word covers track path growth") {
    GraphShiftSystem sys = renewal_sys();
    for (int m = 1; m <= 2; ++m) {
        RenewalCover rc = renewal_cover(m);
        CoverEntropyResult fast = cover_entropy_estimate(rc.cover, sys, 8);
        // the generic engine agrees level by level
        Cover generic = rc.cover;
        generic.shape = Cover::Shape::Generic;
        CoverEntropyResult slow = cover_entropy_estimate(generic, sys, 5);
        for (std::size_t n = 0; n < slow.sequence.counts.size(); ++n)
            CHECK(slow.sequence.counts[n] == fast.sequence.counts[n]);
        for (std::size_t n = 1; n < fast.sequence.counts.size(); ++n)
            CHECK(fast.sequence.counts[n] == 2 * fast.sequence.counts[n - 1]);
        CHECK(fast.sequence.subadditive);
        double expected = std::log(2.0) +
                          log_big(rc.member_count) / static_cast<double>(8);
        CHECK(std::abs(fast.estimate - expected) < 1e-12);
    }

    GraphShiftSystem rose = rose_sys(3);
    Cover alpha = word_cover(rose.graph(), 1);
    CoverEntropyResult run = cover_entropy_estimate(alpha, rose, 10);
    for (std::size_t n = 0; n < run.sequence.counts.size(); ++n)
        CHECK(run.sequence.counts[n] == ipow(3, static_cast<unsigned>(n) + 1));
    // generic engine cross-check on the word cover
    Cover generic = alpha;
    generic.shape = Cover::Shape::Generic;
    CoverEntropyResult slow = cover_entropy_estimate(generic, rose, 4);
    for (std::size_t n = 0; n < slow.sequence.counts.size(); ++n)
        CHECK(slow.sequence.counts[n] == run.sequence.counts[n]);

    // trivial one-member cover has zero entropy
    Cover trivial;
    CoverMember whole;
    for (EdgeId e = 0; e < 3; ++e) whole.parts.push_back(make_word_cylinder({e}));
    trivial.members.push_back(whole);
    CoverEntropyResult flat = cover_entropy_estimate(trivial, rose, 5);
    for (const auto& c : flat.sequence.counts) CHECK(c == 1);
    CHECK(flat.estimate == 0);
}

TEST_CASE("diameters shrink to zero along the cover schedules") {
    GraphShiftSystem sys = renewal_sys();
    auto schedule = diam_zero_schedule(sys, {1, 2, 3, 4});
    for (std::size_t i = 1; i < schedule.size(); ++i)
        CHECK(schedule[i].diameter < schedule[i - 1].diameter);

    GraphShiftSystem rose = rose_sys(2);
    auto word_schedule = diam_zero_schedule(rose, {1, 2, 3, 4, 5});
    for (std::size_t i = 1; i < word_schedule.size(); ++i)
        CHECK(word_schedule[i].diameter < word_schedule[i - 1].diameter);

    auto single = diam_zero_schedule(rose, {2});
    CHECK(single.size() == 1);
}

TEST_CASE("cover lemma suite passes on rose(3)") {
    GraphShiftSystem rose = rose_sys(3);
    CoverLemmaReport report = verify_cover_lemmas(rose);
    CHECK(report.ok);
    CHECK(report.failure.empty());
}
