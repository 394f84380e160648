// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and runtime limits are pinned here.

#include "drshift/cli_core.hpp"
#include "drshift/cover_entropy.hpp"
#include "drshift/graph_entropy.hpp"
#include "drshift/metric_entropy.hpp"
#include "drshift/verify_suites.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

using namespace drshift;

namespace {

int failures = 0;

struct Criterion {
    std::string label;
    double time_limit_s;
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (detail.empty()) detail = what;
        }
    }
};

void run(Criterion& c, const std::function<void(Criterion&)>& body) {
    auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.detail = std::string("exception: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.time_limit_s) {
        c.ok = false;
        if (c.detail.empty())
            c.detail = "runtime " + format_double(seconds) + "s over limit " +
                       format_double(c.time_limit_s) + "s";
    }
    std::ostringstream line;
    line << (c.ok ? "[PASS] " : "[FAIL] ") << c.label << " (" << format_double(seconds) << "s)";
    if (!c.ok && !c.detail.empty()) line << "  -- " << c.detail;
    std::cout << line.str() << "\n";
    if (!c.ok) ++failures;
}

void suite_into(Criterion& c, const verify::SuiteResult& result) {
    for (const auto& line : result.lines)
        if (!line.ok) c.require(false, line.text);
    c.require(result.ok, "suite " + result.suite + " failed");
}

} // namespace

int main() {
    std::cout << "acceptance criteria\n";

    Criterion c1{"criterion 1: counterexample exactness (24/25, 13/25, siri distances)", 1.0};
    run(c1, [](Criterion& c) { suite_into(c, verify::counterexamples()); });

    Criterion c2{"criterion 2: renewal N(alpha_n) = 2^n M for m <= 5, n <= 16; inf within log(M)/16 of log 2",
                 30.0};
    run(c2, [](Criterion& c) {
        GraphShiftSystem sys(make_renewal(), MetricChoice::CanonicalDx);
        for (int m = 1; m <= 5; ++m) {
            RenewalCover rc = renewal_cover(m);
            CoverEntropyResult result = cover_entropy_estimate(rc.cover, sys, 16);
            BigInt expected = rc.member_count;
            for (int n = 0; n <= 16; ++n) {
                c.require(result.sequence.counts[static_cast<std::size_t>(n)] == expected,
                          "m=" + std::to_string(m) + ", n=" + std::to_string(n) +
                              ": N != 2^n M");
                expected *= 2;
            }
            double gap = std::abs(result.estimate - std::log(2.0));
            double bound = log_big(rc.member_count) / 16.0;
            c.require(gap <= bound + 1e-12,
                      "m=" + std::to_string(m) + ": estimate misses log 2 by " +
                          format_double(gap) + " > " + format_double(bound));
        }
    });

    Criterion c3{"criterion 3: rose(k) entropy log k (counting exact, spectral 1e-9); cycle zero",
                 10.0};
    run(c3, [](Criterion& c) {
        for (int k : {1, 2, 3, 5}) {
            FiniteGraph rose = finite_subgraph(make_rose(k), k);
            for (int n = 1; n <= 12; ++n)
                c.require(count_paths(rose, n).count == ipow(k, static_cast<unsigned>(n)),
                          "rose path count not exact");
            PathcountEntropy counting = finite_graph_entropy_pathcount(rose, 12);
            for (double h : counting.h_sequence)
                c.require(std::abs(h - std::log(static_cast<double>(k))) < 1e-12,
                          "rose h_n deviates from log k");
            SpectralEstimate spectral = finite_graph_entropy_spectral(rose, 1e-9);
            c.require(spectral.converged &&
                          std::abs(spectral.log_lambda() - std::log(static_cast<double>(k))) <= 1e-9,
                      "rose spectral misses log k");
        }
        const int L = 6, n_max = 12;
        FiniteGraph cycle = finite_subgraph(make_cycle(L), L);
        SpectralEstimate spectral = finite_graph_entropy_spectral(cycle, 1e-9);
        c.require(spectral.converged && std::abs(spectral.log_lambda()) <= 1e-9,
                  "cycle spectral entropy not zero");
        PathcountEntropy counting = finite_graph_entropy_pathcount(cycle, n_max);
        c.require(counting.estimate <= std::log(static_cast<double>(L)) / n_max + 1e-12,
                  "cycle counting estimate above log(L)/n_max");
    });

    Criterion c4{"criterion 4: ladder bounds (2m-2)2^{n-2} <= paths <= 2m 2^n; H_m and filtration at log 2 (1e-6)",
                 30.0};
    run(c4, [](Criterion& c) {
        for (int m = 1; m <= 5; ++m) {
            FiniteGraph hm = finite_subgraph(make_ladder(), 2 * m);
            for (int n = 1; n <= 20; ++n) {
                BigInt count = count_paths(hm, n).count;
                BigInt pow2n = ipow(2, static_cast<unsigned>(n));
                c.require(4 * count >= BigInt(2 * m - 2) * pow2n,
                          "lower path bound fails at m=" + std::to_string(m) +
                              ", n=" + std::to_string(n));
                c.require(count <= BigInt(2 * m) * pow2n,
                          "upper path bound fails at m=" + std::to_string(m) +
                              ", n=" + std::to_string(n));
            }
            SpectralEstimate est = finite_graph_entropy_spectral(hm, 1e-9);
            c.require(std::abs(est.log_lambda() - std::log(2.0)) <= 1e-6,
                      "H_m spectral entropy misses log 2");
        }
        FiltrationReport report =
            rowfinite_entropy_sup(make_ladder(), {2, 4, 6, 8, 10, 12, 14, 16, 18, 20}, 1e-9);
        c.require(!report.diverging, "ladder filtration flagged diverging");
        c.require(std::abs(report.sup_lo - std::log(2.0)) <= 1e-6 &&
                      std::abs(report.sup_hi - std::log(2.0)) <= 1e-6,
                  "ladder filtration supremum misses log 2");
        for (std::size_t i = 1; i < report.rows.size(); ++i)
            c.require(report.rows[i].sup_lo >= report.rows[i - 1].sup_lo - 1e-12,
                      "filtration supremum not monotone");
    });

    Criterion c5{"criterion 5: disjoint union rose(3) + ladder = log 3 exactly as max of components",
                 10.0};
    run(c5, [](Criterion& c) {
        SpectralEstimate rose = finite_graph_entropy_spectral(finite_subgraph(make_rose(3), 3), 1e-9);
        SpectralEstimate ladder =
            finite_graph_entropy_spectral(finite_subgraph(make_ladder(), 10), 1e-9);
        IntervalEstimate rose_iv{rose.log_lo(), rose.log_hi()};
        IntervalEstimate ladder_iv{ladder.log_lo(), ladder.log_hi()};
        IntervalEstimate best = disjoint_union_entropy({rose_iv, ladder_iv});
        c.require(best.lo == rose_iv.lo && best.hi == rose_iv.hi,
                  "max rule did not keep the rose component exactly");
        c.require(std::abs(best.midpoint() - std::log(3.0)) <= 1e-9,
                  "union entropy misses log 3");
    });

    Criterion c6{"criterion 6: sirigordo chains (>=100), cover-lemma inequalities, Fekete subadditivity",
                 60.0};
    run(c6, [](Criterion& c) {
        suite_into(c, verify::sep_span(20260810, 120, 220));
        suite_into(c, verify::cover_lemmas());
    });

    Criterion c7{"criterion 7: cover estimate <= metric estimate + 0.05 on the finite corpus", 60.0};
    run(c7, [](Criterion& c) {
        auto corpus = verify::zebra_corpus();
        c.require(corpus.size() >= 6, "corpus too small");
        suite_into(c, verify::zebra(12, 0.05));
    });

    Criterion c8{"criterion 8: solver agreement with exhaustive search; ssep cylinder identity on rose(2)",
                 60.0};
    run(c8, [](Criterion& c) {
        suite_into(c, verify::sep_span(424242, 0, 220));
        GraphShiftSystem rose2(make_rose(2), MetricChoice::CanonicalDx);
        for (int n = 1; n <= 4; ++n) {
            SsepCount count = ssep_count(rose2, CompactSpec{2, n + 2}, n, dyadic(3));
            c.require(count.exact && count.count == ipow(2, static_cast<unsigned>(n)),
                      "rose(2) ssep(n=" + std::to_string(n) + ") off the cylinder count");
            if (n <= 2) {
                Representatives reps = representatives(rose2, n + 2, 2);
                auto inst = make_instance(rose2, reps.points, n, dyadic(3),
                                          DomainRestriction::DomRestricted);
                c.require(count.count == sep_exhaustive(inst.dn, dyadic(3)),
                          "rose(2) ssep disagrees with exhaustive search");
            }
        }
    });

    Criterion c9{"criterion 9: d_X(x^k,y^k) -> 0 in exact dyadics while d(x^k,y^k) = 1/2", 30.0};
    run(c9, [](Criterion& c) {
        GraphShiftSystem ladder(make_ladder(), MetricChoice::CanonicalDx);
        Rational previous(-1);
        for (int k = 1; k <= 7; ++k) {
            Ultrapath xk = Ultrapath::least_extended({2 * (k - 1)});
            Ultrapath yk = Ultrapath::least_extended({2 * (k - 1) + 1});
            c.require(ladder.edge_metric(xk, yk) == Rational(1, 2),
                      "edge metric not exactly 1/2 at k=" + std::to_string(k));
            Rational dx = ladder.metric_dx_exact(xk, yk);
            c.require(numerator(dx) == 1, "d_X not an exact dyadic");
            if (previous >= 0)
                c.require(dx < previous, "d_X not strictly decreasing at k=" + std::to_string(k));
            previous = dx;
        }
        c.require(previous <= dyadic(8), "d_X did not fall below 1/2^8 by k=7");
        suite_into(c, verify::metrics());
    });

    std::cout << (failures == 0 ? "acceptance: all criteria passed\n"
                                : "acceptance: " + std::to_string(failures) + " criteria FAILED\n");
    return failures == 0 ? 0 : 1;
}
