#include "drshift/verify_suites.hpp"

#include <random>
#include <sstream>

namespace drshift::verify {

namespace {

std::string rational_str(const Rational& q) { return drshift::to_string(q); }

} // namespace

SuiteResult counterexamples() {
    SuiteResult result;
    result.suite = "counterexamples";

    IntervalDoublingSystem doubling;
    const Rational x0(0), x14(1, 4), x625(6, 25);
    Rational d3_a = iterate_distance(doubling, x0, x625, 3);
    Rational d3_b = iterate_distance(doubling, x0, x14, 3);
    Rational d3_c = iterate_distance(doubling, x14, x625, 3);
    result.check(d3_a == Rational(24, 25), "d_3(0, 6/25) = " + rational_str(d3_a) + " (expected 24/25)");
    result.check(d3_b == Rational(1, 2), "d_3(0, 1/4) = " + rational_str(d3_b) + " (expected 1/2)");
    result.check(d3_c == Rational(1, 50), "d_3(1/4, 6/25) = " + rational_str(d3_c) + " (expected 1/50)");
    result.check(d3_b + d3_c == Rational(13, 25), "sum = 13/25 exactly");
    result.check(d3_a > d3_b + d3_c, "triangle inequality fails: 24/25 > 13/25");
    result.check(doubling.domain_horizon(x14, 7) == 1, "I_n(1/4) = {0,1} for n >= 2");

    PaddedBinarySystem padded;
    auto x = BinaryWord::parse("000111111111");
    auto y = BinaryWord::parse("0000111111111");
    auto z = BinaryWord::parse("00111111111");
    Rational dxy = iterate_distance(padded, x, y, 2);
    Rational dxz = iterate_distance(padded, x, z, 2);
    Rational dzy = iterate_distance(padded, z, y, 2);
    result.check(dxy == Rational(1), "d_2(x, y) = " + rational_str(dxy) + " (expected 1)");
    result.check(dxz == Rational(1, 4), "d_2(x, z) = " + rational_str(dxz) + " (expected 1/4)");
    result.check(dzy == Rational(1, 4), "d_2(z, y) = " + rational_str(dzy) + " (expected 1/4)");
    result.check(dxy > dxz + dzy, "triangle inequality fails: 1 > 1/4 + 1/4");
    return result;
}

SuiteResult sep_span(unsigned seed, int chain_instances, int oracle_instances) {
    SuiteResult result;
    result.suite = "sep-span";
    std::mt19937 rng(seed);

    GraphShiftSystem rose2(make_rose(2), MetricChoice::CanonicalDx);
    GraphShiftSystem rose3(make_rose(3), MetricChoice::CanonicalDx);
    auto pool2 = representatives(rose2, 4, 2).points;
    auto pool3 = representatives(rose3, 3, 3).points;

    int chain_failures = 0, sup_checked = 0, oracle_failures = 0;
    auto draw_points = [&](const std::vector<Ultrapath>& pool, int count) {
        std::vector<Ultrapath> points;
        std::vector<std::size_t> idx(pool.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::shuffle(idx.begin(), idx.end(), rng);
        for (int i = 0; i < count && i < static_cast<int>(idx.size()); ++i)
            points.push_back(pool[idx[static_cast<std::size_t>(i)]]);
        return points;
    };

    for (int t = 0; t < chain_instances; ++t) {
        bool use3 = (t % 2) == 1;
        const auto& pool = use3 ? pool3 : pool2;
        int count = 4 + static_cast<int>(rng() % 9); // 4..12
        int n = 1 + static_cast<int>(rng() % 4);
        int k = 2 + static_cast<int>(rng() % 4);
        auto points = draw_points(pool, count);
        ChainReport chain = use3 ? verify_sep_span_chain(rose3, points, n, dyadic(k), 10)
                                 : verify_sep_span_chain(rose2, points, n, dyadic(k), 10);
        if (!chain.ok) ++chain_failures;
        if (chain.sup_level_checked) ++sup_checked;
    }
    if (chain_instances > 0) {
        result.check(chain_failures == 0,
                     std::to_string(chain_instances) + " random chain instances, failures: " +
                         std::to_string(chain_failures));
        result.check(sup_checked > 0,
                     "sup-level chain checked on " + std::to_string(sup_checked) + " instances");
    }

    // singleton sanity
    {
        ChainReport single = verify_sep_span_chain(rose2, {pool2.front()}, 2, dyadic(3));
        result.check(single.ok && single.sep_eps == 1, "singleton: 1 <= 1 <= 1");
    }

    // the doubling-system instance with exact rationals
    {
        IntervalDoublingSystem doubling;
        std::vector<Rational> pts{Rational(0), Rational(6, 25), Rational(1, 4)};
        ChainReport chain = verify_sep_span_chain(doubling, pts, 3, Rational(1, 2));
        result.check(chain.ok, "doubling 3-point chain holds");
        auto inst = make_instance(doubling, pts, 3, Rational(1, 2), DomainRestriction::DomRestricted);
        result.check(inst.dn.size() == 2, "Dom(sigma^2) keeps {0, 6/25}");
        auto sep = max_separated(inst.dn, Rational(1, 2));
        result.check(sep.cardinality == 2, "ssep(3, 1/2) = 2 with witness {0, 6/25}");
    }

    // solver agreement with exhaustive search on <= 12 points
    for (int t = 0; t < oracle_instances; ++t) {
        bool use3 = (t % 2) == 1;
        const auto& pool = use3 ? pool3 : pool2;
        int count = 3 + static_cast<int>(rng() % 10); // 3..12
        int n = 1 + static_cast<int>(rng() % 4);
        int k = 1 + static_cast<int>(rng() % 5);
        auto points = draw_points(pool, count);
        auto inst = use3 ? make_instance(rose3, points, n, dyadic(k), DomainRestriction::Unrestricted)
                         : make_instance(rose2, points, n, dyadic(k), DomainRestriction::Unrestricted);
        auto sep = max_separated(inst.dn, inst.eps);
        auto span = min_spanning(inst.dn, inst.eps);
        if (!sep.exact || sep.cardinality != sep_exhaustive(inst.dn, inst.eps)) ++oracle_failures;
        if (!span.exact || span.cardinality != span_exhaustive(inst.dn, inst.eps)) ++oracle_failures;
    }
    result.check(oracle_failures == 0,
                 std::to_string(oracle_instances) +
                     " instances against exhaustive search, failures: " +
                     std::to_string(oracle_failures));

    // monotonicity in n on a compact-open instance (no sinks)
    {
        CompactSpec spec{2, 6};
        BigInt prev = -1;
        bool monotone = true;
        for (int n = 1; n <= 4; ++n) {
            BigInt c = ssep_count(rose2, spec, n, dyadic(3)).count;
            if (prev >= 0 && c < prev) monotone = false;
            prev = c;
        }
        result.check(monotone, "ssep(n) nondecreasing in n on rose(2)");
    }
    return result;
}

SuiteResult cover_lemmas() {
    SuiteResult result;
    result.suite = "cover-lemmas";

    GraphShiftSystem rose3(make_rose(3), MetricChoice::CanonicalDx);
    CoverLemmaReport base = verify_cover_lemmas(rose3);
    for (const auto& line : base.checks) result.note("rose(3): " + line);
    result.check(base.ok, base.ok ? "rose(3) cover lemmas hold" : base.failure);

    const Ultragraph g = rose3.graph();
    // iterated-pullback chains keep counts bounded by the base chain
    {
        Cover alpha = word_cover(g, 1);
        Cover shifted = pullback(alpha, g);
        shifted.shape = Cover::Shape::Generic;
        auto chain_counts = [&](const Cover& base_cover, int m) {
            std::vector<BigInt> ns;
            Cover current = base_cover;
            ns.push_back(minimal_subcover_count(current, g).n);
            for (int i = 1; i <= m; ++i) {
                current = join(base_cover, pullback(current, g), g);
                ns.push_back(minimal_subcover_count(current, g).n);
            }
            return ns;
        };
        auto plain = chain_counts(alpha, 2);
        auto moved = chain_counts(shifted, 2);
        bool ok = true;
        for (std::size_t i = 0; i < plain.size(); ++i) ok = ok && moved[i] <= plain[i];
        result.check(ok, "shifted-cover chain counts bounded by the base chain");
    }

    // renewal: exact doubling, subadditivity, refinement ordering
    GraphShiftSystem renewal(make_renewal(), MetricChoice::CanonicalDx);
    std::vector<double> renewal_estimates;
    for (int m = 1; m <= 3; ++m) {
        RenewalCover rc = renewal_cover(m);
        CoverEntropyResult run = cover_entropy_estimate(rc.cover, renewal, 8);
        bool doubling = true;
        for (std::size_t n = 1; n < run.sequence.counts.size(); ++n)
            doubling = doubling && run.sequence.counts[n] == 2 * run.sequence.counts[n - 1];
        result.check(doubling, "renewal m=" + std::to_string(m) + ": N doubles at every level");
        result.check(run.sequence.subadditive,
                     "renewal m=" + std::to_string(m) + ": Fekete subadditivity");
        result.check(run.sequence.counts[0] == rc.member_count,
                     "renewal m=" + std::to_string(m) + ": N(alpha_0) = M = " + rc.member_count.str());
        renewal_estimates.push_back(run.estimate);
    }
    for (std::size_t i = 1; i < renewal_estimates.size(); ++i)
        result.check(renewal_estimates[i] >= renewal_estimates[i - 1] - 1e-12,
                     "renewal refinement ordering at m=" + std::to_string(i + 1));
    return result;
}

SuiteResult metrics() {
    SuiteResult result;
    result.suite = "metrics";

    GraphShiftSystem ladder(make_ladder(), MetricChoice::CanonicalDx);
    const Ultragraph g = ladder.graph();

    // parallel pairs x^k (starting e_k) and y^k (starting f_k) with a shared tail
    std::vector<std::pair<Ultrapath, Ultrapath>> pairs;
    std::vector<Rational> dx_values;
    bool edge_metric_constant = true;
    for (int k = 1; k <= 7; ++k) {
        Ultrapath xk = Ultrapath::least_extended({2 * (k - 1)});
        Ultrapath yk = Ultrapath::least_extended({2 * (k - 1) + 1});
        pairs.emplace_back(xk, yk);
        edge_metric_constant = edge_metric_constant && ladder.edge_metric(xk, yk) == Rational(1, 2);
        dx_values.push_back(ladder.metric_dx_exact(xk, yk));
    }
    result.check(edge_metric_constant, "edge metric d(x^k, y^k) = 1/2 for every k");
    bool strictly_down = true;
    for (std::size_t i = 1; i < dx_values.size(); ++i)
        strictly_down = strictly_down && dx_values[i] < dx_values[i - 1];
    result.check(strictly_down, "d_X(x^k, y^k) strictly decreasing: first " +
                                    rational_str(dx_values.front()) + ", last " +
                                    rational_str(dx_values.back()));
    result.check(dx_values.back() <= dyadic(8), "d_X(x^7, y^7) <= 1/2^8");
    for (const auto& v : dx_values)
        result.check(numerator(v) == 1, "d_X value " + rational_str(v) + " is an exact dyadic");

    // failure direction: d_a = d_X small does not force the edge metric small
    {
        ExactMetric da = [&](const Ultrapath& a, const Ultrapath& b) {
            return ladder.metric_dx_exact(a, b);
        };
        ExactMetric db = [&](const Ultrapath& a, const Ultrapath& b) {
            return ladder.edge_metric(a, b);
        };
        ModulusTable table = modulus_table(da, db, pairs, 3, 8);
        bool stuck = true;
        for (const auto& row : table.rows)
            if (row.pairs_in_bucket > 0) stuck = stuck && row.worst_b == Rational(1, 2);
        result.check(stuck, "modulus table: edge metric pinned at 1/2 while d_X shrinks");
    }

    // finite graphs: uniform equivalence visible in-sample in both directions
    {
        GraphShiftSystem rose2(make_rose(2), MetricChoice::CanonicalDx);
        auto reps = representatives(rose2, 5, 2).points;
        std::vector<std::pair<Ultrapath, Ultrapath>> sample;
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (std::size_t j = i + 1; j < reps.size(); ++j) sample.emplace_back(reps[i], reps[j]);
        ExactMetric dx = [&](const Ultrapath& a, const Ultrapath& b) {
            return rose2.metric_dx_exact(a, b);
        };
        ExactMetric de = [&](const Ultrapath& a, const Ultrapath& b) {
            return rose2.edge_metric(a, b);
        };
        ModulusTable t1 = modulus_table(de, dx, sample, 1, 6);
        ModulusTable t2 = modulus_table(dx, de, sample, 1, 12);
        auto shrinks = [](const ModulusTable& t) {
            Rational first(-1), last(-1);
            for (const auto& row : t.rows) {
                if (row.pairs_in_bucket == 0) continue;
                if (first < 0) first = row.worst_b;
                last = row.worst_b;
            }
            return last >= 0 && last < first;
        };
        result.check(shrinks(t1), "rose(2): modulus of d_X with respect to d shrinks in-sample");
        result.check(shrinks(t2), "rose(2): modulus of d with respect to d_X shrinks in-sample");
    }

    // d_X is a metric on representatives: identity, symmetry, triangle
    {
        GraphShiftSystem rose3(make_rose(3), MetricChoice::CanonicalDx);
        auto reps = representatives(rose3, 3, 3).points;
        bool ok = true;
        std::vector<std::vector<Rational>> d(reps.size(), std::vector<Rational>(reps.size()));
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (std::size_t j = 0; j < reps.size(); ++j)
                d[i][j] = rose3.metric_dx_exact(reps[i], reps[j]);
        for (std::size_t i = 0; i < reps.size() && ok; ++i)
            for (std::size_t j = 0; j < reps.size() && ok; ++j) {
                ok = d[i][j] == d[j][i] && (i == j ? d[i][j] == 0 : d[i][j] > 0);
                for (std::size_t l = 0; l < reps.size() && ok; ++l)
                    ok = d[i][j] <= d[i][l] + d[l][j];
            }
        result.check(ok, "d_X metric axioms on rose(3) representatives at depth 3");
    }

    // cylinder diameter bound: same-depth-D prefixes stay within delta(D)
    {
        GraphShiftSystem rose2(make_rose(2), MetricChoice::CanonicalDx);
        int depth = 3;
        Rational delta = dyadic(rose2.enumeration().first_index_with_word_length(depth));
        bool ok = true;
        for (auto& w : admissible_words(rose2.graph(), depth, 2)) {
            std::vector<EdgeId> a = w, b = w;
            a.push_back(0);
            b.push_back(1);
            Rational dd = rose2.metric_dx_exact(Ultrapath::least_extended(a),
                                                Ultrapath::least_extended(b));
            ok = ok && dd <= delta;
        }
        result.check(ok, "pairs sharing a depth-3 cylinder stay within delta(3) = " +
                             rational_str(delta));
    }

    // enumeration invariance: two stage orders give uniformly comparable metrics
    {
        GraphShiftSystem renewal(make_renewal(), MetricChoice::CanonicalDx);
        PathEnumeration reversed(renewal.graph(), EnumerationVariant::StageReversed);
        auto reps = representatives(renewal, 2, 3).points;
        bool direction = true;
        for (std::size_t i = 0; i < reps.size(); ++i) {
            for (std::size_t j = i + 1; j < reps.size(); ++j) {
                Rational d1 = renewal.metric_dx_exact(reps[i], reps[j]);
                // the reversed enumeration separates the pair at a shifted index
                int idx = 1;
                Rational d2(-1);
                for (; idx <= 4096; ++idx) {
                    auto fx = renewal.initial_segment(reversed.at(idx), reps[i]);
                    auto fy = renewal.initial_segment(reversed.at(idx), reps[j]);
                    if (fx != fy) {
                        d2 = dyadic(idx);
                        break;
                    }
                }
                direction = direction && d2 > 0 && (d1 == 0) == (d2 == 0);
            }
        }
        result.check(direction, "stage-reversed enumeration separates exactly the same pairs");
    }

    // Gurevich-style summation metric intervals
    {
        Ultrapath x1 = Ultrapath::least_extended({0});
        GurevichInterval same = ladder.gurevich_metric(x1, x1, 6);
        result.check(same.lo == 0 && same.hi == dyadic(6), "summation metric: equal points in [0, 1/2^6]");
        Ultrapath x2 = Ultrapath::least_extended({2}); // e_2
        Ultrapath y2 = Ultrapath::least_extended({3}); // f_2
        GurevichInterval pair = ladder.gurevich_metric(x2, y2, 8);
        Rational first_term = abs(Rational(1, 3) - Rational(1, 4)) / 2;
        result.check(pair.lo == first_term,
                     "summation metric: first term |1/h(e_2) - 1/h(f_2)|/2 = " +
                         rational_str(first_term));
    }
    return result;
}

std::vector<std::pair<std::string, FiniteGraph>> zebra_corpus() {
    std::vector<std::pair<std::string, FiniteGraph>> corpus;
    auto from = [](const Ultragraph& g) { return finite_subgraph(g, g->edge_count()); };
    corpus.emplace_back("rose(1)", from(make_rose(1)));
    corpus.emplace_back("rose(2)", from(make_rose(2)));
    corpus.emplace_back("rose(3)", from(make_rose(3)));
    corpus.emplace_back("rose(5)", from(make_rose(5)));
    corpus.emplace_back("cycle(4)", from(make_cycle(4)));
    corpus.emplace_back("ladder H_3", finite_subgraph(make_ladder(), 6));
    {
        FiniteGraph p4;
        p4.num_vertices = 4;
        auto add = [&](VertexId s, VertexId r) {
            p4.edge_source.push_back(s);
            p4.edge_range.push_back(r);
        };
        add(0, 1);
        add(1, 0);
        add(1, 2);
        add(2, 1);
        add(2, 3);
        add(3, 2);
        corpus.emplace_back("chain P_4", p4);
    }
    return corpus;
}

double metric_entropy_estimate_finite(const FiniteGraph& g, int word_depth, int n_max) {
    GraphShiftSystem sys(as_ultragraph(g), MetricChoice::EdgeMetric);
    CompactSpec spec{g.edge_count(), 0};
    std::vector<int> schedule{word_depth + 1, word_depth + 2};
    EntropyReport report = entropy_estimate(sys, spec, schedule, n_max);
    return report.final_estimate;
}

double cover_entropy_estimate_finite(const FiniteGraph& g, int word_depth, int n_max) {
    GraphShiftSystem sys(as_ultragraph(g), MetricChoice::EdgeMetric);
    Cover alpha = word_cover(sys.graph(), word_depth);
    return cover_entropy_estimate(alpha, sys, n_max).estimate;
}

SuiteResult zebra(int n_max, double slack) {
    SuiteResult result;
    result.suite = "zebra";
    for (const auto& [name, graph] : zebra_corpus()) {
        double cover = cover_entropy_estimate_finite(graph, 1, n_max);
        double metric = metric_entropy_estimate_finite(graph, 1, n_max);
        std::ostringstream line;
        line << name << ": cover " << cover << " <= metric " << metric << " + " << slack;
        result.check(cover <= metric + slack, line.str());
    }
    return result;
}

} // namespace drshift::verify
