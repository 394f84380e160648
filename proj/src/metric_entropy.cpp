#include "drshift/metric_entropy.hpp"

#include <algorithm>

namespace drshift {

SepSpanSolution max_separated(const DistanceMatrix& dn, const Rational& eps) {
    const int n = dn.size();
    SepSpanSolution sol;
    if (n == 0) return sol;
    if (n <= 64) {
        std::vector<std::uint64_t> adj(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && dn.at(i, j) > eps) adj[static_cast<std::size_t>(i)] |= 1ull << j;
        CliqueResult clique = max_clique_exact(adj, n);
        sol.cardinality = clique.cardinality;
        sol.witness = clique.witness;
        sol.exact = true;
        return sol;
    }
    std::vector<std::vector<char>> adj(static_cast<std::size_t>(n),
                                       std::vector<char>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && dn.at(i, j) > eps) adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
    CliqueBounds bounds = clique_bounds_greedy(adj);
    sol.cardinality = bounds.lower;
    sol.witness = bounds.witness;
    sol.exact = bounds.lower == bounds.upper;
    return sol;
}

SepSpanSolution min_spanning(const DistanceMatrix& dn, const Rational& eps) {
    const int n = dn.size();
    SepSpanSolution sol;
    if (n == 0) return sol;
    std::vector<BlockSet> neighborhoods(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        BlockSet s = make_blockset(n);
        for (int j = 0; j < n; ++j)
            if (i == j || dn.at(i, j) <= eps) bs_set(s, j);
        neighborhoods[static_cast<std::size_t>(i)] = std::move(s);
    }
    long node_limit = n <= 20 ? 50'000'000L : 200'000L;
    SetCoverResult cover = exact_set_cover(neighborhoods, n, node_limit);
    sol.cardinality = cover.cardinality;
    sol.witness = cover.chosen;
    sol.exact = cover.exact;
    return sol;
}

int sep_exhaustive(const DistanceMatrix& dn, const Rational& eps) {
    const int n = dn.size();
    if (n > 20) throw std::invalid_argument("sep_exhaustive: instance too large");
    int best = 0;
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        std::vector<int> pts;
        for (int i = 0; i < n; ++i)
            if (mask & (1ull << i)) pts.push_back(i);
        bool ok = true;
        for (std::size_t a = 0; a < pts.size() && ok; ++a)
            for (std::size_t b = a + 1; b < pts.size() && ok; ++b)
                ok = dn.at(pts[a], pts[b]) > eps;
        if (ok) best = std::max(best, static_cast<int>(pts.size()));
    }
    return best;
}

int span_exhaustive(const DistanceMatrix& dn, const Rational& eps) {
    const int n = dn.size();
    if (n > 20) throw std::invalid_argument("span_exhaustive: instance too large");
    if (n == 0) return 0;
    int best = n;
    for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
        std::vector<int> pts;
        for (int i = 0; i < n; ++i)
            if (mask & (1ull << i)) pts.push_back(i);
        bool covers = true;
        for (int x = 0; x < n && covers; ++x) {
            bool near = false;
            for (int b : pts)
                if (x == b || dn.at(x, b) <= eps) {
                    near = true;
                    break;
                }
            covers = near;
        }
        if (covers) best = std::min(best, static_cast<int>(pts.size()));
    }
    return best;
}

namespace {

// eps must be exactly 1/2^k with k >= 1; returns k or -1.
int dyadic_exponent(const Rational& eps) {
    if (numerator(eps) != 1) return -1;
    BigInt d = denominator(eps);
    if (d < 2) return -1;
    int k = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++k;
    }
    return d == 1 ? k : -1;
}

} // namespace

SsepCount ssep_count(const GraphShiftSystem& sys, const CompactSpec& spec, int n,
                     const Rational& eps) {
    if (n < 1) throw std::invalid_argument("ssep_count: n must be >= 1");
    if (eps <= 0) throw std::invalid_argument("ssep_count: eps must be positive");
    SsepCount out;

    const Ultragraph& g = sys.graph();
    int k = dyadic_exponent(eps);

    // Analytic cylinder identity: classical edge metric on a finite graph
    // with the whole (compact) space as K. Two points are (n, 1/2^k)-separated
    // exactly when their first n+k-2 edges differ, so the maximal count is the
    // number of (n+k-2)-cylinders.
    bool whole_space = g->edge_count() != kInfinite && spec.edge_budget >= g->edge_count();
    if (sys.metric_choice() == MetricChoice::EdgeMetric && g->is_graph() && whole_space && k >= 1) {
        out.via_cylinder_count = true;
        if (k == 1) {
            out.count = 1; // eps is the diameter; no pair is strictly farther
        } else {
            FiniteGraph fg = finite_subgraph(g, g->edge_count());
            out.count = count_paths(fg, n + k - 2).count;
        }
        return out;
    }

    // Representative path: exactness needs density in the shifted metric.
    // Points sharing a depth-d word differ only past position d: under the
    // canonical d_X no enumeration index below i_d separates them, under the
    // edge metric they are within 1/2^{d+1}.
    int shifted_depth = std::max(0, spec.depth - (n - 1));
    Rational delta = sys.metric_choice() == MetricChoice::EdgeMetric
                         ? dyadic(shifted_depth + 1)
                         : dyadic(sys.enumeration().first_index_with_word_length(shifted_depth));
    if (delta > eps / 4)
        throw density_insufficient("ssep_count: delta(depth - n + 1) = " + to_string(delta) +
                                   " exceeds eps/4 = " + to_string(eps / 4));

    Representatives reps = representatives(sys, spec.depth, spec.edge_budget);
    auto inst = make_instance(sys, reps.points, n, eps, DomainRestriction::DomRestricted);
    SepSpanSolution sol = max_separated(inst.dn, eps);
    out.count = sol.cardinality;
    out.exact = sol.exact;
    for (int w : sol.witness) out.witness.push_back(inst.points[static_cast<std::size_t>(w)]);
    return out;
}

EntropyReport entropy_estimate(const GraphShiftSystem& sys, const CompactSpec& spec,
                               const std::vector<int>& eps_exponents, int n_max) {
    if (eps_exponents.empty()) throw std::invalid_argument("entropy_estimate: empty eps schedule");
    for (std::size_t i = 1; i < eps_exponents.size(); ++i)
        if (eps_exponents[i] <= eps_exponents[i - 1])
            throw std::invalid_argument("entropy_estimate: eps schedule must descend (exponents ascend)");

    EntropyReport report;
    report.n_max = n_max;
    for (int k : eps_exponents) {
        EntropyPerEps per;
        per.eps_exponent = k;
        per.window_lo = std::max(1, n_max / 2);
        per.window_hi = n_max;
        std::vector<double> logs(static_cast<std::size_t>(n_max) + 1, 0.0);
        BigInt prev_count = -1;
        for (int n = 1; n <= n_max; ++n) {
            EntropyCell cell;
            cell.n = n;
            cell.eps_exponent = k;
            cell.count = ssep_count(sys, spec, n, dyadic(k)).count;
            if (prev_count >= 0 && cell.count < prev_count) per.monotone_in_n = false;
            prev_count = cell.count;
            logs[static_cast<std::size_t>(n)] = log_big(cell.count);
            cell.h = logs[static_cast<std::size_t>(n)] / n;
            report.cells.push_back(cell);
        }
        double window_max = 0;
        for (int n = per.window_lo; n <= per.window_hi; ++n)
            window_max = std::max(window_max, logs[static_cast<std::size_t>(n)] / n);
        per.limsup_window_max = window_max;
        if (per.window_hi > per.window_lo)
            per.tail_growth = (logs[static_cast<std::size_t>(per.window_hi)] -
                               logs[static_cast<std::size_t>(per.window_lo)]) /
                              (per.window_hi - per.window_lo);
        else
            per.tail_growth = logs[static_cast<std::size_t>(per.window_hi)] / per.window_hi;
        report.per_eps.push_back(per);
    }
    // counts must not decrease as eps shrinks, at each fixed n
    for (int n = 1; n <= n_max; ++n) {
        BigInt prev = -1;
        for (std::size_t ki = 0; ki < eps_exponents.size(); ++ki) {
            const auto& cell = report.cells[ki * static_cast<std::size_t>(n_max) +
                                            static_cast<std::size_t>(n - 1)];
            if (prev >= 0 && cell.count < prev) report.counts_monotone_in_eps = false;
            prev = cell.count;
        }
    }
    report.final_estimate = report.per_eps.back().limsup_window_max;
    report.final_growth = report.per_eps.back().tail_growth;
    return report;
}

} // namespace drshift
