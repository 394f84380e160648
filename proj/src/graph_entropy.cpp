#include "drshift/graph_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace drshift {

double SpectralEstimate::log_lambda() const { return std::log(lambda); }
double SpectralEstimate::log_lo() const { return std::log(lo); }
double SpectralEstimate::log_hi() const { return std::log(hi); }

namespace {

struct EdgeAdjacency {
    int n = 0;
    std::vector<std::vector<int>> succ; // successors of each edge
};

EdgeAdjacency edge_adjacency(const FiniteGraph& g) {
    EdgeAdjacency adj;
    adj.n = static_cast<int>(g.edge_source.size());
    std::vector<std::vector<int>> by_source(static_cast<std::size_t>(g.num_vertices));
    for (int e = 0; e < adj.n; ++e)
        by_source[static_cast<std::size_t>(g.edge_source[static_cast<std::size_t>(e)])].push_back(e);
    adj.succ.resize(static_cast<std::size_t>(adj.n));
    for (int e = 0; e < adj.n; ++e)
        adj.succ[static_cast<std::size_t>(e)] =
            by_source[static_cast<std::size_t>(g.edge_range[static_cast<std::size_t>(e)])];
    return adj;
}

void apply(const EdgeAdjacency& adj, const std::vector<double>& x, std::vector<double>& y) {
    for (int e = 0; e < adj.n; ++e) {
        double s = 0;
        for (int f : adj.succ[static_cast<std::size_t>(e)]) s += x[static_cast<std::size_t>(f)];
        y[static_cast<std::size_t>(e)] = s;
    }
}

// Collatz-Wielandt enclosure from one positive test vector.
std::pair<double, double> ratio_interval(const std::vector<double>& x,
                                         const std::vector<double>& y) {
    double lo = 0, hi = 0;
    bool first = true;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0) continue;
        double r = y[i] / x[i];
        if (first) {
            lo = hi = r;
            first = false;
        } else {
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
    }
    return {lo, hi};
}

void normalize(std::vector<double>& x) {
    double sum = 0;
    for (double v : x) sum += v;
    if (sum <= 0) return;
    for (double& v : x) v /= sum;
}

} // namespace

SpectralEstimate finite_graph_entropy_spectral(const FiniteGraph& g, double tol,
                                               int max_iterations) {
    if (g.edge_count() == 0) throw std::invalid_argument("spectral: graph has no edges");
    EdgeAdjacency adj = edge_adjacency(g);
    const std::size_t n = static_cast<std::size_t>(adj.n);
    std::vector<double> x(n, 1.0), y(n), w(n), z(n);

    SpectralEstimate best;
    best.lo = 0;
    best.hi = std::numeric_limits<double>::infinity();
    const double slack = 1e-12; // floating-point guard on the certified bounds

    for (int it = 1; it <= max_iterations; ++it) {
        apply(adj, x, y);
        auto [lo1, hi1] = ratio_interval(x, y);
        // period-2 oscillations: average two consecutive iterates first
        for (std::size_t i = 0; i < n; ++i) w[i] = x[i] + y[i];
        apply(adj, w, z);
        auto [lo2, hi2] = ratio_interval(w, z);
        double lo = std::max(lo1, lo2) - slack;
        double hi = std::min(hi1, hi2) + slack;
        if (lo > best.lo) best.lo = lo;
        if (hi < best.hi) best.hi = hi;
        best.iterations = it;
        if (best.hi - best.lo <= tol) {
            best.converged = true;
            break;
        }
        x = y;
        normalize(x);
        if (it == max_iterations) best.converged = false;
    }
    best.residual = best.hi - best.lo;
    best.lambda = (best.lo + best.hi) / 2;
    return best;
}

PathcountEntropy finite_graph_entropy_pathcount(const FiniteGraph& g, int n_max) {
    if (n_max < 1) throw std::invalid_argument("pathcount entropy: n_max must be >= 1");
    PathcountEntropy out;
    double prev_log = 0;
    for (int n = 1; n <= n_max; ++n) {
        double ln = log_big(count_paths(g, n).count);
        out.h_sequence.push_back(ln / n);
        if (n == n_max) {
            out.estimate = ln / n;
            out.growth = n > 1 ? ln - prev_log : ln;
        }
        prev_log = ln;
    }
    return out;
}

FiltrationReport rowfinite_entropy_sup(const Ultragraph& family,
                                       const std::vector<std::int64_t>& budgets, double tol,
                                       double divergence_threshold) {
    FiltrationReport report;
    report.divergence_threshold = divergence_threshold;
    bool have_sup = false;
    std::vector<double> increments;
    for (std::int64_t budget : budgets) {
        FiltrationRow row;
        row.budget = budget;
        try {
            FiniteGraph sub = finite_subgraph(family, budget);
            SpectralEstimate est = finite_graph_entropy_spectral(sub, tol);
            row.lo = est.log_lo();
            row.hi = est.log_hi();
        } catch (const empty_subgraph_error&) {
            row.skipped = true;
        }
        if (!row.skipped) {
            if (!have_sup) {
                report.sup_lo = row.lo;
                report.sup_hi = row.hi;
                have_sup = true;
            } else {
                double prev = report.sup_lo;
                report.sup_lo = std::max(report.sup_lo, row.lo);
                report.sup_hi = std::max(report.sup_hi, row.hi);
                increments.push_back(report.sup_lo - prev);
            }
        }
        row.sup_lo = report.sup_lo;
        row.sup_hi = report.sup_hi;
        report.rows.push_back(row);
    }
    if (increments.size() >= 2) {
        double a = increments[increments.size() - 1];
        double b = increments[increments.size() - 2];
        report.diverging = a > divergence_threshold && b > divergence_threshold;
    }
    return report;
}

IntervalEstimate disjoint_union_entropy(const std::vector<IntervalEstimate>& components) {
    if (components.empty()) throw std::invalid_argument("disjoint_union_entropy: no components");
    IntervalEstimate out = components.front();
    for (const auto& c : components) {
        out.lo = std::max(out.lo, c.lo);
        out.hi = std::max(out.hi, c.hi);
    }
    return out;
}

} // namespace drshift
