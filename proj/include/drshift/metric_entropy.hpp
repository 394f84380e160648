#pragma once

#include "drshift/dr_core.hpp"
#include "drshift/graph_model.hpp"
#include "drshift/set_cover.hpp"
#include "drshift/shift_space.hpp"

#include <vector>

namespace drshift {

struct density_insufficient : std::runtime_error {
    explicit density_insufficient(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Finite separated/spanning instances over an exact d_n matrix.
// ---------------------------------------------------------------------------
class DistanceMatrix {
  public:
    explicit DistanceMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n) {}
    int size() const { return n_; }
    Rational& at(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
    const Rational& at(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }

  private:
    int n_;
    std::vector<Rational> data_;
};

enum class DomainRestriction { DomRestricted, Unrestricted };

// d_n over the kept points of a system; points pairwise distinct as
// represented. DomRestricted keeps only points of Dom(sigma^{n-1}), the set
// on which d_n is a true metric.
template <DRSystem S>
struct SepSpanInstance {
    std::vector<typename S::point_type> points;
    int n = 1;
    Rational eps;
    DistanceMatrix dn{0};
};

template <DRSystem S>
SepSpanInstance<S> make_instance(const S& sys, std::vector<typename S::point_type> points, int n,
                                 Rational eps, DomainRestriction restriction) {
    SepSpanInstance<S> inst;
    inst.n = n;
    inst.eps = std::move(eps);
    if (restriction == DomainRestriction::DomRestricted) {
        for (auto& p : points)
            if (sys.domain_horizon(p, n) == n - 1) inst.points.push_back(std::move(p));
    } else {
        inst.points = std::move(points);
    }
    const int m = static_cast<int>(inst.points.size());
    inst.dn = DistanceMatrix(m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            Rational d = iterate_distance(sys, inst.points[static_cast<std::size_t>(i)],
                                          inst.points[static_cast<std::size_t>(j)], n);
            inst.dn.at(i, j) = d;
            inst.dn.at(j, i) = d;
        }
    return inst;
}

struct SepSpanSolution {
    int cardinality = 0;
    std::vector<int> witness;
    bool exact = true;
};

// Largest subset with pairwise d_n > eps (ties at eps excluded). Exact by
// branch-and-bound maximum clique for up to 64 points; greedy with a coloring
// upper bound beyond, flagged inexact unless the bounds close.
SepSpanSolution max_separated(const DistanceMatrix& dn, const Rational& eps);

// Smallest subset B with every point within d_n <= eps of some member
// (closed domination: a point may cover itself). Exact branch-and-bound set
// cover for up to 20 points; greedy beyond, flagged.
SepSpanSolution min_spanning(const DistanceMatrix& dn, const Rational& eps);

// ---------------------------------------------------------------------------
// ssep over a compact edge-budget/depth specification.
// ---------------------------------------------------------------------------
struct CompactSpec {
    std::int64_t edge_budget = 0;
    int depth = 0;
};

struct SsepCount {
    BigInt count;
    bool exact = true;
    bool via_cylinder_count = false; // analytic cylinder identity (finite graph, edge metric)
    std::vector<Ultrapath> witness;  // solver path only
};

// sep(n, eps, K ∩ Dom(sigma^{n-1})) computed over representatives. Exactness
// needs the representative depth to be fine in the shifted metric too:
// delta(depth - n + 1) <= eps/4 (DensityInsufficient otherwise). For finite
// graph shifts under the classical edge metric with dyadic eps = 1/2^k the
// count is the number of length-(n+k-2) paths, computed exactly.
SsepCount ssep_count(const GraphShiftSystem& sys, const CompactSpec& spec, int n,
                     const Rational& eps);

// ---------------------------------------------------------------------------
// Entropy estimation report.
// ---------------------------------------------------------------------------
struct EntropyCell {
    int n = 0;
    int eps_exponent = 0; // eps = 1/2^k
    BigInt count;
    double h = 0; // log(count)/n
};

struct EntropyPerEps {
    int eps_exponent = 0;
    double limsup_window_max = 0; // max of h over the top half-window
    double tail_growth = 0;       // mean successive log-count difference over the window
    bool monotone_in_n = true;    // counts nondecreasing in n
    int window_lo = 0, window_hi = 0;
};

struct EntropyReport {
    std::vector<EntropyCell> cells;
    std::vector<EntropyPerEps> per_eps;
    double final_estimate = 0; // window max at the last (smallest) eps
    double final_growth = 0;   // tail growth at the last eps
    bool counts_monotone_in_eps = true;
    int n_max = 0;
};

// Fills ssep counts for eps = 1/2^k over the schedule (ascending k) and
// n = 1..n_max. The limsup at finite n_max is reported as the window max;
// the eps -> 0 limit is reported as the last-eps value with the trend left
// in the table, never extrapolated.
EntropyReport entropy_estimate(const GraphShiftSystem& sys, const CompactSpec& spec,
                               const std::vector<int>& eps_exponents, int n_max);

// ---------------------------------------------------------------------------
// Inequality chains on exactly solved instances.
// ---------------------------------------------------------------------------
struct ChainReport {
    bool ok = true;
    int sep_eps = 0;
    int span_eps = 0;
    int span_half_eps = 0;
    int ssep_eps = 0;
    int sspan_eps = 0;
    int sspan_half_eps = 0;
    bool sup_level_checked = false;
    std::string failure;
};

// span(n,eps) <= sep(n,eps) <= span(n,eps/2) on the instance (all points in
// Dom(sigma^{n-1})), plus the same chain at the ssep/sspan level when the
// instance is small enough to enumerate closed subsets (<= subset_limit pts).
template <DRSystem S>
ChainReport verify_sep_span_chain(const S& sys,
                                  const std::vector<typename S::point_type>& points, int n,
                                  const Rational& eps, int subset_limit = 14);

// Exhaustive solvers over subsets; used by the chain and exposed for tests.
int sep_exhaustive(const DistanceMatrix& dn, const Rational& eps);
int span_exhaustive(const DistanceMatrix& dn, const Rational& eps);

template <DRSystem S>
ChainReport verify_sep_span_chain(const S& sys,
                                  const std::vector<typename S::point_type>& points, int n,
                                  const Rational& eps, int subset_limit) {
    ChainReport report;
    auto inst = make_instance(sys, points, n, eps, DomainRestriction::DomRestricted);
    const Rational half = eps / 2;
    report.sep_eps = max_separated(inst.dn, eps).cardinality;
    report.span_eps = min_spanning(inst.dn, eps).cardinality;
    report.span_half_eps = min_spanning(inst.dn, half).cardinality;
    if (!(report.span_eps <= report.sep_eps && report.sep_eps <= report.span_half_eps)) {
        report.ok = false;
        report.failure = "span <= sep <= span(eps/2) failed";
        return report;
    }
    const int m = inst.dn.size();
    if (m <= subset_limit) {
        report.sup_level_checked = true;
        report.ssep_eps = report.sep_eps; // ssep = sep over K ∩ Dom(sigma^{n-1})
        // sspan: supremum of span over closed subsets of the domain part
        auto sspan = [&](const Rational& e) {
            int best = 0;
            for (std::uint64_t mask = 1; mask < (1ull << m); ++mask) {
                std::vector<int> subset;
                for (int i = 0; i < m; ++i)
                    if (mask & (1ull << i)) subset.push_back(i);
                DistanceMatrix sub(static_cast<int>(subset.size()));
                for (std::size_t a = 0; a < subset.size(); ++a)
                    for (std::size_t b = 0; b < subset.size(); ++b)
                        sub.at(static_cast<int>(a), static_cast<int>(b)) =
                            inst.dn.at(subset[a], subset[b]);
                best = std::max(best, min_spanning(sub, e).cardinality);
            }
            return best;
        };
        report.sspan_eps = sspan(eps);
        report.sspan_half_eps = sspan(half);
        if (!(report.sspan_eps <= report.ssep_eps && report.ssep_eps <= report.sspan_half_eps)) {
            report.ok = false;
            report.failure = "sspan <= ssep <= sspan(eps/2) failed";
        }
    }
    return report;
}

} // namespace drshift
