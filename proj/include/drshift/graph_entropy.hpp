#pragma once

#include "drshift/graph_model.hpp"

#include <vector>

namespace drshift {

// Certified enclosure of the spectral radius of the edge-adjacency transfer
// operator: for a positive vector x, min_e (Bx)_e/x_e <= lambda <= max_e.
struct SpectralEstimate {
    double lambda = 0;
    double lo = 0, hi = 0;
    int iterations = 0;
    double residual = 0; // hi - lo at exit
    bool converged = true;

    double log_lambda() const;
    double log_lo() const;
    double log_hi() const;
};

SpectralEstimate finite_graph_entropy_spectral(const FiniteGraph& g, double tol,
                                               int max_iterations = 100000);

struct PathcountEntropy {
    std::vector<double> h_sequence; // (1/n) log |paths of length n|, n = 1..n_max
    double estimate = 0;            // value at n_max
    double growth = 0;              // log count(n_max) - log count(n_max - 1)
};

PathcountEntropy finite_graph_entropy_pathcount(const FiniteGraph& g, int n_max);

// ---------------------------------------------------------------------------
// Supremum over finite-subgraph truncations of an infinite family.
// ---------------------------------------------------------------------------
struct FiltrationRow {
    std::int64_t budget = 0;
    bool skipped = false; // truncation pruned to nothing
    double lo = 0, hi = 0;
    double sup_lo = 0, sup_hi = 0;
};

struct FiltrationReport {
    std::vector<FiltrationRow> rows;
    bool diverging = false; // last two increments above the threshold
    double divergence_threshold = 0;
    double sup_lo = 0, sup_hi = 0;
};

// For each budget: prune to the finite subgraph, certify log(lambda), keep the
// running supremum. The supremum is a lower bound for the family entropy;
// no convergence is claimed, and steady growth trips the diverging flag.
FiltrationReport rowfinite_entropy_sup(const Ultragraph& family,
                                       const std::vector<std::int64_t>& budgets, double tol,
                                       double divergence_threshold = 0.01);

// ---------------------------------------------------------------------------
// Disjoint unions: entropy is the exact max of the component estimates.
// ---------------------------------------------------------------------------
struct IntervalEstimate {
    double lo = 0, hi = 0;
    double midpoint() const { return (lo + hi) / 2; }
};

IntervalEstimate disjoint_union_entropy(const std::vector<IntervalEstimate>& components);

} // namespace drshift
