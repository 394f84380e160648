#pragma once

#include "drshift/cover_entropy.hpp"
#include "drshift/graph_entropy.hpp"
#include "drshift/metric_entropy.hpp"

#include <string>
#include <vector>

namespace drshift::verify {

struct CheckLine {
    bool ok = true;
    std::string text;
};

struct SuiteResult {
    std::string suite;
    bool ok = true;
    std::vector<CheckLine> lines;

    void check(bool cond, const std::string& text) {
        lines.push_back({cond, text});
        ok = ok && cond;
    }
    void note(const std::string& text) { lines.push_back({true, text}); }
};

// Replays the two exact counterexample systems (doubling on [0,1) and the
// padded binary shift) with zero tolerance.
SuiteResult counterexamples();

// Random exactly-solved instances: span <= sep <= span(eps/2), the same chain
// at the sup level on small instances, and solver agreement with exhaustive
// search on instances of at most 12 points.
SuiteResult sep_span(unsigned seed, int chain_instances = 120, int oracle_instances = 220);

// Subcover-count inequalities, pullback/carrier monotonicity, and Fekete
// subadditivity on constructed covers.
SuiteResult cover_lemmas();

// Metric comparisons: the parallel-pair family where d_X vanishes while the
// classical edge metric stays at 1/2, modulus tables in both directions on a
// finite graph, metric axioms on representatives, enumeration invariance.
SuiteResult metrics();

// Cover-entropy estimate <= metric-entropy estimate + slack on the finite
// corpus at matched dyadic scales.
SuiteResult zebra(int n_max = 12, double slack = 0.05);

// The finite graphs used by the zebra suite (>= 6 of them).
std::vector<std::pair<std::string, FiniteGraph>> zebra_corpus();

// Window-max metric-entropy estimate of a finite graph under the classical
// edge metric with eps = 1/2^(word_depth + 2), and the word-cover estimate at
// the same scale.
double metric_entropy_estimate_finite(const FiniteGraph& g, int word_depth, int n_max);
double cover_entropy_estimate_finite(const FiniteGraph& g, int word_depth, int n_max);

} // namespace drshift::verify
