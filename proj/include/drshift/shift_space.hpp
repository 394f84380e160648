#pragma once

#include "drshift/dr_core.hpp"
#include "drshift/graph_model.hpp"

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace drshift {

// ---------------------------------------------------------------------------
// Points of the shift space X = (infinite paths) U X_fin.
//
// Infinite paths are carried as finite truncations. A TruncatedInfinite tail
// promises nothing beyond the stored prefix and operations needing more raise
// insufficient_depth. A LeastExtension tail denotes one specific infinite
// path: the prefix continued forever by the least-indexed admissible edge, so
// every question about it is decidable. Emitter tails are the finite points
// (alpha, A) with A a minimal infinite emitter.
// ---------------------------------------------------------------------------
enum class TailKind { TruncatedInfinite, LeastExtension, Emitter };

struct Ultrapath {
    std::vector<EdgeId> word;
    TailKind tail = TailKind::TruncatedInfinite;
    int emitter = -1;

    static Ultrapath truncated(std::vector<EdgeId> w) {
        return Ultrapath{std::move(w), TailKind::TruncatedInfinite, -1};
    }
    static Ultrapath least_extended(std::vector<EdgeId> w) {
        if (w.empty()) throw std::invalid_argument("least_extended: empty anchor word");
        return Ultrapath{std::move(w), TailKind::LeastExtension, -1};
    }
    static Ultrapath emitter_point(std::vector<EdgeId> w, int emitter) {
        return Ultrapath{std::move(w), TailKind::Emitter, emitter};
    }

    bool finite_point() const { return tail == TailKind::Emitter; }
    int known_depth() const { return static_cast<int>(word.size()); }

    bool operator==(const Ultrapath& o) const = default;
};

std::string to_string(const Ultrapath& x, const Ultragraph& g);

// ---------------------------------------------------------------------------
// The canonical enumeration p_1, p_2, ... behind the metric d_X. Elements are
// pairs (word, base) generated in stages: stage k lists, in shortlex order,
// the not-yet-listed pairs whose word has length <= k over the first k edges
// and whose base is among the first k base atoms (emitters first, ordered by
// first emitted edge, then vertices). Variants exist to exercise metric
// comparisons: one adds two-atom union bases, one reverses each stage.
// ---------------------------------------------------------------------------
struct BaseAtom {
    bool is_emitter = false;
    VertexId vertex = -1;
    int emitter = -1;

    bool operator==(const BaseAtom&) const = default;
};

struct PathElem {
    std::vector<EdgeId> word;
    std::vector<BaseAtom> base; // a union of atoms; canonical variant uses one

    bool operator==(const PathElem&) const = default;
};

enum class EnumerationVariant { CanonicalS, WithUnionBases, StageReversed };

class PathEnumeration {
  public:
    explicit PathEnumeration(Ultragraph g,
                             EnumerationVariant variant = EnumerationVariant::CanonicalS,
                             std::size_t element_cap = 2'000'000);

    // 1-based, matching d_X(x, y) = 1/2^i.
    const PathElem& at(int index) const;

    // Smallest index whose word length is >= depth (the cylinder-diameter
    // index i_D; delta(D) = 1/2^{i_D}).
    int first_index_with_word_length(int depth) const;

    const Ultragraph& graph() const { return graph_; }
    EnumerationVariant variant() const { return variant_; }

  private:
    void ensure_index(int index) const;
    void ensure_word_length(int depth) const;
    void generate_stage() const;

    Ultragraph graph_;
    EnumerationVariant variant_;
    std::size_t element_cap_;

    mutable std::mutex mutex_;
    mutable std::vector<PathElem> elems_;
    mutable std::set<std::vector<std::int64_t>> seen_;
    mutable int stages_done_ = 0;
    mutable int max_word_len_seen_ = -1;
};

// ---------------------------------------------------------------------------
// Shift dynamics and metrics.
// ---------------------------------------------------------------------------
enum class MetricChoice { CanonicalDx, FullDx, EdgeMetric };

struct DxResult {
    enum class Kind { Equal, Value, UpperBound, Undecidable } kind;
    int index = 0;       // separating index for Value; last scanned for UpperBound
    Rational value;      // exact 1/2^index for Value; bound for UpperBound
};

struct GurevichInterval {
    Rational lo, hi; // hi - lo <= 1/2^depth
};

class GraphShiftSystem {
  public:
    using point_type = Ultrapath;

    explicit GraphShiftSystem(Ultragraph g, MetricChoice metric = MetricChoice::CanonicalDx);

    const Ultragraph& graph() const { return graph_; }
    MetricChoice metric_choice() const { return metric_; }
    const PathEnumeration& enumeration() const { return *enum_; }
    std::shared_ptr<const PathEnumeration> enumeration_ptr() const { return enum_; }

    // DRSystem contract.
    int domain_horizon(const Ultrapath& x, int n) const;
    Ultrapath shift(const Ultrapath& x) const;
    Rational base_distance(const Ultrapath& x, const Ultrapath& y) const;
    bool niceone_analytic() const { return true; } // no sinks: domains are dense
    std::optional<Ultrapath> niceone_witness(const Ultrapath& x, int, const Rational&) const {
        return x;
    }

    // Edge at 0-based position; extends LeastExtension tails on demand.
    EdgeId edge_at(const Ultrapath& x, int position) const;
    // Tri-state initial-segment test for an enumeration element.
    enum class Fit { Yes, No, Unknown };
    Fit initial_segment(const PathElem& p, const Ultrapath& x) const;

    // d_X with an explicit scan budget: exact dyadic when a separating index
    // exists within budget, a rigorous upper bound otherwise.
    DxResult metric_dx(const Ultrapath& x, const Ultrapath& y, int enum_budget) const;
    // Scans until decided (throws std::runtime_error at the enumeration cap,
    // insufficient_depth if truncation blocks a test).
    Rational metric_dx_exact(const Ultrapath& x, const Ultrapath& y) const;

    // Classical first-difference metric 1/2^i (i >= 1 the first position, 1-based,
    // where the edge sequences disagree).
    Rational edge_metric(const Ultrapath& x, const Ultrapath& y) const;

    // Gurevich-style summation metric, truncated at `depth` terms with the
    // exact tail bound [0, 1/2^depth]. Row-finite graph shifts only.
    GurevichInterval gurevich_metric(const Ultrapath& x, const Ultrapath& y, int depth) const;

    EdgeId least_edge_after(EdgeId last) const;
    EdgeId least_edge_from_vertex(VertexId v) const;

  private:
    Ultragraph graph_;
    MetricChoice metric_;
    std::shared_ptr<const PathEnumeration> enum_;
};

Ultrapath shift_apply(const GraphShiftSystem& sys, const Ultrapath& x);

// ---------------------------------------------------------------------------
// Representative sampling: one canonical point per nonempty depth-D cylinder
// over the first edge_budget edges (least-indexed-edge extension), plus every
// X_fin point of length <= D. delta bounds the d_X-diameter of any depth-D
// cylinder: no enumeration element of index below first_index_with_word_length(D)
// separates two points sharing a depth-D word.
// ---------------------------------------------------------------------------
struct Representatives {
    std::vector<Ultrapath> points;
    Rational delta;
    int depth = 0;
    std::int64_t edge_budget = 0;
};

Representatives representatives(const GraphShiftSystem& sys, int depth, std::int64_t edge_budget);

// ---------------------------------------------------------------------------
// Empirical modulus-of-continuity table between two exact metrics on sampled
// pairs: for each threshold delta = 1/2^t the largest observed d_b among
// pairs with d_a < delta.
// ---------------------------------------------------------------------------
using ExactMetric = std::function<Rational(const Ultrapath&, const Ultrapath&)>;

struct ModulusRow {
    int t = 0;            // delta = 1/2^t
    Rational worst_b;     // max d_b over pairs with d_a < delta
    int pairs_in_bucket = 0;
};

struct ModulusTable {
    std::vector<ModulusRow> rows;
};

ModulusTable modulus_table(const ExactMetric& d_a, const ExactMetric& d_b,
                           const std::vector<std::pair<Ultrapath, Ultrapath>>& samples,
                           int t_min, int t_max);

} // namespace drshift
