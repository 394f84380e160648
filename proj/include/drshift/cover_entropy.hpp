#pragma once

#include "drshift/graph_model.hpp"
#include "drshift/shift_space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace drshift {

struct unbounded_preimage : std::runtime_error {
    explicit unbounded_preimage(const std::string& what) : std::runtime_error(what) {}
};

struct budget_exceeded : std::runtime_error {
    explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Symbolic cylinders D_{(word, B), F}: the finite points (word, A) with A a
// minimal emitter inside B, together with every extension of `word` whose
// next edge is sourced in B and avoids the finite excluded set F. FullRange
// means B = r(last edge); zero-length cylinders need an explicit base.
// ---------------------------------------------------------------------------
struct CylinderBase {
    enum class Kind { FullRange, Vertex, Emitter } kind = Kind::FullRange;
    VertexId vertex = -1;
    int emitter = -1;

    static CylinderBase full() { return {}; }
    static CylinderBase at_vertex(VertexId v) { return {Kind::Vertex, v, -1}; }
    static CylinderBase at_emitter(int m) { return {Kind::Emitter, -1, m}; }
    bool operator==(const CylinderBase&) const = default;
    auto operator<=>(const CylinderBase&) const = default;
};

struct Cylinder {
    std::vector<EdgeId> word;
    CylinderBase base;
    std::vector<EdgeId> excluded; // kept sorted

    bool operator==(const Cylinder&) const = default;
    auto operator<=>(const Cylinder&) const = default;
};

Cylinder make_word_cylinder(std::vector<EdgeId> word);
Cylinder make_excluded_cylinder(std::vector<EdgeId> word, CylinderBase base,
                                std::vector<EdgeId> excluded);

// Resolves FullRange bases that are a single vertex or a single emitter and
// drops excluded edges that are not emitted from the base.
Cylinder canonicalize(const Cylinder& c, const Ultragraph& g);

// Minimal-emitter points (word, A) contained in the cylinder, by emitter id.
std::vector<int> contained_emitter_points(const Cylinder& c, const Ultragraph& g);
bool cylinder_has_extension(const Cylinder& c, const Ultragraph& g);
bool cylinder_empty(const Cylinder& c, const Ultragraph& g);

// Exact intersection; nullopt when empty. Two cylinders meet only when one
// word is a prefix of the other.
std::optional<Cylinder> intersect(const Cylinder& a, const Cylinder& b, const Ultragraph& g);

// sigma^{-1} of a cylinder as a finite cylinder list. For zero-length emitter
// cylinders the presentation's closed form is required (unbounded_preimage
// otherwise). The residual emitter cylinder slightly over-reports: it carries
// its zero-length base point, which is not in the preimage; every carrier used
// here excludes zero-length points, so counts are unaffected.
std::vector<Cylinder> pullback_cylinder(const Cylinder& c, const Ultragraph& g);

// ---------------------------------------------------------------------------
// Covers: finite lists of cylinder unions over a carrier.
// ---------------------------------------------------------------------------
struct CoverMember {
    std::vector<Cylinder> parts;
    bool operator==(const CoverMember&) const = default;
};

struct Carrier {
    bool whole_space = true;
    int min_length = 0;           // carrier = points of length >= min_length
    std::vector<Cylinder> parts;  // used when !whole_space (then min_length still applies)
};

struct Cover {
    std::vector<CoverMember> members;
    Carrier carrier;

    enum class Shape { Generic, WordCover, RenewalCover } shape = Shape::Generic;
    int word_depth = 0; // WordCover
    int renewal_m = 0;  // RenewalCover
};

// All pairwise intersections, empties dropped, duplicate members merged.
// Carrier: intersection (min_length max, part lists intersected).
Cover join(const Cover& a, const Cover& b, const Ultragraph& g);

// sigma^{-1} member by member; the carrier's min_length advances by one.
Cover pullback(const Cover& a, const Ultragraph& g);

// Exact minimal subcover cardinality N(cover, carrier). Fast path when the
// members are pairwise disjoint: each member meeting the carrier is forced.
// General path: exact branch-and-bound set cover over the atom decomposition
// of the cylinder algebra spanned by members and carrier.
struct SubcoverCount {
    BigInt n;
    bool disjoint_fast_path = false;
    int atoms = 0;
};
SubcoverCount minimal_subcover_count(const Cover& cover, const Ultragraph& g,
                                     int atom_budget = 4096);

// The member containing each point is decidable for canonical points; used to
// verify symbolically that a cover covers sampled points.
bool member_contains_point(const CoverMember& m, const Ultrapath& x, const GraphShiftSystem& sys);

// ---------------------------------------------------------------------------
// Fekete sequences a_n = log N(alpha_n, K_n).
// ---------------------------------------------------------------------------
struct FeketeSequence {
    std::vector<BigInt> counts;  // index n = 0..n_max
    std::vector<double> values;  // a_n = log counts[n]
    std::vector<double> ratios;  // a_n / n for n >= 1
    std::vector<double> running_inf;
    bool subadditive = true;     // N_{n+m} <= N_n * N_m on all computed splits

    double estimate() const { return running_inf.empty() ? 0.0 : running_inf.back(); }
    double last_ratio() const { return ratios.empty() ? 0.0 : ratios.back(); }
};

struct CoverEntropyResult {
    FeketeSequence sequence;
    double estimate = 0; // running infimum of a_n/n (equals the limit by subadditivity)
};

// Builds alpha_n = alpha v sigma^{-1}(alpha_{n-1}) with exact subcover counts
// per level. Shape-aware fast engines handle the disjoint renewal and word
// covers at scale; the generic engine covers everything else within budget.
CoverEntropyResult cover_entropy_estimate(const Cover& alpha, const GraphShiftSystem& sys,
                                          int n_max, std::int64_t member_budget = 30'000'000);

// ---------------------------------------------------------------------------
// Concrete cover families.
// ---------------------------------------------------------------------------
// Depth-m word cover of a finite graph shift: one plain cylinder per
// admissible length-m word; carrier = whole space.
Cover word_cover(const Ultragraph& g, int depth);

struct RenewalCover {
    Cover cover;
    std::vector<EdgeId> excluded_set;       // F = {e, f_1..f_m}
    std::vector<std::vector<EdgeId>> q_set; // words over F ending in e, length < m
    std::vector<std::vector<EdgeId>> r_set; // words over F of length m
    BigInt member_count;                    // M = 1 + |Q| + |R|
};
RenewalCover renewal_cover(int m);

// First enumeration index whose fit is not constant across the member's
// points; the member diameter under d_X is exactly 1/2^index.
struct MemberDiameter {
    bool single_point = false;
    int index = 0;
    Rational diameter;
};
MemberDiameter member_diameter(const CoverMember& m, const GraphShiftSystem& sys,
                               int index_cap = 4096);
Rational cover_diameter(const Cover& cover, const GraphShiftSystem& sys, int index_cap = 4096);

struct DiamScheduleEntry {
    Cover cover;
    Rational diameter;
};
// Word covers (finite graphs) or the renewal covers at the given depths, with
// their exact diameters; diameters must strictly decrease along the schedule.
std::vector<DiamScheduleEntry> diam_zero_schedule(const GraphShiftSystem& sys,
                                                  const std::vector<int>& depths);

// ---------------------------------------------------------------------------
// Inequality verification on constructed instances.
// ---------------------------------------------------------------------------
struct CoverLemmaReport {
    bool ok = true;
    std::vector<std::string> checks;
    std::string failure;
};

// N(alpha v beta, Y cap Z) <= N(alpha, Y) N(beta, Z); pullback monotonicity;
// submultiplicativity along alpha_n; carrier monotonicity (nested carriers);
// subcover and diameter-refinement comparisons.
CoverLemmaReport verify_cover_lemmas(const GraphShiftSystem& sys);

} // namespace drshift
