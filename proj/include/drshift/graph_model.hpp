#pragma once

#include "drshift/exact.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace drshift {

using VertexId = std::int64_t;
using EdgeId = std::int64_t;

inline constexpr std::int64_t kInfinite = -1;

struct empty_subgraph_error : std::runtime_error {
    empty_subgraph_error() : std::runtime_error("finite_subgraph: sink pruning removed every edge") {}
};

struct unknown_family_error : std::runtime_error {
    explicit unknown_family_error(const std::string& name)
        : std::runtime_error("unknown builtin family: " + name) {}
};

// The unique decomposition of an edge range: a finite set of vertices with
// finite emission plus finitely many minimal infinite emitters, disjoint.
struct RangeSet {
    std::vector<VertexId> finite_vertices;
    std::vector<int> emitters;

    bool is_singleton_vertex() const { return emitters.empty() && finite_vertices.size() == 1; }
};

// Countable ultragraph presentation. Infinite families are built in; all
// queries are total and budgeted so truncated views stay computable. No
// presentation has sinks.
class UltragraphImpl {
  public:
    virtual ~UltragraphImpl() = default;

    virtual std::string family_name() const = 0;
    virtual std::int64_t vertex_count() const = 0; // kInfinite when unbounded
    virtual std::int64_t edge_count() const = 0;   // kInfinite when unbounded

    virtual VertexId source(EdgeId e) const = 0;
    virtual bool in_range(EdgeId e, VertexId v) const = 0;
    virtual RangeSet range(EdgeId e) const = 0;

    // Edges with source v and id < id_limit, ascending. id_limit < 0 lists all
    // (valid only when that set is finite, which holds for every family here
    // except the infinite rose, whose callers always pass a limit).
    virtual std::vector<EdgeId> out_edges(VertexId v, std::int64_t id_limit) const = 0;

    virtual bool emits(VertexId v) const = 0;

    // Edges g with v in r(g), ascending; nullopt when infinitely many.
    virtual std::optional<std::vector<EdgeId>> edges_into(VertexId v) const = 0;

    virtual int emitter_count() const { return 0; }
    virtual bool emitter_contains(int /*emitter*/, VertexId /*v*/) const { return false; }
    virtual bool emitter_in_range(int /*emitter*/, EdgeId /*e*/) const { return false; }
    // First edge emitted from an emitter set (defines the canonical order of
    // emitters and least extensions through them).
    virtual EdgeId emitter_first_edge(int /*emitter*/) const {
        throw std::logic_error("presentation has no emitters");
    }
    // Edges emitted from the emitter set, ascending, ids < id_limit.
    virtual std::vector<EdgeId> emitter_edges(int /*emitter*/, std::int64_t /*id_limit*/) const {
        throw std::logic_error("presentation has no emitters");
    }

    // kInfinite when v emits infinitely many edges.
    virtual std::int64_t out_degree(VertexId v) const {
        if (edge_count() == kInfinite)
            throw std::logic_error("out_degree: infinite presentation must override");
        return static_cast<std::int64_t>(out_edges(v, -1).size());
    }

    // Closed form for the preimage of a zero-length emitter cylinder:
    //   sigma^{-1}(D_{(A,A),F}) = U_{h in subset_heads} D_{(h,A),F}
    //                             U D_{(A,A),excluded_after}
    // up to the zero-length point of the residual cylinder, which never lies
    // in a preimage. Presentations without such a form return nullopt and the
    // cover calculus reports an unbounded preimage.
    struct EmitterPreimageForm {
        std::vector<EdgeId> subset_heads;
        std::vector<EdgeId> excluded_after;
    };
    virtual std::optional<EmitterPreimageForm> emitter_preimage_form(
        int /*emitter*/, const std::vector<EdgeId>& /*excluded*/) const {
        return std::nullopt;
    }

    virtual bool is_graph() const = 0; // every range a single vertex

    virtual std::string vertex_name(VertexId v) const { return "v" + std::to_string(v + 1); }
    virtual std::string edge_name(EdgeId e) const { return "e" + std::to_string(e + 1); }
};

using Ultragraph = std::shared_ptr<const UltragraphImpl>;

// Is edge b allowed to follow edge a (source of b lies in the range of a)?
inline bool admissible_step(const Ultragraph& g, EdgeId a, EdgeId b) {
    return g->in_range(a, g->source(b));
}

// ---------------------------------------------------------------------------
// Finite graphs (singleton ranges).
// ---------------------------------------------------------------------------
struct FiniteGraph {
    std::int64_t num_vertices = 0;
    std::vector<VertexId> edge_source;
    std::vector<VertexId> edge_range;
    std::vector<std::string> vertex_names; // optional, parallel to vertex ids
    std::vector<std::string> edge_names;   // optional, parallel to edge ids

    std::int64_t edge_count() const { return static_cast<std::int64_t>(edge_source.size()); }
    bool has_sinks() const;
};

Ultragraph as_ultragraph(FiniteGraph g);

struct PathCount {
    int length = 0;
    BigInt count;
};

// Exact number of length-n edge paths via the edge-adjacency transfer
// operator (entry (a,b) set iff b may follow a).
PathCount count_paths(const FiniteGraph& g, int n);

// ---------------------------------------------------------------------------
// Validation.
// ---------------------------------------------------------------------------
struct ValidationIssue {
    enum class Kind { SinkFound, RfumViolation } kind;
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<ValidationIssue> issues;
    // Decomposition found for each inspected edge, by edge id.
    std::vector<std::pair<EdgeId, RangeSet>> decompositions;
};

// Confirms no-sinks and the range decomposition for every edge with id below
// the exploration budget.
ValidationReport validate(const Ultragraph& g, std::int64_t edge_budget);

std::vector<int> minimal_infinite_emitters(const Ultragraph& g, EdgeId e);

// ---------------------------------------------------------------------------
// Path enumeration / truncation.
// ---------------------------------------------------------------------------
struct FinitePaths {
    std::vector<VertexId> vertices;           // zero-length paths
    std::vector<int> emitters;                // zero-length emitter paths
    std::vector<std::vector<EdgeId>> words;   // shortlex over the edge order
};

FinitePaths enumerate_paths(const Ultragraph& g, int max_len, std::int64_t edge_budget);

// All admissible words of exactly the given length over edges with id below
// edge_budget, in shortlex order.
std::vector<std::vector<EdgeId>> admissible_words(const Ultragraph& g, int length,
                                                  std::int64_t edge_budget);

// Subgraph generated by the first edge_budget edges, with sinks created by
// the truncation pruned to a fixed point. Requires singleton ranges among the
// kept edges. Edge/vertex ids are renumbered; names carry over.
FiniteGraph finite_subgraph(const Ultragraph& g, std::int64_t edge_budget);

// ---------------------------------------------------------------------------
// Built-in families. Canonical edge order is part of each presentation.
// ---------------------------------------------------------------------------
Ultragraph make_rose(int petals);
Ultragraph make_rose_infinite();
Ultragraph make_cycle(int length);
// Chain of parallel edge pairs e_i, f_i directed toward the root vertex, the
// first pair degenerated to loops; every vertex emits exactly two edges and
// every prefix {e_1,f_1,...,e_m,f_m} is already sink-free.
// Edge order: e_1, f_1, e_2, f_2, ...
Ultragraph make_ladder();
// Renewal ultragraph: edges e, f_1, f_2, ... with s(e) = v_1, r(e) = all
// vertices (one minimal infinite emitter), s(f_i) = v_{i+1}, r(f_i) = {v_i}.
Ultragraph make_renewal();
Ultragraph make_disjoint_union(std::vector<Ultragraph> parts);

// Explicit finite presentation (used by the file loader and tests).
struct ExplicitSpec {
    std::vector<std::string> vertex_names;
    struct Edge {
        std::string name;
        VertexId source;
        std::vector<VertexId> range;
    };
    std::vector<Edge> edges;
};
Ultragraph make_explicit(ExplicitSpec spec);

// Parses "rose:3", "ladder", "renewal", "cycle:4", "rose_inf",
// "union:rose:3+ladder". Throws unknown_family_error.
Ultragraph make_builtin(const std::string& name_with_params);

} // namespace drshift
