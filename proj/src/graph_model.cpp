#include "drshift/graph_model.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace drshift {

bool FiniteGraph::has_sinks() const {
    std::vector<char> emits_any(static_cast<std::size_t>(num_vertices), 0);
    for (VertexId s : edge_source) emits_any[static_cast<std::size_t>(s)] = 1;
    for (VertexId v = 0; v < num_vertices; ++v) {
        bool reachable = false;
        for (std::size_t e = 0; e < edge_source.size() && !reachable; ++e)
            reachable = edge_source[e] == v || edge_range[e] == v;
        if (reachable && !emits_any[static_cast<std::size_t>(v)]) return true;
    }
    return false;
}

PathCount count_paths(const FiniteGraph& g, int n) {
    if (n < 1) throw std::invalid_argument("count_paths: n must be >= 1");
    const std::size_t m = g.edge_source.size();
    // x[e] = number of admissible continuations of length (iterations) after e.
    std::vector<BigInt> x(m, 1), y(m);
    // successors grouped by source vertex: succ_by_vertex[v] = edges with source v
    std::vector<std::vector<std::size_t>> by_source(static_cast<std::size_t>(g.num_vertices));
    for (std::size_t e = 0; e < m; ++e) by_source[static_cast<std::size_t>(g.edge_source[e])].push_back(e);
    std::vector<BigInt> vertex_sum(static_cast<std::size_t>(g.num_vertices));
    for (int step = 1; step < n; ++step) {
        for (std::size_t v = 0; v < vertex_sum.size(); ++v) {
            vertex_sum[v] = 0;
            for (std::size_t e : by_source[v]) vertex_sum[v] += x[e];
        }
        for (std::size_t e = 0; e < m; ++e) y[e] = vertex_sum[static_cast<std::size_t>(g.edge_range[e])];
        x.swap(y);
    }
    BigInt total = 0;
    for (const auto& c : x) total += c;
    return PathCount{n, total};
}

namespace {

class FiniteGraphUltragraph final : public UltragraphImpl {
  public:
    explicit FiniteGraphUltragraph(FiniteGraph g) : g_(std::move(g)) {}

    std::string family_name() const override { return "explicit"; }
    std::int64_t vertex_count() const override { return g_.num_vertices; }
    std::int64_t edge_count() const override { return g_.edge_count(); }
    VertexId source(EdgeId e) const override { return g_.edge_source[static_cast<std::size_t>(e)]; }
    bool in_range(EdgeId e, VertexId v) const override {
        return g_.edge_range[static_cast<std::size_t>(e)] == v;
    }
    RangeSet range(EdgeId e) const override {
        return RangeSet{{g_.edge_range[static_cast<std::size_t>(e)]}, {}};
    }
    std::vector<EdgeId> out_edges(VertexId v, std::int64_t id_limit) const override {
        std::vector<EdgeId> out;
        std::int64_t lim = id_limit < 0 ? g_.edge_count() : std::min(id_limit, g_.edge_count());
        for (EdgeId e = 0; e < lim; ++e)
            if (g_.edge_source[static_cast<std::size_t>(e)] == v) out.push_back(e);
        return out;
    }
    bool emits(VertexId v) const override {
        for (VertexId s : g_.edge_source)
            if (s == v) return true;
        return false;
    }
    std::optional<std::vector<EdgeId>> edges_into(VertexId v) const override {
        std::vector<EdgeId> in;
        for (EdgeId e = 0; e < g_.edge_count(); ++e)
            if (g_.edge_range[static_cast<std::size_t>(e)] == v) in.push_back(e);
        return in;
    }
    bool is_graph() const override { return true; }
    std::string vertex_name(VertexId v) const override {
        if (static_cast<std::size_t>(v) < g_.vertex_names.size()) return g_.vertex_names[static_cast<std::size_t>(v)];
        return UltragraphImpl::vertex_name(v);
    }
    std::string edge_name(EdgeId e) const override {
        if (static_cast<std::size_t>(e) < g_.edge_names.size()) return g_.edge_names[static_cast<std::size_t>(e)];
        return UltragraphImpl::edge_name(e);
    }

    const FiniteGraph& graph() const { return g_; }

  private:
    FiniteGraph g_;
};

class RoseGraph final : public UltragraphImpl {
  public:
    explicit RoseGraph(int petals) : petals_(petals) {
        if (petals < 1) throw std::invalid_argument("rose: need at least one petal");
    }
    std::string family_name() const override { return "rose:" + std::to_string(petals_); }
    std::int64_t vertex_count() const override { return 1; }
    std::int64_t edge_count() const override { return petals_; }
    VertexId source(EdgeId) const override { return 0; }
    bool in_range(EdgeId, VertexId v) const override { return v == 0; }
    RangeSet range(EdgeId) const override { return RangeSet{{0}, {}}; }
    std::vector<EdgeId> out_edges(VertexId v, std::int64_t id_limit) const override {
        std::vector<EdgeId> out;
        if (v != 0) return out;
        std::int64_t lim = id_limit < 0 ? petals_ : std::min<std::int64_t>(id_limit, petals_);
        for (EdgeId e = 0; e < lim; ++e) out.push_back(e);
        return out;
    }
    bool emits(VertexId v) const override { return v == 0; }
    std::optional<std::vector<EdgeId>> edges_into(VertexId v) const override {
        if (v != 0) return std::vector<EdgeId>{};
        std::vector<EdgeId> in(static_cast<std::size_t>(petals_));
        for (EdgeId e = 0; e < petals_; ++e) in[static_cast<std::size_t>(e)] = e;
        return in;
    }
    bool is_graph() const override { return true; }
    std::string vertex_name(VertexId) const override { return "u"; }
    std::string edge_name(EdgeId e) const override { return "g" + std::to_string(e + 1); }

  private:
    int petals_;
};

class RoseInfiniteGraph final : public UltragraphImpl {
  public:
    std::string family_name() const override { return "rose_inf"; }
    std::int64_t vertex_count() const override { return 1; }
    std::int64_t edge_count() const override { return kInfinite; }
    VertexId source(EdgeId) const override { return 0; }
    bool in_range(EdgeId, VertexId v) const override { return v == 0; }
    RangeSet range(EdgeId) const override { return RangeSet{{0}, {}}; }
    std::vector<EdgeId> out_edges(VertexId v, std::int64_t id_limit) const override {
        if (v != 0) return {};
        if (id_limit < 0) throw std::logic_error("rose_inf: out_edges needs a budget");
        std::vector<EdgeId> out(static_cast<std::size_t>(id_limit));
        for (EdgeId e = 0; e < id_limit; ++e) out[static_cast<std::size_t>(e)] = e;
        return out;
    }
    bool emits(VertexId v) const override { return v == 0; }
    std::optional<std::vector<EdgeId>> edges_into(VertexId) const override { return std::nullopt; }
    std::int64_t out_degree(VertexId) const override { return kInfinite; }
    bool is_graph() const override { return true; }
    std::string vertex_name(VertexId) const override { return "u"; }
    std::string edge_name(EdgeId e) const override { return "g" + std::to_string(e + 1); }
};

class CycleGraph final : public UltragraphImpl {
  public:
    explicit CycleGraph(int length) : length_(length) {
        if (length < 1) throw std::invalid_argument("cycle: need positive length");
    }
    std::string family_name() const override { return "cycle:" + std::to_string(length_); }
    std::int64_t vertex_count() const override { return length_; }
    std::int64_t edge_count() const override { return length_; }
    VertexId source(EdgeId e) const override { return e; }
    bool in_range(EdgeId e, VertexId v) const override { return v == (e + 1) % length_; }
    RangeSet range(EdgeId e) const override { return RangeSet{{(e + 1) % length_}, {}}; }
    std::vector<EdgeId> out_edges(VertexId v, std::int64_t id_limit) const override {
        std::int64_t lim = id_limit < 0 ? length_ : std::min<std::int64_t>(id_limit, length_);
        if (v < lim) return {v};
        return {};
    }
    bool emits(VertexId) const override { return true; }
    std::optional<std::vector<EdgeId>> edges_into(VertexId v) const override {
        return std::vector<EdgeId>{(v + length_ - 1) % length_};
    }
    bool is_graph() const override { return true; }
    std::string edge_name(EdgeId e) const override { return "c" + std::to_string(e + 1); }

  private:
    int length_;
};

// Edge ids: 2(i-1) = e_i, 2(i-1)+1 = f_i. Vertex id i-1 = v_i.
// s(e_i) = s(f_i) = v_i; r(e_1) = r(f_1) = v_1; r(e_i) = r(f_i) = v_{i-1}.
class LadderFamily final : public UltragraphImpl {
  public:
    std::string family_name() const override { return "ladder"; }
    std::int64_t vertex_count() const override { return kInfinite; }
    std::int64_t edge_count() const override { return kInfinite; }
    VertexId source(EdgeId e) const override { return e / 2; }
    VertexId range_vertex(EdgeId e) const { return e / 2 == 0 ? 0 : e / 2 - 1; }
    bool in_range(EdgeId e, VertexId v) const override { return v == range_vertex(e); }
    RangeSet range(EdgeId e) const override { return RangeSet{{range_vertex(e)}, {}}; }
    std::vector<EdgeId> out_edges(VertexId v, std::int64_t id_limit) const override {
        std::vector<EdgeId> out;
        for (EdgeId e : {2 * v, 2 * v + 1})
            if (id_limit < 0 || e < id_limit) out.push_back(e);
        return out;
    }
    bool emits(VertexId) const override { return true; }
    std::optional<std::vector<EdgeId>> edges_into(VertexId v) const override {
        if (v == 0) return std::vector<EdgeId>{0, 1, 2, 3};
        return std::vector<EdgeId>{2 * (v + 1), 2 * (v + 1) + 1};
    }
    std::int64_t out_degree(VertexId) const override { return 2; }
    bool is_graph() const override { return true; }
    std::string edge_name(EdgeId e) const override {
        return (e % 2 == 0 ? "e" : "f") + std::to_string(e / 2 + 1);
    }

  private:
};

// Edge ids: 0 = e, i = f_i for i >= 1. Vertex id i-1 = v_i.
class RenewalUltragraph final : public UltragraphImpl {
  public:
    std::string family_name() const override { return "renewal"; }
    std::int64_t vertex_count() const override { return kInfinite; }
    std::int64_t edge_count() const override { return kInfinite; }
    VertexId source(EdgeId e) const override { return e == 0 ? 0 : e; } // s(f_i) = v_{i+1}
    bool in_range(EdgeId e, VertexId v) const override {
        if (e == 0) return true; // r(e) is every vertex
        return v == e - 1;       // r(f_i) = {v_i}
    }
    RangeSet range(EdgeId e) const override {
        if (e == 0) return RangeSet{{}, {0}};
        return RangeSet{{e - 1}, {}};
    }
    std::vector<EdgeId> out_edges(VertexId v, std::int64_t id_limit) const override {
        EdgeId only = v == 0 ? 0 : v; // v_1 emits e; v_{i+1} emits f_i
        if (id_limit < 0 || only < id_limit) return {only};
        return {};
    }
    bool emits(VertexId) const override { return true; }
    std::optional<std::vector<EdgeId>> edges_into(VertexId v) const override {
        return std::vector<EdgeId>{0, v + 1}; // e and f_{v+1}
    }
    int emitter_count() const override { return 1; }
    bool emitter_contains(int emitter, VertexId) const override { return emitter == 0; }
    bool emitter_in_range(int emitter, EdgeId e) const override { return emitter == 0 && e == 0; }
    EdgeId emitter_first_edge(int) const override { return 0; }
    std::vector<EdgeId> emitter_edges(int, std::int64_t id_limit) const override {
        std::vector<EdgeId> out(static_cast<std::size_t>(std::max<std::int64_t>(id_limit, 0)));
        for (EdgeId e = 0; e < id_limit; ++e) out[static_cast<std::size_t>(e)] = e;
        return out;
    }
    std::int64_t out_degree(VertexId) const override { return 1; }
    std::optional<EmitterPreimageForm> emitter_preimage_form(
        int emitter, const std::vector<EdgeId>& excluded) const override {
        if (emitter != 0) return std::nullopt;
        // A point h.z with z inside the cylinder either starts with the one
        // edge whose range is the whole vertex set, or with an f whose forced
        // successor is itself admissible; the latter collapse to one residual
        // cylinder excluding the successors of the excluded edges.
        EmitterPreimageForm form;
        form.subset_heads = {0};
        form.excluded_after = {0};
        for (EdgeId g : excluded) form.excluded_after.push_back(g + 1);
        std::sort(form.excluded_after.begin(), form.excluded_after.end());
        form.excluded_after.erase(
            std::unique(form.excluded_after.begin(), form.excluded_after.end()),
            form.excluded_after.end());
        return form;
    }
    bool is_graph() const override { return false; }
    std::string edge_name(EdgeId e) const override {
        return e == 0 ? "e" : "f" + std::to_string(e);
    }

  private:
};

class DisjointUnionGraph final : public UltragraphImpl {
  public:
    explicit DisjointUnionGraph(std::vector<Ultragraph> parts) : parts_(std::move(parts)) {
        if (parts_.empty()) throw std::invalid_argument("disjoint_union: no parts");
        for (const auto& p : parts_) {
            edge_counts_.push_back(p->edge_count());
            vertex_counts_.push_back(p->vertex_count());
            emitter_offsets_.push_back(total_emitters_);
            total_emitters_ += p->emitter_count();
        }
    }

    std::string family_name() const override {
        std::string n = "union:";
        for (std::size_t i = 0; i < parts_.size(); ++i)
            n += (i ? "+" : "") + parts_[i]->family_name();
        return n;
    }

    std::int64_t vertex_count() const override { return total_count(vertex_counts_); }
    std::int64_t edge_count() const override { return total_count(edge_counts_); }

    VertexId source(EdgeId e) const override {
        auto [part, local] = split(edge_counts_, e);
        return join(vertex_counts_, part, parts_[part]->source(local));
    }
    bool in_range(EdgeId e, VertexId v) const override {
        auto [part, local] = split(edge_counts_, e);
        auto [vpart, vlocal] = split(vertex_counts_, v);
        return vpart == part && parts_[part]->in_range(local, vlocal);
    }
    RangeSet range(EdgeId e) const override {
        auto [part, local] = split(edge_counts_, e);
        RangeSet r = parts_[part]->range(local);
        for (auto& v : r.finite_vertices) v = join(vertex_counts_, part, v);
        for (auto& m : r.emitters) m += emitter_offsets_[part];
        return r;
    }
    std::vector<EdgeId> out_edges(VertexId v, std::int64_t id_limit) const override {
        auto [part, vlocal] = split(vertex_counts_, v);
        // translate the global id limit into a local one conservatively
        std::vector<EdgeId> out;
        auto local = parts_[part]->out_edges(vlocal, local_limit(edge_counts_, part, id_limit));
        for (EdgeId e : local) out.push_back(join(edge_counts_, part, e));
        return out;
    }
    bool emits(VertexId v) const override {
        auto [part, vlocal] = split(vertex_counts_, v);
        return parts_[part]->emits(vlocal);
    }
    std::optional<std::vector<EdgeId>> edges_into(VertexId v) const override {
        auto [part, vlocal] = split(vertex_counts_, v);
        auto local = parts_[part]->edges_into(vlocal);
        if (!local) return std::nullopt;
        std::vector<EdgeId> out;
        for (EdgeId e : *local) out.push_back(join(edge_counts_, part, e));
        std::sort(out.begin(), out.end());
        return out;
    }
    int emitter_count() const override { return total_emitters_; }
    bool emitter_contains(int emitter, VertexId v) const override {
        auto [part, vlocal] = split(vertex_counts_, v);
        int base = emitter_offsets_[part];
        int count = parts_[part]->emitter_count();
        if (emitter < base || emitter >= base + count) return false;
        return parts_[part]->emitter_contains(emitter - base, vlocal);
    }
    bool emitter_in_range(int emitter, EdgeId e) const override {
        auto [part, local] = split(edge_counts_, e);
        int base = emitter_offsets_[part];
        int count = parts_[part]->emitter_count();
        if (emitter < base || emitter >= base + count) return false;
        return parts_[part]->emitter_in_range(emitter - base, local);
    }
    EdgeId emitter_first_edge(int emitter) const override {
        for (std::size_t part = 0; part < parts_.size(); ++part) {
            int base = emitter_offsets_[part];
            int count = parts_[part]->emitter_count();
            if (emitter >= base && emitter < base + count)
                return join(edge_counts_, part, parts_[part]->emitter_first_edge(emitter - base));
        }
        throw std::out_of_range("emitter id");
    }
    std::int64_t out_degree(VertexId v) const override {
        auto [part, vlocal] = split(vertex_counts_, v);
        return parts_[part]->out_degree(vlocal);
    }
    bool is_graph() const override {
        for (const auto& p : parts_)
            if (!p->is_graph()) return false;
        return true;
    }
    std::string vertex_name(VertexId v) const override {
        auto [part, vlocal] = split(vertex_counts_, v);
        return "p" + std::to_string(part) + "." + parts_[part]->vertex_name(vlocal);
    }
    std::string edge_name(EdgeId e) const override {
        auto [part, local] = split(edge_counts_, e);
        return "p" + std::to_string(part) + "." + parts_[part]->edge_name(local);
    }

    const std::vector<Ultragraph>& parts() const { return parts_; }

  private:
    // Round-robin interleaving of part-local ids into one global order, so a
    // finite part keeps finite ids even after an infinite one.
    static std::int64_t total_count(const std::vector<std::int64_t>& counts) {
        std::int64_t total = 0;
        for (auto c : counts) {
            if (c == kInfinite) return kInfinite;
            total += c;
        }
        return total;
    }

    static std::pair<std::size_t, std::int64_t> split(const std::vector<std::int64_t>& counts,
                                                      std::int64_t global) {
        std::int64_t round = 0;
        std::int64_t remaining = global;
        for (;;) {
            for (std::size_t part = 0; part < counts.size(); ++part) {
                if (counts[part] != kInfinite && round >= counts[part]) continue;
                if (remaining == 0) return {part, round};
                --remaining;
            }
            ++round;
        }
    }

    static std::int64_t join(const std::vector<std::int64_t>& counts, std::size_t part,
                             std::int64_t local) {
        std::int64_t global = 0;
        for (std::int64_t round = 0; round < local; ++round)
            for (std::size_t p = 0; p < counts.size(); ++p)
                if (counts[p] == kInfinite || round < counts[p]) ++global;
        for (std::size_t p = 0; p < part; ++p)
            if (counts[p] == kInfinite || local < counts[p]) ++global;
        return global;
    }

    static std::int64_t local_limit(const std::vector<std::int64_t>& counts, std::size_t part,
                                    std::int64_t global_limit) {
        if (global_limit < 0) return -1;
        std::int64_t local = 0;
        while (join(counts, part, local) < global_limit &&
               (counts[part] == kInfinite || local < counts[part]))
            ++local;
        return local;
    }

    std::vector<Ultragraph> parts_;
    std::vector<std::int64_t> edge_counts_;
    std::vector<std::int64_t> vertex_counts_;
    std::vector<int> emitter_offsets_;
    int total_emitters_ = 0;
};

class ExplicitUltragraph final : public UltragraphImpl {
  public:
    explicit ExplicitUltragraph(ExplicitSpec spec) : spec_(std::move(spec)) {
        for (const auto& e : spec_.edges) {
            if (e.source < 0 || e.source >= static_cast<VertexId>(spec_.vertex_names.size()))
                throw std::invalid_argument("explicit: edge source out of range");
            if (e.range.empty()) throw std::invalid_argument("explicit: empty edge range");
            for (VertexId v : e.range)
                if (v < 0 || v >= static_cast<VertexId>(spec_.vertex_names.size()))
                    throw std::invalid_argument("explicit: range vertex out of range");
        }
    }

    std::string family_name() const override { return "explicit"; }
    std::int64_t vertex_count() const override {
        return static_cast<std::int64_t>(spec_.vertex_names.size());
    }
    std::int64_t edge_count() const override {
        return static_cast<std::int64_t>(spec_.edges.size());
    }
    VertexId source(EdgeId e) const override { return spec_.edges[static_cast<std::size_t>(e)].source; }
    bool in_range(EdgeId e, VertexId v) const override {
        const auto& r = spec_.edges[static_cast<std::size_t>(e)].range;
        return std::find(r.begin(), r.end(), v) != r.end();
    }
    RangeSet range(EdgeId e) const override {
        RangeSet r;
        r.finite_vertices = spec_.edges[static_cast<std::size_t>(e)].range;
        std::sort(r.finite_vertices.begin(), r.finite_vertices.end());
        r.finite_vertices.erase(std::unique(r.finite_vertices.begin(), r.finite_vertices.end()),
                                r.finite_vertices.end());
        return r;
    }
    std::vector<EdgeId> out_edges(VertexId v, std::int64_t id_limit) const override {
        std::vector<EdgeId> out;
        std::int64_t lim = id_limit < 0 ? edge_count() : std::min(id_limit, edge_count());
        for (EdgeId e = 0; e < lim; ++e)
            if (spec_.edges[static_cast<std::size_t>(e)].source == v) out.push_back(e);
        return out;
    }
    bool emits(VertexId v) const override {
        for (const auto& e : spec_.edges)
            if (e.source == v) return true;
        return false;
    }
    std::optional<std::vector<EdgeId>> edges_into(VertexId v) const override {
        std::vector<EdgeId> in;
        for (EdgeId e = 0; e < edge_count(); ++e)
            if (in_range(e, v)) in.push_back(e);
        return in;
    }
    bool is_graph() const override {
        for (const auto& e : spec_.edges)
            if (e.range.size() != 1) return false;
        return true;
    }
    std::string vertex_name(VertexId v) const override { return spec_.vertex_names[static_cast<std::size_t>(v)]; }
    std::string edge_name(EdgeId e) const override { return spec_.edges[static_cast<std::size_t>(e)].name; }

  private:
    ExplicitSpec spec_;
};

} // namespace

Ultragraph as_ultragraph(FiniteGraph g) {
    return std::make_shared<FiniteGraphUltragraph>(std::move(g));
}

Ultragraph make_rose(int petals) { return std::make_shared<RoseGraph>(petals); }
Ultragraph make_rose_infinite() { return std::make_shared<RoseInfiniteGraph>(); }
Ultragraph make_cycle(int length) { return std::make_shared<CycleGraph>(length); }
Ultragraph make_ladder() { return std::make_shared<LadderFamily>(); }
Ultragraph make_renewal() { return std::make_shared<RenewalUltragraph>(); }
Ultragraph make_disjoint_union(std::vector<Ultragraph> parts) {
    return std::make_shared<DisjointUnionGraph>(std::move(parts));
}
Ultragraph make_explicit(ExplicitSpec spec) {
    return std::make_shared<ExplicitUltragraph>(std::move(spec));
}

ValidationReport validate(const Ultragraph& g, std::int64_t edge_budget) {
    ValidationReport report;
    std::int64_t count = g->edge_count();
    std::int64_t budget = count == kInfinite ? edge_budget : std::min(edge_budget, count);
    std::set<VertexId> seen;
    for (EdgeId e = 0; e < budget; ++e) {
        seen.insert(g->source(e));
        RangeSet r = g->range(e);
        // RFUM shape: the finite part must not meet any declared emitter.
        for (VertexId v : r.finite_vertices) {
            seen.insert(v);
            for (int m : r.emitters) {
                if (g->emitter_contains(m, v)) {
                    report.ok = false;
                    report.issues.push_back({ValidationIssue::Kind::RfumViolation,
                                             "edge " + g->edge_name(e) +
                                                 ": finite part meets emitter part"});
                }
            }
        }
        if (r.finite_vertices.empty() && r.emitters.empty()) {
            report.ok = false;
            report.issues.push_back(
                {ValidationIssue::Kind::RfumViolation, "edge " + g->edge_name(e) + ": empty range"});
        }
        report.decompositions.emplace_back(e, std::move(r));
    }
    for (VertexId v : seen) {
        if (!g->emits(v)) {
            report.ok = false;
            report.issues.push_back(
                {ValidationIssue::Kind::SinkFound, "vertex " + g->vertex_name(v) + " emits no edge"});
        }
    }
    return report;
}

std::vector<int> minimal_infinite_emitters(const Ultragraph& g, EdgeId e) {
    return g->range(e).emitters;
}

std::vector<std::vector<EdgeId>> admissible_words(const Ultragraph& g, int length,
                                                  std::int64_t edge_budget) {
    std::vector<std::vector<EdgeId>> out;
    if (length == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<EdgeId> word;
    auto rec = [&](auto&& self, int remaining) -> void {
        if (remaining == 0) {
            out.push_back(word);
            return;
        }
        for (EdgeId e = 0; e < edge_budget; ++e) {
            if (!word.empty() && !admissible_step(g, word.back(), e)) continue;
            word.push_back(e);
            self(self, remaining - 1);
            word.pop_back();
        }
    };
    rec(rec, length);
    return out;
}

FinitePaths enumerate_paths(const Ultragraph& g, int max_len, std::int64_t edge_budget) {
    FinitePaths out;
    std::set<VertexId> verts;
    for (EdgeId e = 0; e < edge_budget; ++e) {
        verts.insert(g->source(e));
        RangeSet r = g->range(e);
        for (VertexId v : r.finite_vertices) verts.insert(v);
        for (int m : r.emitters)
            if (std::find(out.emitters.begin(), out.emitters.end(), m) == out.emitters.end())
                out.emitters.push_back(m);
    }
    out.vertices.assign(verts.begin(), verts.end());
    for (int len = 1; len <= max_len; ++len) {
        auto words = admissible_words(g, len, edge_budget);
        out.words.insert(out.words.end(), words.begin(), words.end());
    }
    return out;
}

FiniteGraph finite_subgraph(const Ultragraph& g, std::int64_t edge_budget) {
    std::vector<EdgeId> kept;
    for (EdgeId e = 0; e < edge_budget; ++e) {
        if (!g->range(e).is_singleton_vertex())
            throw std::invalid_argument("finite_subgraph: range of " + g->edge_name(e) +
                                        " is not a single vertex");
        kept.push_back(e);
    }
    // Iterate sink pruning to a fixed point.
    for (;;) {
        std::set<VertexId> vertices;
        std::set<VertexId> sources;
        for (EdgeId e : kept) {
            vertices.insert(g->source(e));
            vertices.insert(g->range(e).finite_vertices.front());
            sources.insert(g->source(e));
        }
        std::set<VertexId> sinks;
        for (VertexId v : vertices)
            if (!sources.count(v)) sinks.insert(v);
        if (sinks.empty()) {
            if (kept.empty()) throw empty_subgraph_error();
            FiniteGraph out;
            std::map<VertexId, VertexId> renum;
            for (VertexId v : vertices) {
                renum[v] = out.num_vertices++;
                out.vertex_names.push_back(g->vertex_name(v));
            }
            for (EdgeId e : kept) {
                out.edge_source.push_back(renum[g->source(e)]);
                out.edge_range.push_back(renum[g->range(e).finite_vertices.front()]);
                out.edge_names.push_back(g->edge_name(e));
            }
            return out;
        }
        std::vector<EdgeId> next;
        for (EdgeId e : kept)
            if (!sinks.count(g->range(e).finite_vertices.front()) && !sinks.count(g->source(e)))
                next.push_back(e);
        if (next.size() == kept.size()) {
            // only isolated sink vertices remained; with no edges left we are empty
            throw std::logic_error("finite_subgraph: pruning did not progress");
        }
        kept.swap(next);
        if (kept.empty()) throw empty_subgraph_error();
    }
}

Ultragraph make_builtin(const std::string& name_with_params) {
    auto starts = [&](const std::string& p) {
        return name_with_params.rfind(p, 0) == 0;
    };
    auto int_param = [&](std::size_t offset) {
        std::string tail = name_with_params.substr(offset);
        if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos)
            throw unknown_family_error(name_with_params);
        return std::stoi(tail);
    };
    if (starts("rose:")) return make_rose(int_param(5));
    if (name_with_params == "rose_inf") return make_rose_infinite();
    if (starts("cycle:")) return make_cycle(int_param(6));
    if (name_with_params == "ladder" || name_with_params == "ladder_ex2") return make_ladder();
    if (name_with_params == "renewal" || starts("renewal:")) return make_renewal();
    if (starts("union:")) {
        std::string rest = name_with_params.substr(6);
        std::vector<Ultragraph> parts;
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            std::size_t plus = rest.find('+', pos);
            std::string item = rest.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
            if (item.empty()) throw unknown_family_error(name_with_params);
            parts.push_back(make_builtin(item));
            if (plus == std::string::npos) break;
            pos = plus + 1;
        }
        return make_disjoint_union(std::move(parts));
    }
    throw unknown_family_error(name_with_params);
}

} // namespace drshift
