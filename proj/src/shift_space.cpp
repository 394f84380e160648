#include "drshift/shift_space.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace drshift {

std::string to_string(const Ultrapath& x, const Ultragraph& g) {
    std::string s;
    for (std::size_t i = 0; i < x.word.size(); ++i) s += (i ? "." : "") + g->edge_name(x.word[i]);
    switch (x.tail) {
        case TailKind::TruncatedInfinite: s += x.word.empty() ? "?" : ".?"; break;
        case TailKind::LeastExtension: s += "..."; break;
        case TailKind::Emitter:
            s += (x.word.empty() ? "" : "|") + std::string("A") + std::to_string(x.emitter);
            break;
    }
    return s;
}

// ---------------------------------------------------------------------------
// PathEnumeration
// ---------------------------------------------------------------------------
PathEnumeration::PathEnumeration(Ultragraph g, EnumerationVariant variant, std::size_t element_cap)
    : graph_(std::move(g)), variant_(variant), element_cap_(element_cap) {}

namespace {

// Base atoms in canonical order: emitters first, then vertices.
std::vector<BaseAtom> base_atoms_upto(const Ultragraph& g, int count) {
    std::vector<BaseAtom> atoms;
    int emitters = g->emitter_count();
    std::int64_t vertices = g->vertex_count();
    for (int j = 0; j < count; ++j) {
        if (j < emitters) {
            atoms.push_back(BaseAtom{true, -1, j});
        } else {
            std::int64_t v = j - emitters;
            if (vertices != kInfinite && v >= vertices) break;
            atoms.push_back(BaseAtom{false, v, -1});
        }
    }
    return atoms;
}

bool atom_in_range(const Ultragraph& g, const BaseAtom& a, EdgeId last) {
    return a.is_emitter ? g->emitter_in_range(a.emitter, last) : g->in_range(last, a.vertex);
}

} // namespace

void PathEnumeration::generate_stage() const {
    int k = stages_done_ + 1;
    std::int64_t edge_limit = k;
    if (graph_->edge_count() != kInfinite) edge_limit = std::min<std::int64_t>(k, graph_->edge_count());

    std::vector<BaseAtom> atoms = base_atoms_upto(graph_, k);
    std::vector<std::vector<BaseAtom>> bases;
    for (const auto& a : atoms) bases.push_back({a});
    if (variant_ == EnumerationVariant::WithUnionBases) {
        for (std::size_t i = 0; i < atoms.size(); ++i)
            for (std::size_t j = i + 1; j < atoms.size(); ++j)
                bases.push_back({atoms[i], atoms[j]});
    }

    std::vector<PathElem> fresh;
    auto key_of = [](const PathElem& e) {
        std::vector<std::int64_t> key(e.word.begin(), e.word.end());
        key.push_back(-1);
        for (const auto& a : e.base) key.push_back(a.is_emitter ? -(a.emitter + 2) : a.vertex);
        return key;
    };
    auto emit = [&](std::vector<EdgeId> word, const std::vector<BaseAtom>& base) {
        PathElem e{std::move(word), base};
        if (seen_.insert(key_of(e)).second) fresh.push_back(std::move(e));
    };

    for (int len = 0; len <= k; ++len) {
        auto words = admissible_words(graph_, len, edge_limit);
        for (const auto& w : words) {
            for (const auto& base : bases) {
                if (!w.empty()) {
                    bool ok = true;
                    for (const auto& a : base) ok = ok && atom_in_range(graph_, a, w.back());
                    if (!ok) continue;
                }
                emit(w, base);
            }
        }
    }

    if (variant_ == EnumerationVariant::StageReversed) std::reverse(fresh.begin(), fresh.end());
    for (auto& e : fresh) {
        max_word_len_seen_ = std::max(max_word_len_seen_, static_cast<int>(e.word.size()));
        elems_.push_back(std::move(e));
        if (elems_.size() > element_cap_)
            throw std::runtime_error("PathEnumeration: element cap exceeded");
    }
    stages_done_ = k;
}

void PathEnumeration::ensure_index(int index) const {
    std::lock_guard<std::mutex> lock(mutex_);
    while (static_cast<int>(elems_.size()) < index) generate_stage();
}

void PathEnumeration::ensure_word_length(int depth) const {
    std::lock_guard<std::mutex> lock(mutex_);
    while (max_word_len_seen_ < depth) generate_stage();
}

const PathElem& PathEnumeration::at(int index) const {
    if (index < 1) throw std::invalid_argument("PathEnumeration::at: 1-based index");
    ensure_index(index);
    std::lock_guard<std::mutex> lock(mutex_);
    return elems_[static_cast<std::size_t>(index - 1)];
}

int PathEnumeration::first_index_with_word_length(int depth) const {
    ensure_word_length(depth);
    std::lock_guard<std::mutex> lock(mutex_);
    for (std::size_t i = 0; i < elems_.size(); ++i)
        if (static_cast<int>(elems_[i].word.size()) >= depth) return static_cast<int>(i) + 1;
    throw std::logic_error("first_index_with_word_length");
}

// ---------------------------------------------------------------------------
// GraphShiftSystem
// ---------------------------------------------------------------------------
GraphShiftSystem::GraphShiftSystem(Ultragraph g, MetricChoice metric)
    : graph_(std::move(g)), metric_(metric) {
    auto variant = metric == MetricChoice::FullDx ? EnumerationVariant::WithUnionBases
                                                  : EnumerationVariant::CanonicalS;
    enum_ = std::make_shared<PathEnumeration>(graph_, variant);
}

int GraphShiftSystem::domain_horizon(const Ultrapath& x, int n) const {
    if (n < 1) throw std::invalid_argument("domain_horizon: n must be >= 1");
    if (x.finite_point()) return std::min<int>(n - 1, x.known_depth());
    return n - 1;
}

EdgeId GraphShiftSystem::least_edge_from_vertex(VertexId v) const {
    for (std::int64_t limit = 4;; limit *= 4) {
        auto out = graph_->out_edges(v, limit);
        if (!out.empty()) return out.front();
        std::int64_t total = graph_->edge_count();
        if (total != kInfinite && limit >= total)
            throw std::logic_error("least_edge_from_vertex: sink in a no-sink presentation");
        if (limit > (std::int64_t(1) << 40))
            throw std::runtime_error("least_edge_from_vertex: search limit exceeded");
    }
}

EdgeId GraphShiftSystem::least_edge_after(EdgeId last) const {
    RangeSet r = graph_->range(last);
    std::optional<EdgeId> best;
    for (int m : r.emitters) {
        EdgeId e = graph_->emitter_first_edge(m);
        if (!best || e < *best) best = e;
    }
    for (VertexId v : r.finite_vertices) {
        EdgeId e = least_edge_from_vertex(v);
        if (!best || e < *best) best = e;
    }
    if (!best) throw std::logic_error("least_edge_after: empty range");
    return *best;
}

EdgeId GraphShiftSystem::edge_at(const Ultrapath& x, int position) const {
    if (position < x.known_depth()) return x.word[static_cast<std::size_t>(position)];
    switch (x.tail) {
        case TailKind::Emitter:
            throw std::out_of_range("edge_at: past the end of a finite point");
        case TailKind::TruncatedInfinite:
            throw insufficient_depth("edge_at: truncated prefix too short");
        case TailKind::LeastExtension: {
            EdgeId last = x.word.back();
            for (int p = x.known_depth(); p <= position; ++p) last = least_edge_after(last);
            return last;
        }
    }
    throw std::logic_error("edge_at");
}

Ultrapath GraphShiftSystem::shift(const Ultrapath& x) const {
    if (x.word.empty()) {
        if (x.finite_point()) throw length_zero_error("shift: zero-length point");
        throw insufficient_depth("shift: truncated prefix exhausted");
    }
    if (x.tail == TailKind::LeastExtension && x.word.size() == 1) {
        return Ultrapath::least_extended({least_edge_after(x.word.front())});
    }
    Ultrapath out = x;
    out.word.erase(out.word.begin());
    return out;
}

Ultrapath shift_apply(const GraphShiftSystem& sys, const Ultrapath& x) { return sys.shift(x); }

GraphShiftSystem::Fit GraphShiftSystem::initial_segment(const PathElem& p, const Ultrapath& x) const {
    const int np = static_cast<int>(p.word.size());
    // word prefix comparison
    for (int i = 0; i < np; ++i) {
        if (x.finite_point() && i >= x.known_depth()) return Fit::No;
        if (x.tail == TailKind::TruncatedInfinite && i >= x.known_depth()) return Fit::Unknown;
        if (edge_at(x, i) != p.word[static_cast<std::size_t>(i)]) return Fit::No;
    }
    // the constraint after the word: next-edge source in the base, or,
    // for a finite point of equal length, emitter containment
    if (x.finite_point() && x.known_depth() == np) {
        for (const auto& a : p.base)
            if (a.is_emitter && a.emitter == x.emitter) return Fit::Yes;
        return Fit::No;
    }
    if (x.tail == TailKind::TruncatedInfinite && x.known_depth() == np) return Fit::Unknown;
    VertexId src = graph_->source(edge_at(x, np));
    for (const auto& a : p.base) {
        if (a.is_emitter ? graph_->emitter_contains(a.emitter, src) : a.vertex == src)
            return Fit::Yes;
    }
    return Fit::No;
}

namespace {

bool exactly_equal(const Ultrapath& x, const Ultrapath& y) {
    if (x.tail != y.tail) return false;
    if (x.tail == TailKind::TruncatedInfinite) return false; // equality undecidable
    return x.word == y.word && x.emitter == y.emitter;
}

} // namespace

DxResult GraphShiftSystem::metric_dx(const Ultrapath& x, const Ultrapath& y, int enum_budget) const {
    if (exactly_equal(x, y)) return DxResult{DxResult::Kind::Equal, 0, Rational(0)};
    for (int i = 1; i <= enum_budget; ++i) {
        const PathElem& p = enum_->at(i);
        Fit fx = initial_segment(p, x);
        Fit fy = initial_segment(p, y);
        if (fx == Fit::Unknown || fy == Fit::Unknown)
            return DxResult{DxResult::Kind::Undecidable, i, Rational(0)};
        if (fx != fy) return DxResult{DxResult::Kind::Value, i, dyadic(i)};
    }
    return DxResult{DxResult::Kind::UpperBound, enum_budget, dyadic(enum_budget + 1)};
}

Rational GraphShiftSystem::metric_dx_exact(const Ultrapath& x, const Ultrapath& y) const {
    if (exactly_equal(x, y)) return 0;
    for (int budget = 64;; budget *= 4) {
        DxResult r = metric_dx(x, y, budget);
        switch (r.kind) {
            case DxResult::Kind::Equal: return 0;
            case DxResult::Kind::Value: return r.value;
            case DxResult::Kind::Undecidable:
                throw insufficient_depth("metric_dx_exact: truncated point blocks index " +
                                         std::to_string(r.index));
            case DxResult::Kind::UpperBound: break;
        }
        if (budget > 1 << 22) throw std::runtime_error("metric_dx_exact: no separating index found");
    }
}

Rational GraphShiftSystem::edge_metric(const Ultrapath& x, const Ultrapath& y) const {
    if (exactly_equal(x, y)) return 0;
    int lx = x.known_depth();
    int ly = y.known_depth();
    for (int pos = 0;; ++pos) {
        bool x_ends = x.finite_point() && pos >= lx;
        bool y_ends = y.finite_point() && pos >= ly;
        if (x_ends || y_ends) {
            // sequences of different length, or equal words with distinct bases
            if (x_ends && y_ends && x.word == y.word && x.emitter == y.emitter) return 0;
            return dyadic(pos + 1);
        }
        EdgeId ex = edge_at(x, pos);
        EdgeId ey = edge_at(y, pos);
        if (ex != ey) return dyadic(pos + 1);
        if (pos >= std::max(lx, ly) - 1 && x.tail == TailKind::LeastExtension &&
            y.tail == TailKind::LeastExtension) {
            // both continue by the same deterministic rule from equal edges
            return 0;
        }
    }
}

GurevichInterval GraphShiftSystem::gurevich_metric(const Ultrapath& x, const Ultrapath& y,
                                                   int depth) const {
    Rational sum = 0;
    for (int pos = 0; pos < depth; ++pos) {
        Rational hx(1, edge_at(x, pos) + 1);
        Rational hy(1, edge_at(y, pos) + 1);
        sum += abs(hx - hy) * dyadic(pos + 1);
    }
    return GurevichInterval{sum, sum + dyadic(depth)};
}

Rational GraphShiftSystem::base_distance(const Ultrapath& x, const Ultrapath& y) const {
    switch (metric_) {
        case MetricChoice::CanonicalDx:
        case MetricChoice::FullDx: return metric_dx_exact(x, y);
        case MetricChoice::EdgeMetric: return edge_metric(x, y);
    }
    throw std::logic_error("base_distance");
}

// ---------------------------------------------------------------------------
// Representatives
// ---------------------------------------------------------------------------
Representatives representatives(const GraphShiftSystem& sys, int depth, std::int64_t edge_budget) {
    const Ultragraph& g = sys.graph();
    Representatives out;
    out.depth = depth;
    out.edge_budget = edge_budget;

    // zero-length emitter points
    for (int m = 0; m < g->emitter_count(); ++m)
        out.points.push_back(Ultrapath::emitter_point({}, m));

    if (depth >= 1) {
        for (auto& w : admissible_words(g, depth, edge_budget))
            out.points.push_back(Ultrapath::least_extended(std::move(w)));
        for (int len = 1; len <= depth; ++len) {
            for (const auto& w : admissible_words(g, len, edge_budget)) {
                for (int m = 0; m < g->emitter_count(); ++m)
                    if (g->emitter_in_range(m, w.back()))
                        out.points.push_back(Ultrapath::emitter_point(w, m));
            }
        }
    }
    out.delta = dyadic(sys.enumeration().first_index_with_word_length(std::max(depth, 0)));
    return out;
}

// ---------------------------------------------------------------------------
// Modulus table
// ---------------------------------------------------------------------------
ModulusTable modulus_table(const ExactMetric& d_a, const ExactMetric& d_b,
                           const std::vector<std::pair<Ultrapath, Ultrapath>>& samples,
                           int t_min, int t_max) {
    ModulusTable table;
    std::vector<std::pair<Rational, Rational>> dists;
    dists.reserve(samples.size());
    for (const auto& [x, y] : samples) dists.emplace_back(d_a(x, y), d_b(x, y));
    for (int t = t_min; t <= t_max; ++t) {
        ModulusRow row;
        row.t = t;
        Rational delta = dyadic(t);
        for (const auto& [da, db] : dists) {
            if (da < delta) {
                ++row.pairs_in_bucket;
                if (db > row.worst_b) row.worst_b = db;
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace drshift
