#include "drshift/cover_entropy.hpp"

#include "drshift/set_cover.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace drshift {

namespace {

bool base_contains_vertex(const Cylinder& c, const Ultragraph& g, VertexId v) {
    switch (c.base.kind) {
        case CylinderBase::Kind::FullRange:
            if (c.word.empty()) throw std::logic_error("zero-length cylinder with implicit base");
            return g->in_range(c.word.back(), v);
        case CylinderBase::Kind::Vertex: return c.base.vertex == v;
        case CylinderBase::Kind::Emitter: return g->emitter_contains(c.base.emitter, v);
    }
    return false;
}

bool excluded_has(const Cylinder& c, EdgeId e) {
    return std::binary_search(c.excluded.begin(), c.excluded.end(), e);
}

// May the extension part of c start with edge e?
bool extension_admits(const Cylinder& c, const Ultragraph& g, EdgeId e) {
    return !excluded_has(c, e) && base_contains_vertex(c, g, g->source(e));
}

// The base as an explicit RangeSet view (vertex part + emitter part).
RangeSet base_parts(const Cylinder& c, const Ultragraph& g) {
    switch (c.base.kind) {
        case CylinderBase::Kind::FullRange: return g->range(c.word.back());
        case CylinderBase::Kind::Vertex: return RangeSet{{c.base.vertex}, {}};
        case CylinderBase::Kind::Emitter: return RangeSet{{}, {c.base.emitter}};
    }
    return {};
}

bool vertex_has_free_out_edge(const Ultragraph& g, VertexId v, const std::vector<EdgeId>& forbidden) {
    if (g->out_degree(v) == kInfinite) return true;
    for (EdgeId e : g->out_edges(v, -1))
        if (!std::binary_search(forbidden.begin(), forbidden.end(), e)) return true;
    return false;
}

} // namespace

Cylinder make_word_cylinder(std::vector<EdgeId> word) {
    Cylinder c;
    c.word = std::move(word);
    if (c.word.empty()) throw std::invalid_argument("word cylinder needs a nonempty word");
    return c;
}

Cylinder make_excluded_cylinder(std::vector<EdgeId> word, CylinderBase base,
                                std::vector<EdgeId> excluded) {
    Cylinder c;
    c.word = std::move(word);
    c.base = base;
    c.excluded = std::move(excluded);
    std::sort(c.excluded.begin(), c.excluded.end());
    c.excluded.erase(std::unique(c.excluded.begin(), c.excluded.end()), c.excluded.end());
    if (c.word.empty() && c.base.kind == CylinderBase::Kind::FullRange)
        throw std::invalid_argument("zero-length cylinder needs an explicit base");
    return c;
}

Cylinder canonicalize(const Cylinder& input, const Ultragraph& g) {
    Cylinder c = input;
    if (c.base.kind == CylinderBase::Kind::FullRange) {
        RangeSet r = g->range(c.word.back());
        if (r.emitters.empty() && r.finite_vertices.size() == 1)
            c.base = CylinderBase::at_vertex(r.finite_vertices.front());
        else if (r.finite_vertices.empty() && r.emitters.size() == 1)
            c.base = CylinderBase::at_emitter(r.emitters.front());
    }
    std::sort(c.excluded.begin(), c.excluded.end());
    c.excluded.erase(std::unique(c.excluded.begin(), c.excluded.end()), c.excluded.end());
    std::vector<EdgeId> kept;
    for (EdgeId e : c.excluded)
        if (base_contains_vertex(c, g, g->source(e))) kept.push_back(e);
    c.excluded = std::move(kept);
    return c;
}

std::vector<int> contained_emitter_points(const Cylinder& c, const Ultragraph& g) {
    std::vector<int> out;
    for (int m = 0; m < g->emitter_count(); ++m) {
        if (c.word.empty()) {
            if (c.base.kind == CylinderBase::Kind::Emitter && c.base.emitter == m) out.push_back(m);
            continue;
        }
        if (!g->emitter_in_range(m, c.word.back())) continue; // must be minimal in r(word)
        bool inside = c.base.kind == CylinderBase::Kind::FullRange ||
                      (c.base.kind == CylinderBase::Kind::Emitter && c.base.emitter == m);
        if (inside) out.push_back(m);
    }
    return out;
}

bool cylinder_has_extension(const Cylinder& c, const Ultragraph& g) {
    RangeSet parts = base_parts(c, g);
    if (!parts.emitters.empty()) return true; // emitters emit infinitely many, F finite
    for (VertexId v : parts.finite_vertices)
        if (vertex_has_free_out_edge(g, v, c.excluded)) return true;
    return false;
}

bool cylinder_empty(const Cylinder& c, const Ultragraph& g) {
    return contained_emitter_points(c, g).empty() && !cylinder_has_extension(c, g);
}

std::optional<Cylinder> intersect(const Cylinder& raw_a, const Cylinder& raw_b, const Ultragraph& g) {
    Cylinder a = canonicalize(raw_a, g);
    Cylinder b = canonicalize(raw_b, g);
    if (a.word.size() > b.word.size()) std::swap(a, b);
    if (!std::equal(a.word.begin(), a.word.end(), b.word.begin())) return std::nullopt;
    if (a.word.size() < b.word.size()) {
        EdgeId next = b.word[a.word.size()];
        if (!extension_admits(a, g, next)) return std::nullopt;
        if (cylinder_empty(b, g)) return std::nullopt;
        return b;
    }
    // equal words: meet the bases, unite the exclusions
    Cylinder out;
    out.word = a.word;
    out.excluded = a.excluded;
    out.excluded.insert(out.excluded.end(), b.excluded.begin(), b.excluded.end());
    const auto ka = a.base.kind;
    const auto kb = b.base.kind;
    using K = CylinderBase::Kind;
    if (ka == K::FullRange) {
        out.base = b.base;
    } else if (kb == K::FullRange) {
        out.base = a.base;
    } else if (ka == K::Vertex && kb == K::Vertex) {
        if (a.base.vertex != b.base.vertex) return std::nullopt;
        out.base = a.base;
    } else if (ka == K::Emitter && kb == K::Emitter) {
        if (a.base.emitter != b.base.emitter) return std::nullopt; // distinct minimal emitters are disjoint
        out.base = a.base;
    } else {
        const auto& vx = ka == K::Vertex ? a.base : b.base;
        const auto& em = ka == K::Emitter ? a.base : b.base;
        if (!g->emitter_contains(em.emitter, vx.vertex)) return std::nullopt;
        out.base = vx;
    }
    out = canonicalize(out, g);
    if (cylinder_empty(out, g)) return std::nullopt;
    return out;
}

std::vector<Cylinder> pullback_cylinder(const Cylinder& raw, const Ultragraph& g) {
    Cylinder c = canonicalize(raw, g);
    std::vector<Cylinder> out;
    if (!c.word.empty()) {
        auto heads = g->edges_into(g->source(c.word.front()));
        if (!heads)
            throw unbounded_preimage("pullback: infinitely many edges into " +
                                     g->vertex_name(g->source(c.word.front())));
        for (EdgeId h : *heads) {
            Cylinder part;
            part.word.reserve(c.word.size() + 1);
            part.word.push_back(h);
            part.word.insert(part.word.end(), c.word.begin(), c.word.end());
            part.base = c.base;
            part.excluded = c.excluded;
            out.push_back(std::move(part));
        }
        return out;
    }
    if (c.base.kind == CylinderBase::Kind::Vertex) {
        // finite expansion into first-edge cylinders, then their preimages
        VertexId v = c.base.vertex;
        if (g->out_degree(v) == kInfinite)
            throw unbounded_preimage("pullback: vertex cylinder with infinite emission");
        for (EdgeId e : g->out_edges(v, -1)) {
            if (excluded_has(c, e)) continue;
            for (Cylinder& part : pullback_cylinder(make_word_cylinder({e}), g))
                out.push_back(std::move(part));
        }
        return out;
    }
    auto form = g->emitter_preimage_form(c.base.emitter, c.excluded);
    if (!form)
        throw unbounded_preimage("pullback: no closed form for the emitter cylinder preimage");
    for (EdgeId h : form->subset_heads) {
        Cylinder part;
        part.word = {h};
        part.base = CylinderBase::at_emitter(c.base.emitter);
        part.excluded = c.excluded;
        out.push_back(std::move(part));
    }
    Cylinder residual;
    residual.base = CylinderBase::at_emitter(c.base.emitter);
    residual.excluded = form->excluded_after;
    out.push_back(std::move(residual));
    return out;
}

// ---------------------------------------------------------------------------
// Cover operations
// ---------------------------------------------------------------------------
namespace {

CoverMember canonical_member(CoverMember m, const Ultragraph& g) {
    std::vector<Cylinder> parts;
    for (auto& p : m.parts) {
        Cylinder c = canonicalize(p, g);
        if (!cylinder_empty(c, g)) parts.push_back(std::move(c));
    }
    std::sort(parts.begin(), parts.end());
    parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
    return CoverMember{std::move(parts)};
}

std::vector<Cylinder> intersect_part_lists(const std::vector<Cylinder>& a,
                                           const std::vector<Cylinder>& b, const Ultragraph& g) {
    std::vector<Cylinder> out;
    for (const auto& pa : a)
        for (const auto& pb : b)
            if (auto c = intersect(pa, pb, g)) out.push_back(std::move(*c));
    return out;
}

} // namespace

Cover join(const Cover& a, const Cover& b, const Ultragraph& g) {
    Cover out;
    out.carrier.whole_space = a.carrier.whole_space && b.carrier.whole_space;
    out.carrier.min_length = std::max(a.carrier.min_length, b.carrier.min_length);
    if (!a.carrier.whole_space && !b.carrier.whole_space)
        out.carrier.parts = intersect_part_lists(a.carrier.parts, b.carrier.parts, g);
    else if (!a.carrier.whole_space)
        out.carrier.parts = a.carrier.parts;
    else if (!b.carrier.whole_space)
        out.carrier.parts = b.carrier.parts;
    for (const auto& ma : a.members) {
        for (const auto& mb : b.members) {
            CoverMember m{intersect_part_lists(ma.parts, mb.parts, g)};
            m = canonical_member(std::move(m), g);
            if (!m.parts.empty() &&
                std::find(out.members.begin(), out.members.end(), m) == out.members.end())
                out.members.push_back(std::move(m));
        }
    }
    return out;
}

Cover pullback(const Cover& a, const Ultragraph& g) {
    Cover out;
    out.carrier = a.carrier;
    out.carrier.min_length = a.carrier.min_length + 1;
    if (!a.carrier.whole_space) {
        std::vector<Cylinder> parts;
        for (const auto& p : a.carrier.parts)
            for (Cylinder& q : pullback_cylinder(p, g)) parts.push_back(std::move(q));
        out.carrier.parts = std::move(parts);
    }
    for (const auto& m : a.members) {
        CoverMember pm;
        for (const auto& part : m.parts)
            for (Cylinder& q : pullback_cylinder(part, g)) pm.parts.push_back(std::move(q));
        pm = canonical_member(std::move(pm), g);
        out.members.push_back(std::move(pm));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Atom decomposition for the exact general subcover count.
// ---------------------------------------------------------------------------
namespace {

struct Atom {
    enum class Kind { Point, Word, Remainder } kind;
    std::vector<EdgeId> word;
    int emitter = -1;        // Point: the emitter; Remainder: class emitter (or -1)
    VertexId vertex = -1;    // Remainder vertex class
};

struct AtomUniverse {
    std::vector<Atom> atoms;
    std::vector<EdgeId> play; // sorted edges in play
};

bool edge_in_play(const std::vector<EdgeId>& play, EdgeId e) {
    return std::binary_search(play.begin(), play.end(), e);
}

// admissible words over exactly the given edge set
void play_words_rec(const Ultragraph& g, const std::vector<EdgeId>& play, int remaining,
                    std::vector<EdgeId>& word, std::vector<std::vector<EdgeId>>& out) {
    if (remaining == 0) {
        out.push_back(word);
        return;
    }
    for (EdgeId e : play) {
        if (!word.empty() && !admissible_step(g, word.back(), e)) continue;
        word.push_back(e);
        play_words_rec(g, play, remaining - 1, word, out);
        word.pop_back();
    }
}

std::vector<std::vector<EdgeId>> play_words(const Ultragraph& g, const std::vector<EdgeId>& play,
                                            int length) {
    std::vector<std::vector<EdgeId>> out;
    std::vector<EdgeId> word;
    play_words_rec(g, play, length, word, out);
    return out;
}

// Vertex classes to split at a given word: the finite part of the follow
// range plus every vertex base mentioned by a same-word cylinder.
std::vector<VertexId> split_vertices_at(const std::vector<EdgeId>& w,
                                        const std::vector<const Cylinder*>& cyls,
                                        const Ultragraph& g, bool& infinite_unsupported) {
    std::set<VertexId> vs;
    if (!w.empty()) {
        RangeSet r = g->range(w.back());
        for (VertexId v : r.finite_vertices) vs.insert(v);
    } else {
        if (g->vertex_count() == kInfinite) {
            // only emitter bases are supported at the empty word here
            for (const Cylinder* c : cyls)
                if (c->word.empty() && c->base.kind != CylinderBase::Kind::Emitter)
                    infinite_unsupported = true;
        } else {
            for (VertexId v = 0; v < g->vertex_count(); ++v) vs.insert(v);
        }
    }
    for (const Cylinder* c : cyls)
        if (c->word == w && c->base.kind == CylinderBase::Kind::Vertex) vs.insert(c->base.vertex);
    return {vs.begin(), vs.end()};
}

std::vector<int> emitters_at(const std::vector<EdgeId>& w, const Ultragraph& g) {
    std::vector<int> out;
    if (!w.empty()) {
        for (int m : g->range(w.back()).emitters) out.push_back(m);
    } else {
        for (int m = 0; m < g->emitter_count(); ++m) out.push_back(m);
    }
    return out;
}

// Does the atom lie inside the cylinder? Atoms are built fine enough that the
// answer is never "partially".
bool atom_in_cylinder(const Atom& atom, const Cylinder& c, const Ultragraph& g,
                      const std::vector<EdgeId>& /*play*/,
                      const std::vector<VertexId>& split_at_word) {
    const std::size_t wc = c.word.size();
    const std::size_t wa = atom.word.size();
    if (atom.kind == Atom::Kind::Point) {
        if (wa < wc) return false;
        if (!std::equal(c.word.begin(), c.word.end(), atom.word.begin())) return false;
        if (wa == wc) {
            if (c.word.empty())
                return c.base.kind == CylinderBase::Kind::Emitter && c.base.emitter == atom.emitter;
            if (!g->emitter_in_range(atom.emitter, c.word.back())) return false;
            return c.base.kind == CylinderBase::Kind::FullRange ||
                   (c.base.kind == CylinderBase::Kind::Emitter && c.base.emitter == atom.emitter);
        }
        return extension_admits(c, g, atom.word[wc]);
    }
    if (wa < wc) return false; // longer cylinder words use play edges only; see below
    if (!std::equal(c.word.begin(), c.word.end(), atom.word.begin())) return false;
    if (wa > wc) return extension_admits(c, g, atom.word[wc]);
    // equal words; the atom continues with non-play edges from its class
    if (atom.kind == Atom::Kind::Word) throw std::logic_error("word atom not longer than cylinder");
    if (atom.vertex >= 0) return base_contains_vertex(c, g, atom.vertex);
    // emitter class minus the split vertices
    (void)split_at_word;
    switch (c.base.kind) {
        case CylinderBase::Kind::Emitter: return c.base.emitter == atom.emitter;
        case CylinderBase::Kind::Vertex: return false;
        case CylinderBase::Kind::FullRange: {
            RangeSet r = g->range(c.word.back());
            return std::find(r.emitters.begin(), r.emitters.end(), atom.emitter) != r.emitters.end();
        }
    }
    return false;
}

bool remainder_nonempty(const Atom& atom, const Ultragraph& g, const std::vector<EdgeId>& play,
                        const std::vector<VertexId>& split_vertices) {
    if (atom.vertex >= 0) {
        if (g->out_degree(atom.vertex) == kInfinite) return true;
        for (EdgeId e : g->out_edges(atom.vertex, -1))
            if (!edge_in_play(play, e)) return true;
        return false;
    }
    // emitter class minus split vertices: scan the emitted stream
    std::int64_t limit = static_cast<std::int64_t>(play.size() + split_vertices.size()) * 4 + 64;
    for (int rounds = 0; rounds < 8; ++rounds, limit *= 4) {
        for (EdgeId e : g->emitter_edges(atom.emitter, limit)) {
            if (edge_in_play(play, e)) continue;
            VertexId s = g->source(e);
            if (std::find(split_vertices.begin(), split_vertices.end(), s) != split_vertices.end())
                continue;
            return true;
        }
        std::int64_t total = g->edge_count();
        if (total != kInfinite && limit >= total) return false;
    }
    throw budget_exceeded("remainder_nonempty: emitter scan did not settle");
}

AtomUniverse atomize(const std::vector<const Cylinder*>& cyls, const Ultragraph& g,
                     int atom_budget) {
    AtomUniverse u;
    std::set<EdgeId> play_set;
    std::size_t max_len = 0;
    bool has_empty_word = false;
    for (const Cylinder* c : cyls) {
        max_len = std::max(max_len, c->word.size());
        has_empty_word = has_empty_word || c->word.empty();
        for (EdgeId e : c->word) play_set.insert(e);
        for (EdgeId e : c->excluded) play_set.insert(e);
    }
    u.play.assign(play_set.begin(), play_set.end());

    // prefix words of every length up to max_len (+1 for the word atoms)
    for (int len = has_empty_word ? 0 : 1; len <= static_cast<int>(max_len); ++len) {
        for (auto& w : play_words(g, u.play, len)) {
            bool infinite_unsupported = false;
            auto splits = split_vertices_at(w, cyls, g, infinite_unsupported);
            if (infinite_unsupported)
                throw budget_exceeded("atomize: vertex cylinder at length zero over an infinite graph");
            // point atoms
            for (int m = 0; m < g->emitter_count(); ++m) {
                if (!w.empty() && !g->emitter_in_range(m, w.back())) continue;
                u.atoms.push_back(Atom{Atom::Kind::Point, w, m, -1});
            }
            // remainder atoms
            for (VertexId v : splits) {
                if (!w.empty() && !g->in_range(w.back(), v)) continue;
                Atom a{Atom::Kind::Remainder, w, -1, v};
                if (remainder_nonempty(a, g, u.play, {})) u.atoms.push_back(std::move(a));
            }
            for (int m : emitters_at(w, g)) {
                Atom a{Atom::Kind::Remainder, w, m, -1};
                if (remainder_nonempty(a, g, u.play, splits)) u.atoms.push_back(std::move(a));
            }
            if (static_cast<int>(u.atoms.size()) > atom_budget)
                throw budget_exceeded("atomize: atom budget exceeded");
        }
    }
    for (auto& w : play_words(g, u.play, static_cast<int>(max_len) + 1)) {
        u.atoms.push_back(Atom{Atom::Kind::Word, w, -1, -1});
        if (static_cast<int>(u.atoms.size()) > atom_budget)
            throw budget_exceeded("atomize: atom budget exceeded");
    }
    return u;
}

bool atom_in_member(const Atom& atom, const CoverMember& m, const Ultragraph& g,
                    const AtomUniverse& u) {
    for (const auto& part : m.parts)
        if (atom_in_cylinder(atom, part, g, u.play, {})) return true;
    return false;
}

bool atom_meets_carrier(const Atom& atom, const Carrier& carrier, const Ultragraph& g,
                        const AtomUniverse& u) {
    if (atom.kind == Atom::Kind::Point &&
        static_cast<int>(atom.word.size()) < carrier.min_length)
        return false;
    if (carrier.whole_space) return true;
    for (const auto& part : carrier.parts)
        if (atom_in_cylinder(atom, part, g, u.play, {})) return true;
    return false;
}

} // namespace

SubcoverCount minimal_subcover_count(const Cover& cover, const Ultragraph& g, int atom_budget) {
    SubcoverCount out;
    std::vector<CoverMember> members;
    for (const auto& m : cover.members) {
        CoverMember cm = canonical_member(m, g);
        if (!cm.parts.empty()) members.push_back(std::move(cm));
    }
    // pairwise disjointness
    bool disjoint = true;
    for (std::size_t i = 0; i < members.size() && disjoint; ++i)
        for (std::size_t j = i + 1; j < members.size() && disjoint; ++j)
            for (const auto& pa : members[i].parts)
                for (const auto& pb : members[j].parts)
                    if (intersect(pa, pb, g)) {
                        disjoint = false;
                        goto disjoint_done;
                    }
disjoint_done:
    if (disjoint) {
        // every member that meets the carrier is the only one covering its own
        // piece, so all of them are forced
        out.disjoint_fast_path = true;
        auto piece_meets = [&](const Cylinder& c) {
            if (cylinder_has_extension(c, g)) return true; // arbitrarily long points inside
            return !contained_emitter_points(c, g).empty() &&
                   static_cast<int>(c.word.size()) >= cover.carrier.min_length;
        };
        BigInt n = 0;
        for (const auto& m : members) {
            bool meets = false;
            for (const auto& part : m.parts) {
                if (cover.carrier.whole_space) {
                    meets = meets || piece_meets(part);
                } else {
                    for (const auto& cp : cover.carrier.parts) {
                        auto clipped = intersect(part, cp, g);
                        if (clipped && piece_meets(*clipped)) meets = true;
                    }
                }
            }
            if (meets) n += 1;
        }
        out.n = n;
        return out;
    }

    std::vector<const Cylinder*> cyls;
    for (const auto& m : members)
        for (const auto& p : m.parts) cyls.push_back(&p);
    for (const auto& p : cover.carrier.parts) cyls.push_back(&p);
    AtomUniverse universe = atomize(cyls, g, atom_budget);

    std::vector<int> live; // atoms meeting the carrier
    for (int a = 0; a < static_cast<int>(universe.atoms.size()); ++a)
        if (atom_meets_carrier(universe.atoms[static_cast<std::size_t>(a)], cover.carrier, g, universe))
            live.push_back(a);
    std::vector<BlockSet> sets(members.size());
    BlockSet covered = make_blockset(static_cast<int>(live.size()));
    for (std::size_t mi = 0; mi < members.size(); ++mi) {
        sets[mi] = make_blockset(static_cast<int>(live.size()));
        for (std::size_t li = 0; li < live.size(); ++li) {
            if (atom_in_member(universe.atoms[static_cast<std::size_t>(live[li])], members[mi], g,
                               universe)) {
                bs_set(sets[mi], static_cast<int>(li));
                bs_set(covered, static_cast<int>(li));
            }
        }
    }
    if (bs_count(covered) != static_cast<int>(live.size()))
        throw std::invalid_argument("minimal_subcover_count: members do not cover the carrier");
    SetCoverResult cover_result = exact_set_cover(sets, static_cast<int>(live.size()));
    if (!cover_result.exact) throw budget_exceeded("minimal_subcover_count: search budget exceeded");
    out.n = cover_result.cardinality;
    out.atoms = static_cast<int>(live.size());
    return out;
}

bool member_contains_point(const CoverMember& m, const Ultrapath& x, const GraphShiftSystem& sys) {
    const Ultragraph& g = sys.graph();
    for (const auto& part : m.parts) {
        const std::size_t wc = part.word.size();
        if (x.finite_point() && x.word.size() < wc) continue;
        bool prefix = true;
        for (std::size_t i = 0; i < wc && prefix; ++i)
            prefix = sys.edge_at(x, static_cast<int>(i)) == part.word[i];
        if (!prefix) continue;
        if (x.finite_point() && x.word.size() == wc) {
            auto pts = contained_emitter_points(part, g);
            if (std::find(pts.begin(), pts.end(), x.emitter) != pts.end()) return true;
            continue;
        }
        if (extension_admits(part, g, sys.edge_at(x, static_cast<int>(wc)))) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Cover families
// ---------------------------------------------------------------------------
Cover word_cover(const Ultragraph& g, int depth) {
    if (depth < 1) throw std::invalid_argument("word_cover: depth must be >= 1");
    if (g->edge_count() == kInfinite)
        throw std::invalid_argument("word_cover: finite graphs only");
    Cover cover;
    cover.shape = Cover::Shape::WordCover;
    cover.word_depth = depth;
    for (auto& w : admissible_words(g, depth, g->edge_count()))
        cover.members.push_back(CoverMember{{make_word_cylinder(std::move(w))}});
    return cover;
}

RenewalCover renewal_cover(int m) {
    if (m < 1) throw std::invalid_argument("renewal_cover: m must be >= 1");
    RenewalCover out;
    Ultragraph g = make_renewal();
    // F = {e, f_1..f_m} = edge ids 0..m
    for (EdgeId e = 0; e <= m; ++e) out.excluded_set.push_back(e);
    // admissible words over F
    for (int len = 1; len < m; ++len)
        for (auto& w : admissible_words(g, len, m + 1))
            if (w.back() == 0) out.q_set.push_back(std::move(w));
    out.r_set = admissible_words(g, m, m + 1);

    Cover cover;
    cover.shape = Cover::Shape::RenewalCover;
    cover.renewal_m = m;
    cover.members.push_back(CoverMember{{make_excluded_cylinder(
        {}, CylinderBase::at_emitter(0), out.excluded_set)}});
    for (const auto& b : out.q_set)
        cover.members.push_back(CoverMember{{make_excluded_cylinder(
            b, CylinderBase::full(), out.excluded_set)}});
    for (const auto& r : out.r_set)
        cover.members.push_back(CoverMember{{make_word_cylinder(r)}});
    out.member_count = BigInt(1) + out.q_set.size() + out.r_set.size();
    out.cover = std::move(cover);
    return out;
}

// ---------------------------------------------------------------------------
// cover_entropy_estimate
// ---------------------------------------------------------------------------
namespace {

FeketeSequence finish_sequence(std::vector<BigInt> counts) {
    FeketeSequence seq;
    seq.counts = std::move(counts);
    for (const auto& c : seq.counts) seq.values.push_back(log_big(c));
    double inf = 0;
    for (std::size_t n = 1; n < seq.counts.size(); ++n) {
        double r = seq.values[n] / static_cast<double>(n);
        seq.ratios.push_back(r);
        inf = n == 1 ? r : std::min(inf, r);
        seq.running_inf.push_back(inf);
    }
    for (std::size_t n = 1; n < seq.counts.size(); ++n)
        for (std::size_t m = 1; m + n < seq.counts.size(); ++m)
            if (seq.counts[n + m] > seq.counts[n] * seq.counts[m]) seq.subadditive = false;
    return seq;
}

// Compact engine for single-cylinder pairwise-disjoint covers whose pullback
// parts refine the base cover member-for-member (the renewal covers and the
// word covers). Nodes carry only what the refinement test needs.
struct FastEngine {
    const Ultragraph& g;
    const Cover& alpha;
    int renewal_m = -1; // >= 1 for the renewal shape

    // node columns, all levels concatenated
    std::vector<std::int32_t> parent;
    std::vector<std::int8_t> first_edge; // -1 for the residual emitter node
    std::vector<std::int8_t> ftag;       // exclusion prefix length, 0 = none
    std::vector<std::int32_t> root;      // alpha member index of the level-0 ancestor
    std::vector<std::size_t> level_begin;

    std::vector<std::vector<EdgeId>> root_words;

    explicit FastEngine(const Ultragraph& graph, const Cover& a) : g(graph), alpha(a) {
        if (a.shape == Cover::Shape::RenewalCover) renewal_m = a.renewal_m;
        level_begin.push_back(0);
        for (std::size_t i = 0; i < a.members.size(); ++i) {
            const Cylinder& c = a.members[i].parts.at(0);
            root_words.push_back(c.word);
            parent.push_back(-1);
            first_edge.push_back(c.word.empty() ? -1 : static_cast<std::int8_t>(c.word.front()));
            ftag.push_back(static_cast<std::int8_t>(c.excluded.size())); // initial segment 0..f-1
            root.push_back(static_cast<std::int32_t>(i));
            for (std::size_t k = 0; k < c.excluded.size(); ++k)
                if (c.excluded[k] != static_cast<EdgeId>(k))
                    throw std::logic_error("fast engine: exclusions must be an id prefix");
        }
        level_begin.push_back(parent.size());
    }

    std::size_t level_count() const { return level_begin.size() - 1; }
    std::size_t level_size(std::size_t n) const { return level_begin[n + 1] - level_begin[n]; }

    // word of a node, newest edges first, truncated to max_len
    std::vector<EdgeId> word_prefix(std::size_t node, std::size_t max_len) const {
        std::vector<EdgeId> w;
        std::size_t cur = node;
        while (parent[cur] >= 0 && w.size() < max_len) {
            if (first_edge[cur] >= 0) w.push_back(first_edge[cur]);
            cur = static_cast<std::size_t>(parent[cur]);
        }
        if (w.size() < max_len) {
            const auto& rw = root_words[static_cast<std::size_t>(root[cur])];
            for (EdgeId e : rw) {
                if (w.size() >= max_len) break;
                w.push_back(e);
            }
        }
        return w;
    }

    void advance(std::int64_t member_budget) {
        std::size_t n = level_count() - 1;
        std::size_t lo = level_begin[n], hi = level_begin[n + 1];
        for (std::size_t i = lo; i < hi; ++i) {
            if (first_edge[i] < 0) {
                // residual emitter node: one subset head plus the next residual
                auto form = g->emitter_preimage_form(0, exclusion_prefix(ftag[i]));
                if (!form) throw unbounded_preimage("fast engine: no emitter preimage form");
                for (EdgeId h : form->subset_heads) {
                    parent.push_back(static_cast<std::int32_t>(i));
                    first_edge.push_back(static_cast<std::int8_t>(h));
                    ftag.push_back(ftag[i]);
                    root.push_back(root[i]);
                }
                if (static_cast<EdgeId>(form->excluded_after.size()) !=
                        static_cast<EdgeId>(ftag[i]) + 1 ||
                    form->excluded_after.back() != static_cast<EdgeId>(ftag[i]))
                    throw std::logic_error("fast engine: residual exclusion is not a prefix");
                parent.push_back(static_cast<std::int32_t>(i));
                first_edge.push_back(-1);
                ftag.push_back(static_cast<std::int8_t>(ftag[i] + 1));
                root.push_back(root[i]);
            } else {
                auto heads = g->edges_into(g->source(first_edge[i]));
                if (!heads) throw unbounded_preimage("fast engine: unbounded preimage");
                for (EdgeId h : *heads) {
                    parent.push_back(static_cast<std::int32_t>(i));
                    first_edge.push_back(static_cast<std::int8_t>(h));
                    ftag.push_back(ftag[i]);
                    root.push_back(root[i]);
                }
            }
            if (static_cast<std::int64_t>(parent.size()) > member_budget)
                throw budget_exceeded("fast engine: member budget exceeded");
        }
        level_begin.push_back(parent.size());
    }

    static std::vector<EdgeId> exclusion_prefix(std::int8_t f) {
        std::vector<EdgeId> out;
        for (EdgeId e = 0; e < f; ++e) out.push_back(e);
        return out;
    }

    // Refinement check: the node's cylinder must lie inside exactly one alpha
    // member. Verified for every node of small levels, strided beyond.
    void verify_level(std::size_t n, std::size_t full_limit = 50'000) const {
        std::size_t lo = level_begin[n], hi = level_begin[n + 1];
        std::size_t stride = hi - lo <= full_limit ? 1 : (hi - lo) / 1024;
        std::size_t max_word = 1;
        for (const auto& rw : root_words) max_word = std::max(max_word, rw.size() + 1);
        for (std::size_t i = lo; i < hi; i += stride) {
            int matches = 0;
            if (first_edge[i] < 0) {
                ++matches; // the residual refines the emitter member by construction
            } else {
                auto w = word_prefix(i, max_word);
                for (std::size_t mi = 0; mi < alpha.members.size(); ++mi) {
                    const Cylinder& c = alpha.members[mi].parts.at(0);
                    if (c.word.size() > w.size()) continue;
                    if (!std::equal(c.word.begin(), c.word.end(), w.begin())) continue;
                    if (c.word.size() == w.size()) {
                        // node word no longer than the member word: exclusions
                        // must dominate for the intersection to be the node
                        if (ftag[i] >= static_cast<std::int8_t>(c.excluded.size())) ++matches;
                        continue;
                    }
                    EdgeId next = w[c.word.size()];
                    if (std::find(c.excluded.begin(), c.excluded.end(), next) == c.excluded.end())
                        ++matches;
                }
            }
            if (matches != 1)
                throw std::logic_error("fast engine: refinement check failed (matches = " +
                                       std::to_string(matches) + ")");
        }
    }
};

} // namespace

CoverEntropyResult cover_entropy_estimate(const Cover& alpha, const GraphShiftSystem& sys,
                                          int n_max, std::int64_t member_budget) {
    const Ultragraph& g = sys.graph();
    std::vector<BigInt> counts;

    if (alpha.shape == Cover::Shape::WordCover && g->edge_count() != kInfinite && g->is_graph()) {
        // every alpha_n member is one word cylinder of length depth + n, all
        // nonempty and pairwise disjoint, so N is the path count
        FiniteGraph fg = finite_subgraph(g, g->edge_count());
        for (int n = 0; n <= n_max; ++n)
            counts.push_back(count_paths(fg, alpha.word_depth + n).count);
    } else if (alpha.shape == Cover::Shape::RenewalCover) {
        FastEngine engine(g, alpha);
        engine.verify_level(0);
        counts.push_back(BigInt(engine.level_size(0)));
        for (int n = 1; n <= n_max; ++n) {
            engine.advance(member_budget);
            engine.verify_level(static_cast<std::size_t>(n));
            counts.push_back(BigInt(engine.level_size(static_cast<std::size_t>(n))));
        }
    } else {
        Cover current = alpha;
        counts.push_back(minimal_subcover_count(current, g).n);
        for (int n = 1; n <= n_max; ++n) {
            current = join(alpha, pullback(current, g), g);
            std::int64_t parts = 0;
            for (const auto& m : current.members) parts += static_cast<std::int64_t>(m.parts.size());
            if (parts > member_budget) throw budget_exceeded("cover_entropy_estimate: member budget");
            counts.push_back(minimal_subcover_count(current, g).n);
        }
    }

    CoverEntropyResult result;
    result.sequence = finish_sequence(std::move(counts));
    result.estimate = result.sequence.estimate();
    return result;
}

// ---------------------------------------------------------------------------
// Diameters
// ---------------------------------------------------------------------------
namespace {

struct FitSpread {
    bool yes = false;
    bool no = false;
};

bool atom_fits_source(const Ultragraph& g, const BaseAtom& a, VertexId src) {
    return a.is_emitter ? g->emitter_contains(a.emitter, src) : a.vertex == src;
}

// existence of an extension edge of c whose source the element accepts /
// rejects
FitSpread extension_spread(const Cylinder& c, const PathElem& p, const Ultragraph& g) {
    FitSpread spread;
    RangeSet parts = base_parts(c, g);
    for (VertexId v : parts.finite_vertices) {
        if (!vertex_has_free_out_edge(g, v, c.excluded)) continue;
        bool in = false;
        for (const auto& a : p.base) in = in || atom_fits_source(g, a, v);
        (in ? spread.yes : spread.no) = true;
    }
    for (int m : parts.emitters) {
        // accepted sources: an emitter atom equal to m covers the whole part
        for (const auto& a : p.base) {
            if (a.is_emitter && a.emitter == m) spread.yes = true;
            if (!a.is_emitter && g->emitter_contains(m, a.vertex) &&
                vertex_has_free_out_edge(g, a.vertex, c.excluded))
                spread.yes = true;
        }
        if (!spread.no) {
            // a source in the emitter missed by every atom of p
            std::int64_t limit = 64;
            for (int rounds = 0; rounds < 10 && !spread.no; ++rounds, limit *= 4) {
                for (EdgeId e : g->emitter_edges(m, limit)) {
                    if (std::binary_search(c.excluded.begin(), c.excluded.end(), e)) continue;
                    VertexId s = g->source(e);
                    bool in = false;
                    for (const auto& a : p.base) in = in || atom_fits_source(g, a, s);
                    if (!in) {
                        spread.no = true;
                        break;
                    }
                }
                std::int64_t total = g->edge_count();
                if (total != kInfinite && limit >= total) break;
            }
        }
    }
    return spread;
}

FitSpread elem_vs_cylinder(const PathElem& p, const Cylinder& c, const GraphShiftSystem& sys) {
    const Ultragraph& g = sys.graph();
    FitSpread spread;
    const std::size_t wp = p.word.size();
    const std::size_t wc = c.word.size();
    const std::size_t common = std::min(wp, wc);
    if (!std::equal(p.word.begin(), p.word.begin() + static_cast<std::ptrdiff_t>(common),
                    c.word.begin())) {
        spread.no = !cylinder_empty(c, g);
        return spread;
    }
    if (wp <= wc) {
        if (cylinder_empty(c, g)) return spread;
        if (wp < wc) {
            bool fit = false;
            VertexId src = g->source(c.word[wp]);
            for (const auto& a : p.base) fit = fit || atom_fits_source(g, a, src);
            (fit ? spread.yes : spread.no) = true;
            return spread;
        }
        // equal words: base points and first-extension split
        for (int m : contained_emitter_points(c, g)) {
            bool fit = false;
            for (const auto& a : p.base) fit = fit || (a.is_emitter && a.emitter == m);
            (fit ? spread.yes : spread.no) = true;
        }
        FitSpread ext = extension_spread(c, p, g);
        spread.yes = spread.yes || ext.yes;
        spread.no = spread.no || ext.no;
        return spread;
    }
    // p's word extends c's: points continuing along p.word may fit; any other
    // point of c does not
    EdgeId next = p.word[wc];
    if (!extension_admits(c, g, next)) {
        spread.no = !cylinder_empty(c, g);
        return spread;
    }
    if (!contained_emitter_points(c, g).empty()) spread.no = true;
    // other admissible first steps
    {
        Cylinder probe = c;
        probe.excluded.push_back(next);
        std::sort(probe.excluded.begin(), probe.excluded.end());
        if (cylinder_has_extension(probe, g)) spread.no = true;
    }
    Cylinder deeper;
    deeper.word = c.word;
    deeper.word.push_back(next);
    deeper.base = CylinderBase::full();
    FitSpread sub = elem_vs_cylinder(p, deeper, sys);
    spread.yes = spread.yes || sub.yes;
    spread.no = spread.no || sub.no;
    return spread;
}

} // namespace

MemberDiameter member_diameter(const CoverMember& m, const GraphShiftSystem& sys, int index_cap) {
    const Ultragraph& g = sys.graph();
    // single-point members have diameter zero
    int point_count = 0;
    bool extensions = false;
    for (const auto& part : m.parts) {
        point_count += static_cast<int>(contained_emitter_points(part, g).size());
        extensions = extensions || cylinder_has_extension(part, g);
    }
    if (!extensions && point_count <= 1) return MemberDiameter{true, 0, Rational(0)};

    for (int i = 1; i <= index_cap; ++i) {
        FitSpread total;
        for (const auto& part : m.parts) {
            FitSpread s = elem_vs_cylinder(sys.enumeration().at(i), part, sys);
            total.yes = total.yes || s.yes;
            total.no = total.no || s.no;
        }
        if (total.yes && total.no) return MemberDiameter{false, i, dyadic(i)};
    }
    throw budget_exceeded("member_diameter: no separating index within the cap");
}

Rational cover_diameter(const Cover& cover, const GraphShiftSystem& sys, int index_cap) {
    Rational best = 0;
    for (const auto& m : cover.members) {
        MemberDiameter d = member_diameter(m, sys, index_cap);
        if (!d.single_point && d.diameter > best) best = d.diameter;
    }
    return best;
}

std::vector<DiamScheduleEntry> diam_zero_schedule(const GraphShiftSystem& sys,
                                                  const std::vector<int>& depths) {
    const Ultragraph& g = sys.graph();
    std::vector<DiamScheduleEntry> out;
    for (int depth : depths) {
        DiamScheduleEntry entry;
        if (g->family_name() == "renewal")
            entry.cover = renewal_cover(depth).cover;
        else
            entry.cover = word_cover(g, depth);
        entry.diameter = cover_diameter(entry.cover, sys);
        out.push_back(std::move(entry));
    }
    for (std::size_t i = 1; i < out.size(); ++i)
        if (!(out[i].diameter < out[i - 1].diameter))
            throw std::logic_error("diam_zero_schedule: diameters are not strictly decreasing");
    return out;
}

// ---------------------------------------------------------------------------
// Lemma verification
// ---------------------------------------------------------------------------
CoverLemmaReport verify_cover_lemmas(const GraphShiftSystem& sys) {
    CoverLemmaReport report;
    const Ultragraph& g = sys.graph();
    auto fail = [&](const std::string& what) {
        report.ok = false;
        if (report.failure.empty()) report.failure = what;
    };
    auto note = [&](const std::string& what) { report.checks.push_back(what); };

    Cover alpha = word_cover(g, 1);
    Cover beta = word_cover(g, 2);

    // N(alpha v beta, Y cap Z) <= N(alpha, Y) N(beta, Z)
    {
        Cover joined = join(alpha, beta, g);
        BigInt lhs = minimal_subcover_count(joined, g).n;
        BigInt rhs = minimal_subcover_count(alpha, g).n * minimal_subcover_count(beta, g).n;
        if (lhs > rhs) fail("join count bound violated");
        note("join: N = " + lhs.str() + " <= " + rhs.str());
    }

    // pullback pushes counts down: N(sigma^{-1}(alpha), sigma^{-1}(Y)) <= N(alpha, Y)
    {
        Cover pulled = pullback(alpha, g);
        BigInt lhs = minimal_subcover_count(pulled, g).n;
        BigInt rhs = minimal_subcover_count(alpha, g).n;
        if (lhs > rhs) fail("pullback count bound violated");
        note("pullback: N = " + lhs.str() + " <= " + rhs.str());
    }

    // submultiplicativity along the alpha_n chain
    {
        CoverEntropyResult run = cover_entropy_estimate(alpha, sys, 6);
        if (!run.sequence.subadditive) fail("alpha_n counts are not submultiplicative");
        note("alpha_n submultiplicative over 6 levels");
    }

    // carrier monotonicity: Y inside Z forces N(beta_n, Y_n) <= N(beta_n, Z_n)
    {
        auto first_edges = g->out_edges(g->source(0), 2);
        Cover narrow = beta;
        narrow.carrier.whole_space = false;
        narrow.carrier.parts = {make_word_cylinder({first_edges.front()})};
        Cover wide = beta;
        BigInt lhs = minimal_subcover_count(narrow, g).n;
        BigInt rhs = minimal_subcover_count(wide, g).n;
        if (lhs > rhs) fail("carrier monotonicity violated");
        note("carriers: N = " + lhs.str() + " <= " + rhs.str());
    }

    // a subcover never reports smaller counts: alpha subset of gamma
    {
        Cover gamma = alpha;
        gamma.shape = Cover::Shape::Generic;
        CoverMember extra;
        extra.parts = {make_word_cylinder({0}), make_word_cylinder({1})};
        gamma.members.push_back(extra); // redundant union member
        BigInt with_extra = minimal_subcover_count(gamma, g).n;
        BigInt plain = minimal_subcover_count(alpha, g).n;
        if (with_extra > plain) fail("adding members increased the minimal subcover");
        note("subcover: N = " + with_extra.str() + " <= " + plain.str());
    }

    // refinement: the finer word cover reaches at least the coarser estimate
    {
        CoverEntropyResult coarse = cover_entropy_estimate(alpha, sys, 6);
        CoverEntropyResult fine = cover_entropy_estimate(beta, sys, 6);
        if (fine.estimate + 1e-12 < coarse.estimate) fail("refined cover lost entropy");
        note("refinement estimates ordered");
    }

    return report;
}

} // namespace drshift
