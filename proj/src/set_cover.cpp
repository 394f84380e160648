#include "drshift/set_cover.hpp"

#include <algorithm>
#include <stdexcept>

namespace drshift {

namespace {

int bs_and_count(const BlockSet& a, const BlockSet& b) {
    int c = 0;
    for (std::size_t i = 0; i < a.size(); ++i) c += __builtin_popcountll(a[i] & b[i]);
    return c;
}

struct CoverSearch {
    const std::vector<BlockSet>& sets;
    int universe;
    long node_limit;
    long nodes = 0;
    int best = 0;
    std::vector<int> best_chosen;
    std::vector<int> chosen;
    bool aborted = false;

    void run(const BlockSet& uncovered) {
        if (aborted) return;
        if (++nodes > node_limit) {
            aborted = true;
            return;
        }
        int remaining = bs_count(uncovered);
        if (remaining == 0) {
            if (static_cast<int>(chosen.size()) < best) {
                best = static_cast<int>(chosen.size());
                best_chosen = chosen;
            }
            return;
        }
        // counting lower bound
        int max_gain = 0;
        for (const auto& s : sets) max_gain = std::max(max_gain, bs_and_count(s, uncovered));
        if (max_gain == 0) return; // uncoverable
        int lb = (remaining + max_gain - 1) / max_gain;
        if (static_cast<int>(chosen.size()) + lb >= best) return;

        // branch on the uncovered element with the fewest candidate sets
        int pick = -1, pick_count = 0;
        for (int e = 0; e < universe && pick == -1; ++e) {
            if (!bs_test(uncovered, e)) continue;
            int c = 0;
            for (const auto& s : sets)
                if (bs_test(s, e)) ++c;
            pick = e;
            pick_count = c;
            // keep scanning for a rarer element
            for (int e2 = e + 1; e2 < universe; ++e2) {
                if (!bs_test(uncovered, e2)) continue;
                int c2 = 0;
                for (const auto& s : sets)
                    if (bs_test(s, e2)) ++c2;
                if (c2 < pick_count) {
                    pick = e2;
                    pick_count = c2;
                }
            }
        }
        if (pick < 0) return;
        std::vector<int> candidates;
        for (int si = 0; si < static_cast<int>(sets.size()); ++si)
            if (bs_test(sets[static_cast<std::size_t>(si)], pick)) candidates.push_back(si);
        std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
            return bs_and_count(sets[static_cast<std::size_t>(a)], uncovered) >
                   bs_and_count(sets[static_cast<std::size_t>(b)], uncovered);
        });
        for (int si : candidates) {
            BlockSet next = uncovered;
            for (std::size_t i = 0; i < next.size(); ++i)
                next[i] &= ~sets[static_cast<std::size_t>(si)][i];
            chosen.push_back(si);
            run(next);
            chosen.pop_back();
            if (aborted) return;
        }
    }
};

std::vector<int> greedy_cover(const std::vector<BlockSet>& sets, int universe) {
    BlockSet uncovered = make_blockset(universe);
    for (int e = 0; e < universe; ++e) bs_set(uncovered, e);
    std::vector<int> chosen;
    while (bs_count(uncovered) > 0) {
        int best_set = -1, best_gain = 0;
        for (int si = 0; si < static_cast<int>(sets.size()); ++si) {
            int gain = bs_and_count(sets[static_cast<std::size_t>(si)], uncovered);
            if (gain > best_gain) {
                best_gain = gain;
                best_set = si;
            }
        }
        if (best_set < 0) throw std::invalid_argument("greedy_cover: universe not coverable");
        chosen.push_back(best_set);
        for (std::size_t i = 0; i < uncovered.size(); ++i)
            uncovered[i] &= ~sets[static_cast<std::size_t>(best_set)][i];
    }
    return chosen;
}

} // namespace

SetCoverResult exact_set_cover(const std::vector<BlockSet>& sets, int universe, long node_limit) {
    SetCoverResult result;
    if (universe == 0) return result;
    auto greedy = greedy_cover(sets, universe);

    CoverSearch search{sets, universe, node_limit};
    search.best = static_cast<int>(greedy.size());
    search.best_chosen = greedy;
    BlockSet all = make_blockset(universe);
    for (int e = 0; e < universe; ++e) bs_set(all, e);
    search.run(all);

    result.cardinality = search.best;
    result.chosen = search.best_chosen;
    result.exact = !search.aborted;
    result.nodes = search.nodes;
    return result;
}

namespace {

struct CliqueSearch {
    const std::vector<std::uint64_t>& adj;
    int n;
    int best = 0;
    std::uint64_t best_mask = 0;

    static int lowbit(std::uint64_t m) { return __builtin_ctzll(m); }

    // greedy coloring bound on the candidate set
    int color_bound(std::uint64_t cand) const {
        int colors = 0;
        while (cand) {
            ++colors;
            std::uint64_t cls = 0, rest = cand;
            while (rest) {
                int v = lowbit(rest);
                rest &= rest - 1;
                if ((adj[static_cast<std::size_t>(v)] & cls) == 0) {
                    cls |= 1ull << v;
                }
            }
            cand &= ~cls;
        }
        return colors;
    }

    void run(std::uint64_t current, int size, std::uint64_t cand) {
        if (cand == 0) {
            if (size > best) {
                best = size;
                best_mask = current;
            }
            return;
        }
        if (size + color_bound(cand) <= best) return;
        while (cand) {
            if (size + __builtin_popcountll(cand) <= best) return;
            int v = lowbit(cand);
            cand &= cand - 1;
            run(current | (1ull << v), size + 1, cand & adj[static_cast<std::size_t>(v)]);
        }
    }
};

} // namespace

CliqueResult max_clique_exact(const std::vector<std::uint64_t>& adj, int n) {
    if (n > 64) throw std::invalid_argument("max_clique_exact: more than 64 vertices");
    CliqueResult result;
    if (n == 0) return result;
    CliqueSearch search{adj, n};
    std::uint64_t all = n == 64 ? ~0ull : ((1ull << n) - 1);
    search.run(0, 0, all);
    result.cardinality = search.best;
    for (int v = 0; v < n; ++v)
        if (search.best_mask & (1ull << v)) result.witness.push_back(v);
    return result;
}

CliqueBounds clique_bounds_greedy(const std::vector<std::vector<char>>& adj) {
    const int n = static_cast<int>(adj.size());
    CliqueBounds bounds;
    // greedy clique by degree order
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) degree[static_cast<std::size_t>(i)] += adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return degree[static_cast<std::size_t>(a)] > degree[static_cast<std::size_t>(b)]; });
    for (int v : order) {
        bool ok = true;
        for (int u : bounds.witness) ok = ok && adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)];
        if (ok) bounds.witness.push_back(v);
    }
    bounds.lower = static_cast<int>(bounds.witness.size());
    // greedy coloring upper bound
    std::vector<int> color(static_cast<std::size_t>(n), -1);
    int colors = 0;
    for (int v : order) {
        std::vector<char> used(static_cast<std::size_t>(colors + 1), 0);
        for (int u = 0; u < n; ++u)
            if (adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] && color[static_cast<std::size_t>(u)] >= 0)
                used[static_cast<std::size_t>(color[static_cast<std::size_t>(u)])] = 1;
        int c = 0;
        while (used[static_cast<std::size_t>(c)]) ++c;
        color[static_cast<std::size_t>(v)] = c;
        colors = std::max(colors, c + 1);
    }
    bounds.upper = colors;
    return bounds;
}

} // namespace drshift
