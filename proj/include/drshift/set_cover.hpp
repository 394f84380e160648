#pragma once

#include <cstdint>
#include <vector>

namespace drshift {

// Bitset over a small universe, 64 elements per block.
using BlockSet = std::vector<std::uint64_t>;

inline BlockSet make_blockset(int universe) {
    return BlockSet(static_cast<std::size_t>((universe + 63) / 64), 0);
}
inline void bs_set(BlockSet& b, int i) { b[static_cast<std::size_t>(i) / 64] |= 1ull << (i % 64); }
inline bool bs_test(const BlockSet& b, int i) {
    return (b[static_cast<std::size_t>(i) / 64] >> (i % 64)) & 1ull;
}
inline int bs_count(const BlockSet& b) {
    int c = 0;
    for (auto w : b) c += __builtin_popcountll(w);
    return c;
}

struct SetCoverResult {
    int cardinality = 0;
    std::vector<int> chosen;
    bool exact = true;
    long nodes = 0;
};

// Exact minimum set cover by branch and bound: branch on the uncovered
// element with the fewest candidate sets, greedy incumbent, counting lower
// bound. Falls back to the greedy solution (exact = false) past node_limit.
SetCoverResult exact_set_cover(const std::vector<BlockSet>& sets, int universe,
                               long node_limit = 20'000'000);

// Exact maximum clique (Tomita-style branch and bound with greedy coloring)
// on graphs of at most 64 vertices given as adjacency bitmasks.
struct CliqueResult {
    int cardinality = 0;
    std::vector<int> witness;
    bool exact = true;
};

CliqueResult max_clique_exact(const std::vector<std::uint64_t>& adj, int n);

// Greedy clique (lower bound) and greedy coloring bound (upper bound) for
// instances too large for the exact search.
struct CliqueBounds {
    int lower = 0;
    int upper = 0;
    std::vector<int> witness;
};
CliqueBounds clique_bounds_greedy(const std::vector<std::vector<char>>& adj);

} // namespace drshift
