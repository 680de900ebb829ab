#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "coopnet/graph.hpp"
#include "coopnet/graph6.hpp"

namespace coopnet {

inline constexpr int kCanonicalMaxN = 10;

// Colour refinement starting from degrees. Colours are ranks of sorted signatures,
// so the final colouring is invariant under relabeling.
inline std::vector<int> refine_colors(const Graph& g) {
    const int n = g.size();
    std::vector<int> color(n);
    for (int i = 0; i < n; ++i) color[i] = g.degree(i);
    int classes = -1;
    while (true) {
        std::vector<std::vector<int>> sig(n);
        for (int i = 0; i < n; ++i) {
            sig[i].push_back(color[i]);
            std::vector<int> nc;
            for (int j : g.neighbors(i)) nc.push_back(color[j]);
            std::sort(nc.begin(), nc.end());
            sig[i].insert(sig[i].end(), nc.begin(), nc.end());
        }
        std::map<std::vector<int>, int> rank;
        for (auto& s : sig) rank.emplace(s, 0);
        int r = 0;
        for (auto& [s, v] : rank) v = r++;
        for (int i = 0; i < n; ++i) color[i] = rank[sig[i]];
        if (r == classes) break;
        classes = r;
    }
    return color;
}

namespace detail {

struct CanonSearch {
    const Graph& g;
    int n;
    int total_bits;
    std::vector<int> cell_of_pos;
    std::vector<int> color;
    std::vector<int> placed;
    std::vector<char> used;
    std::uint64_t best = ~std::uint64_t{0};
    std::vector<int> best_perm;

    void run(int pos, std::uint64_t code, int bits) {
        if (pos == n) {
            if (code < best) {
                best = code;
                best_perm = placed;
            }
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[v] || color[v] != cell_of_pos[pos]) continue;
            std::uint64_t c = code;
            for (int i = 0; i < pos; ++i) c = (c << 1) | (g.has_edge(placed[i], v) ? 1u : 0u);
            int nb = bits + pos;
            if (best != ~std::uint64_t{0} && (c > (best >> (total_bits - nb)))) continue;
            used[v] = 1;
            placed[pos] = v;
            run(pos + 1, c, nb);
            used[v] = 0;
        }
    }
};

} // namespace detail

// Returns perm with perm[old] = new label, minimizing the graph6 bit string over all
// labelings that respect the refined colour order.
inline std::vector<int> canonical_labeling(const Graph& g) {
    const int n = g.size();
    if (n > kCanonicalMaxN)
        throw TooLarge("canonical form supports N <= " + std::to_string(kCanonicalMaxN));
    detail::CanonSearch s{g, n, n * (n - 1) / 2, {}, refine_colors(g), std::vector<int>(n), std::vector<char>(n, 0), ~std::uint64_t{0}, {}};
    s.cell_of_pos = s.color;
    std::sort(s.cell_of_pos.begin(), s.cell_of_pos.end());
    s.run(0, 0, 0);
    std::vector<int> perm(n);
    for (int pos = 0; pos < n; ++pos) perm[s.best_perm[pos]] = pos;
    return perm;
}

inline Graph canonical_graph(const Graph& g) { return relabel(g, canonical_labeling(g)); }

// graph6 string of the canonical relabeling; equal iff the graphs are isomorphic.
inline std::string canonical_form(const Graph& g) { return encode_graph6(canonical_graph(g)); }

} // namespace coopnet
