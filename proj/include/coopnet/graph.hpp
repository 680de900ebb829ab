#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "coopnet/error.hpp"

namespace coopnet {

using Edge = std::pair<int, int>;

// structural: simple graph only. no_isolated: also k_i >= 1. analysis: also connected.
enum class Validation { structural, no_isolated, analysis };

class Graph {
public:
    Graph() = default;

    int size() const { return n_; }
    int degree(int i) const { return offsets_[i + 1] - offsets_[i]; }
    std::span<const int> neighbors(int i) const {
        return {adj_.data() + offsets_[i], static_cast<std::size_t>(degree(i))};
    }
    std::size_t edge_count() const { return adj_.size() / 2; }
    const std::vector<int>& degrees() const { return degrees_; }

    bool has_edge(int i, int j) const {
        if (!masks_.empty()) return (masks_[i] >> j) & 1u;
        auto nb = neighbors(i);
        return std::binary_search(nb.begin(), nb.end(), j);
    }

    // i < j, sorted lexicographically
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edge_count());
        for (int i = 0; i < n_; ++i)
            for (int j : neighbors(i))
                if (i < j) out.emplace_back(i, j);
        return out;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.offsets_ == b.offsets_ && a.adj_ == b.adj_;
    }

    friend Graph build_graph(int n, std::vector<Edge> edges, Validation v);

private:
    int n_ = 0;
    std::vector<int> offsets_{0};
    std::vector<int> adj_;
    std::vector<int> degrees_;
    std::vector<std::uint64_t> masks_;
};

inline std::vector<int> component_labels(const Graph& g) {
    std::vector<int> label(g.size(), -1);
    std::vector<int> stack;
    int c = 0;
    for (int s = 0; s < g.size(); ++s) {
        if (label[s] >= 0) continue;
        label[s] = c;
        stack.push_back(s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(u))
                if (label[w] < 0) {
                    label[w] = c;
                    stack.push_back(w);
                }
        }
        ++c;
    }
    return label;
}

inline int component_count(const Graph& g) {
    auto lab = component_labels(g);
    return lab.empty() ? 0 : *std::max_element(lab.begin(), lab.end()) + 1;
}

inline Graph build_graph(int n, std::vector<Edge> edges, Validation v = Validation::analysis) {
    if (n < 1) throw InvalidParameter("graph needs at least one node");
    if (v == Validation::analysis && n < 2) throw InvalidParameter("analysis requires N >= 2");
    for (auto& [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw IndexOutOfRange("edge (" + std::to_string(a) + "," + std::to_string(b) +
                                  ") outside [0," + std::to_string(n) + ")");
        if (a == b) throw SelfLoop("self-loop at node " + std::to_string(a));
        if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end())
        throw DuplicateEdge("duplicate edge (" + std::to_string(dup->first) + "," +
                            std::to_string(dup->second) + ")");

    Graph g;
    g.n_ = n;
    g.degrees_.assign(n, 0);
    for (auto [a, b] : edges) {
        ++g.degrees_[a];
        ++g.degrees_[b];
    }
    g.offsets_.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + g.degrees_[i];
    g.adj_.resize(g.offsets_[n]);
    std::vector<int> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [a, b] : edges) {
        g.adj_[fill[a]++] = b;
        g.adj_[fill[b]++] = a;
    }
    for (int i = 0; i < n; ++i)
        std::sort(g.adj_.begin() + g.offsets_[i], g.adj_.begin() + g.offsets_[i + 1]);
    if (n <= 64) {
        g.masks_.assign(n, 0);
        for (auto [a, b] : edges) {
            g.masks_[a] |= std::uint64_t{1} << b;
            g.masks_[b] |= std::uint64_t{1} << a;
        }
    }

    if (v == Validation::analysis) {
        int c = component_count(g);
        if (c != 1)
            throw Disconnected("graph has " + std::to_string(c) + " connected components", c);
    }
    if (v != Validation::structural)
        for (int i = 0; i < n; ++i)
            if (g.degrees_[i] == 0) throw IsolatedNode("node " + std::to_string(i) + " is isolated");
    return g;
}

inline Graph validate(const Graph& g, Validation v = Validation::analysis) {
    return build_graph(g.size(), g.edges(), v);
}

inline Graph relabel(const Graph& g, const std::vector<int>& perm, Validation v = Validation::structural) {
    auto e = g.edges();
    for (auto& [a, b] : e) {
        a = perm[a];
        b = perm[b];
    }
    return build_graph(g.size(), std::move(e), v);
}

// Largest connected component, relabeled 0..n'-1 in original order. Ties go to the lowest label.
inline Graph largest_component(const Graph& g, std::vector<int>* kept = nullptr) {
    auto lab = component_labels(g);
    int c = lab.empty() ? 0 : *std::max_element(lab.begin(), lab.end()) + 1;
    std::vector<int> sizes(c, 0);
    for (int l : lab) ++sizes[l];
    int best = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    std::vector<int> map(g.size(), -1);
    std::vector<int> keep;
    for (int i = 0; i < g.size(); ++i)
        if (lab[i] == best) {
            map[i] = static_cast<int>(keep.size());
            keep.push_back(i);
        }
    std::vector<Edge> e;
    for (auto [a, b] : g.edges())
        if (map[a] >= 0 && map[b] >= 0) e.emplace_back(map[a], map[b]);
    if (kept) *kept = keep;
    return build_graph(static_cast<int>(keep.size()), std::move(e), Validation::analysis);
}

struct EdgeList {
    int n = 0;
    std::vector<Edge> edges;
};

// Two whitespace-separated 0-based integers per line; '#' starts a comment line.
// Lines with any other shape (weights, direction markers) are rejected.
inline EdgeList read_edge_list(std::istream& in, std::optional<int> n = std::nullopt) {
    EdgeList out;
    std::string line;
    int lineno = 0;
    int max_index = -1;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ss(line);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;) tok.push_back(t);
        if (tok.size() != 2)
            throw MalformedEdgeList("line " + std::to_string(lineno) +
                                    ": expected two node indices, got " + std::to_string(tok.size()) +
                                    " fields");
        int ab[2];
        for (int k = 0; k < 2; ++k) {
            std::size_t pos = 0;
            long long v = 0;
            try {
                v = std::stoll(tok[k], &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != tok[k].size() || tok[k].empty())
                throw MalformedEdgeList("line " + std::to_string(lineno) + ": '" + tok[k] +
                                        "' is not an integer");
            if (v < 0 || v > 10'000'000)
                throw IndexOutOfRange("line " + std::to_string(lineno) + ": index " + tok[k]);
            ab[k] = static_cast<int>(v);
        }
        max_index = std::max({max_index, ab[0], ab[1]});
        out.edges.emplace_back(ab[0], ab[1]);
    }
    out.n = n ? *n : max_index + 1;
    return out;
}

inline std::string write_edge_list(const Graph& g) {
    std::string s = "# nodes " + std::to_string(g.size()) + "\n";
    for (auto [a, b] : g.edges()) s += std::to_string(a) + " " + std::to_string(b) + "\n";
    return s;
}

} // namespace coopnet
