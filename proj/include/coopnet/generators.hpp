#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "coopnet/canonical.hpp"
#include "coopnet/graph.hpp"
#include "coopnet/rng.hpp"

namespace coopnet {

inline constexpr int kDefaultRetryBudget = 10000;

enum class Neighborhood { von_neumann, moore };

inline Graph star(int n_leaves) {
    if (n_leaves < 1) throw InvalidParameter("star needs n >= 1 leaves");
    std::vector<Edge> e;
    for (int l = 1; l <= n_leaves; ++l) e.emplace_back(0, l);
    return build_graph(n_leaves + 1, std::move(e));
}

// Hubs 0..m-1 form a clique; hub h owns leaves m + h*n .. m + h*n + n - 1.
inline Graph joint_star(int m, int n_leaves) {
    if (m < 2) throw InvalidParameter("joint_star needs m >= 2 hubs");
    if (n_leaves < 1) throw InvalidParameter("joint_star needs n >= 1 leaves per hub");
    std::vector<Edge> e;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) e.emplace_back(a, b);
    for (int h = 0; h < m; ++h)
        for (int t = 0; t < n_leaves; ++t) e.emplace_back(h, m + h * n_leaves + t);
    return build_graph(m + m * n_leaves, std::move(e));
}

// Hub 0 joined to leaves 1..2n; leaves 2t+1 and 2t+2 form a fan blade.
inline Graph ceiling_fan(int n_fans) {
    if (n_fans < 1) throw InvalidParameter("ceiling_fan needs n >= 1 fans");
    std::vector<Edge> e;
    for (int t = 0; t < n_fans; ++t) {
        e.emplace_back(0, 2 * t + 1);
        e.emplace_back(0, 2 * t + 2);
        e.emplace_back(2 * t + 1, 2 * t + 2);
    }
    return build_graph(2 * n_fans + 1, std::move(e));
}

// Periodic L x L torus; node (x, y) has index y*L + x.
inline Graph lattice(int L, Neighborhood nb) {
    if (L < 3) throw InvalidParameter("lattice needs L >= 3");
    auto id = [L](int x, int y) { return ((y + L) % L) * L + (x + L) % L; };
    std::set<Edge> e;
    auto add = [&](int a, int b) { e.insert({std::min(a, b), std::max(a, b)}); };
    for (int y = 0; y < L; ++y)
        for (int x = 0; x < L; ++x) {
            add(id(x, y), id(x + 1, y));
            add(id(x, y), id(x, y + 1));
            if (nb == Neighborhood::moore) {
                add(id(x, y), id(x + 1, y + 1));
                add(id(x, y), id(x + 1, y - 1));
            }
        }
    return build_graph(L * L, {e.begin(), e.end()});
}

inline Graph complete(int n) {
    if (n < 2) throw InvalidParameter("complete graph needs n >= 2");
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return build_graph(n, std::move(e));
}

inline Graph cycle(int n) {
    if (n < 3) throw InvalidParameter("cycle needs n >= 3");
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return build_graph(n, std::move(e));
}

inline Graph path(int n) {
    if (n < 2) throw InvalidParameter("path needs n >= 2");
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return build_graph(n, std::move(e));
}

inline Graph erdos_renyi(int n, double p, std::uint64_t seed, int retries = kDefaultRetryBudget) {
    if (n < 2) throw InvalidParameter("ER needs n >= 2");
    if (!(p > 0 && p <= 1)) throw InvalidParameter("ER needs 0 < p <= 1");
    Rng rng(derive_seed(seed, 0));
    for (int attempt = 0; attempt < retries; ++attempt) {
        std::vector<Edge> e;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (uniform01(rng) < p) e.emplace_back(i, j);
        Graph g = build_graph(n, std::move(e), Validation::structural);
        if (component_count(g) == 1) return validate(g);
    }
    throw GenerationTimeout("ER(" + std::to_string(n) + ", " + std::to_string(p) +
                            ") stayed disconnected after " + std::to_string(retries) + " samples");
}

// Ring with d clockwise neighbours per node; edge (i, i+o) is visited in (i, o) order and its
// far end moved with probability p to a uniform node not already adjacent to i.
inline Graph watts_strogatz(int n, int d, double p, std::uint64_t seed, int retries = kDefaultRetryBudget) {
    if (d < 1) throw InvalidParameter("WS needs d >= 1");
    if (n <= 4 * d) throw InvalidParameter("WS needs n > 4d");
    if (!(p >= 0 && p <= 1)) throw InvalidParameter("WS needs 0 <= p <= 1");
    Rng rng(derive_seed(seed, 0));
    for (int attempt = 0; attempt < retries; ++attempt) {
        std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int o = 1; o <= d; ++o) {
                int j = (i + o) % n;
                adj[i][j] = adj[j][i] = 1;
            }
        std::vector<int> candidates;
        for (int i = 0; i < n; ++i)
            for (int o = 1; o <= d; ++o) {
                int j = (i + o) % n;
                if (!(uniform01(rng) < p)) continue;
                candidates.clear();
                for (int w = 0; w < n; ++w)
                    if (w != i && !adj[i][w]) candidates.push_back(w);
                if (candidates.empty()) continue;
                int w = candidates[uniform_index(rng, static_cast<int>(candidates.size()))];
                adj[i][j] = adj[j][i] = 0;
                adj[i][w] = adj[w][i] = 1;
            }
        std::vector<Edge> e;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (adj[i][j]) e.emplace_back(i, j);
        Graph g = build_graph(n, std::move(e), Validation::structural);
        if (component_count(g) == 1) return validate(g);
    }
    throw GenerationTimeout("WS stayed disconnected after " + std::to_string(retries) + " samples");
}

// Generalized preferential attachment: m isolated seeds, then each joining node links to m
// distinct existing nodes drawn sequentially with probability proportional to k^gamma.
// While every candidate has degree 0 the draw is uniform.
inline Graph krapivsky_ba(int n, int m, double gamma, std::uint64_t seed, int retries = kDefaultRetryBudget) {
    if (m < 1 || m >= n) throw InvalidParameter("BA needs 1 <= m < n");
    if (!(gamma >= 0)) throw InvalidParameter("BA needs gamma >= 0");
    Rng rng(derive_seed(seed, 0));
    for (int attempt = 0; attempt < retries; ++attempt) {
        std::vector<int> deg(n, 0);
        std::vector<Edge> e;
        std::vector<double> w;
        std::vector<char> taken;
        for (int t = m; t < n; ++t) {
            taken.assign(t, 0);
            for (int pick = 0; pick < m; ++pick) {
                w.assign(t, 0.0);
                double total = 0;
                bool any_degree = false;
                for (int i = 0; i < t; ++i)
                    if (!taken[i] && deg[i] > 0) any_degree = true;
                for (int i = 0; i < t; ++i) {
                    if (taken[i]) continue;
                    w[i] = any_degree ? (deg[i] > 0 ? std::pow(static_cast<double>(deg[i]), gamma) : 0.0) : 1.0;
                    total += w[i];
                }
                double u = uniform01(rng) * total;
                int chosen = -1;
                for (int i = 0; i < t; ++i) {
                    if (w[i] <= 0) continue;
                    chosen = i;
                    if (u < w[i]) break;
                    u -= w[i];
                }
                taken[chosen] = 1;
            }
            for (int i = 0; i < t; ++i)
                if (taken[i]) {
                    e.emplace_back(i, t);
                    ++deg[i];
                    ++deg[t];
                }
        }
        Graph g = build_graph(n, std::move(e), Validation::structural);
        if (component_count(g) == 1) return validate(g);
    }
    throw GenerationTimeout("BA stayed disconnected after " + std::to_string(retries) + " samples");
}

struct GeneratorSpec {
    std::string family;
    std::vector<std::string> params;

    std::string str() const {
        std::string s = family;
        for (auto& p : params) s += ":" + p;
        return s;
    }
};

inline GeneratorSpec parse_generator_spec(const std::string& text) {
    GeneratorSpec s;
    std::stringstream ss(text);
    std::string tok;
    bool first = true;
    while (std::getline(ss, tok, ':')) {
        if (first) s.family = tok;
        else s.params.push_back(tok);
        first = false;
    }
    if (s.family.empty()) throw InvalidParameter("empty generator spec");
    return s;
}

namespace detail {

inline int spec_int(const GeneratorSpec& s, std::size_t k) {
    if (k >= s.params.size()) throw InvalidParameter("generator '" + s.str() + "' is missing parameter " + std::to_string(k + 1));
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s.params[k], &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != s.params[k].size()) throw InvalidParameter("'" + s.params[k] + "' is not an integer");
    return v;
}

inline double spec_real(const GeneratorSpec& s, std::size_t k) {
    if (k >= s.params.size()) throw InvalidParameter("generator '" + s.str() + "' is missing parameter " + std::to_string(k + 1));
    const std::string& t = s.params[k];
    auto slash = t.find('/');
    try {
        if (slash != std::string::npos) return std::stod(t.substr(0, slash)) / std::stod(t.substr(slash + 1));
        std::size_t pos = 0;
        double v = std::stod(t, &pos);
        if (pos == t.size()) return v;
    } catch (const std::exception&) {
    }
    throw InvalidParameter("'" + t + "' is not a number");
}

inline void spec_arity(const GeneratorSpec& s, std::size_t k) {
    if (s.params.size() != k)
        throw InvalidParameter("generator '" + s.family + "' takes " + std::to_string(k) + " parameters");
}

} // namespace detail

// Families: star:n joint_star:m:n ceiling_fan:n lattice:L:vn|moore complete:n cycle:n path:n
// er:N:p ws:N:d:p ba:N:m:gamma. Deterministic families ignore the seed.
inline Graph generate(const GeneratorSpec& s, std::uint64_t seed = 0) {
    using detail::spec_int;
    using detail::spec_real;
    using detail::spec_arity;
    const std::string& f = s.family;
    if (f == "star") { spec_arity(s, 1); return star(spec_int(s, 0)); }
    if (f == "joint_star") { spec_arity(s, 2); return joint_star(spec_int(s, 0), spec_int(s, 1)); }
    if (f == "ceiling_fan") { spec_arity(s, 1); return ceiling_fan(spec_int(s, 0)); }
    if (f == "complete") { spec_arity(s, 1); return complete(spec_int(s, 0)); }
    if (f == "cycle") { spec_arity(s, 1); return cycle(spec_int(s, 0)); }
    if (f == "path") { spec_arity(s, 1); return path(spec_int(s, 0)); }
    if (f == "lattice") {
        spec_arity(s, 2);
        const std::string& nb = s.params[1];
        if (nb == "vn" || nb == "von_neumann") return lattice(spec_int(s, 0), Neighborhood::von_neumann);
        if (nb == "moore") return lattice(spec_int(s, 0), Neighborhood::moore);
        throw InvalidParameter("lattice neighbourhood must be vn or moore");
    }
    if (f == "er") { spec_arity(s, 2); return erdos_renyi(spec_int(s, 0), spec_real(s, 1), seed); }
    if (f == "ws") { spec_arity(s, 3); return watts_strogatz(spec_int(s, 0), spec_int(s, 1), spec_real(s, 2), seed); }
    if (f == "ba") { spec_arity(s, 3); return krapivsky_ba(spec_int(s, 0), spec_int(s, 1), spec_real(s, 2), seed); }
    throw InvalidParameter("unknown generator family '" + f + "'");
}

inline Graph generate(const std::string& spec, std::uint64_t seed = 0) {
    return generate(parse_generator_spec(spec), seed);
}

// One canonical representative per isomorphism class of all simple graphs on n nodes
// (connected or not), sorted by canonical string. Built by adding a vertex to every class
// on n-1 nodes with every neighbour subset.
inline std::vector<Graph> all_graph_classes(int n) {
    if (n < 1) throw InvalidParameter("n >= 1 required");
    if (n > 9) throw TooLarge("graph class generation supports n <= 9");
    if (n == 1) return {build_graph(1, {}, Validation::structural)};
    auto smaller = all_graph_classes(n - 1);
    std::unordered_set<std::string> seen;
    std::vector<std::pair<std::string, Graph>> found;
    for (const Graph& h : smaller) {
        auto base = h.edges();
        for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
            auto e = base;
            for (int v = 0; v < n - 1; ++v)
                if (mask >> v & 1u) e.emplace_back(v, n - 1);
            Graph g = build_graph(n, std::move(e), Validation::structural);
            Graph c = canonical_graph(g);
            std::string key = encode_graph6(c);
            if (seen.insert(key).second) found.emplace_back(std::move(key), std::move(c));
        }
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Graph> out;
    out.reserve(found.size());
    for (auto& [k, g] : found) out.push_back(std::move(g));
    return out;
}

// Connected classes on n nodes for 1 <= n <= 9; used to build graph6 atlases.
inline std::vector<Graph> connected_atlas(int n) {
    std::vector<Graph> out;
    for (auto& g : all_graph_classes(n))
        if (n == 1 || component_count(g) == 1) out.push_back(g);
    return out;
}

inline std::vector<Graph> enumerate_connected(int n) {
    if (n < 3) throw InvalidParameter("enumerate_connected needs n >= 3");
    if (n >= 8) throw TooLarge("enumerate_connected supports n <= 7; ingest a graph6 atlas for n = 8");
    auto out = connected_atlas(n);
    for (auto& g : out) g = validate(g);
    return out;
}

} // namespace coopnet
