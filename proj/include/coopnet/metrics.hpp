#pragma once

#include <vector>

#include "coopnet/graph.hpp"
#include "coopnet/walk.hpp"

namespace coopnet {

struct GraphMetrics {
    double avg_degree = 0;
    double avg_inverse_degree = 0;
    double clustering = 0;
    // return[n][i] = p^(n)_ii for n = 0..4
    std::vector<std::vector<double>> return_probability;
};

inline int triangles_at(const Graph& g, int i) {
    int t = 0;
    auto nb = g.neighbors(i);
    for (std::size_t a = 0; a < nb.size(); ++a)
        for (std::size_t b = a + 1; b < nb.size(); ++b)
            if (g.has_edge(nb[a], nb[b])) ++t;
    return t;
}

// Mean local clustering; nodes with k < 2 contribute 0.
inline double mean_clustering(const Graph& g) {
    double s = 0;
    for (int i = 0; i < g.size(); ++i) {
        int k = g.degree(i);
        if (k >= 2) s += 2.0 * triangles_at(g, i) / (static_cast<double>(k) * (k - 1));
    }
    return s / g.size();
}

inline bool is_regular(const Graph& g) {
    const auto& d = g.degrees();
    return std::all_of(d.begin(), d.end(), [&](int k) { return k == d.front(); });
}

inline GraphMetrics metrics(const Graph& g) {
    GraphMetrics m;
    double sk = 0, sinv = 0;
    for (int i = 0; i < g.size(); ++i) {
        sk += g.degree(i);
        sinv += 1.0 / g.degree(i);
    }
    m.avg_degree = sk / g.size();
    m.avg_inverse_degree = sinv / g.size();
    m.clustering = mean_clustering(g);
    WalkKernel<double> w(g, 4);
    m.return_probability.assign(5, std::vector<double>(g.size(), 0.0));
    for (int i = 0; i < g.size(); ++i) {
        m.return_probability[0][i] = 1.0;
        for (int n = 1; n <= 4; ++n) m.return_probability[n][i] = w.return_probability(n, i);
    }
    return m;
}

} // namespace coopnet
