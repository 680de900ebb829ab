#pragma once

#include <map>
#include <utility>
#include <vector>

#include "coopnet/graph.hpp"
#include "coopnet/scalar.hpp"

namespace coopnet {

// Sparse row-stochastic matrix: row i holds (column, value) pairs sorted by column.
template <class T>
using SparseRows = std::vector<std::vector<std::pair<int, T>>>;

template <class T>
SparseRows<T> sparse_product(const SparseRows<T>& a, const SparseRows<T>& b) {
    const int n = static_cast<int>(a.size());
    SparseRows<T> out(n);
    std::vector<T> acc(n, T(0));
    std::vector<char> hit(n, 0);
    std::vector<int> cols;
    for (int i = 0; i < n; ++i) {
        cols.clear();
        for (const auto& [l, pil] : a[i])
            for (const auto& [j, plj] : b[l]) {
                if (!hit[j]) {
                    hit[j] = 1;
                    cols.push_back(j);
                }
                acc[j] += pil * plj;
            }
        std::sort(cols.begin(), cols.end());
        out[i].reserve(cols.size());
        for (int j : cols) {
            out[i].emplace_back(j, acc[j]);
            acc[j] = T(0);
            hit[j] = 0;
        }
    }
    return out;
}

template <class T = double>
class WalkKernel {
public:
    WalkKernel(const Graph& g, int max_n = 3) : n_(g.size()) {
        SparseRows<T> p(n_);
        for (int i = 0; i < n_; ++i) {
            T w = ratio<T>(1, g.degree(i));
            for (int j : g.neighbors(i)) p[i].emplace_back(j, w);
        }
        powers_.push_back(std::move(p));
        extend(max_n);
    }

    int size() const { return n_; }
    int max_order() const { return static_cast<int>(powers_.size()); }

    // p^(n) for n >= 1; extends the cache on demand (not thread-safe while extending).
    const SparseRows<T>& power(int n) {
        extend(n);
        return powers_[n - 1];
    }
    const SparseRows<T>& power(int n) const { return powers_.at(n - 1); }

    T at(int n, int i, int j) const {
        if (n == 0) return i == j ? T(1) : T(0);
        const auto& row = powers_.at(n - 1)[i];
        auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(j, T(0)),
                                   [](const auto& x, const auto& y) { return x.first < y.first; });
        return (it != row.end() && it->first == j) ? it->second : T(0);
    }

    T return_probability(int n, int i) const { return at(n, i, i); }

private:
    void extend(int n) {
        while (static_cast<int>(powers_.size()) < n)
            powers_.push_back(sparse_product(powers_.back(), powers_.front()));
    }

    int n_;
    std::vector<SparseRows<T>> powers_;
};

template <class T = double>
WalkKernel<T> walk_kernel(const Graph& g, int max_n = 3) {
    return WalkKernel<T>(g, max_n);
}

} // namespace coopnet
