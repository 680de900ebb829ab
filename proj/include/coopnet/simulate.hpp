#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "coopnet/graph.hpp"
#include "coopnet/parallel.hpp"
#include "coopnet/rng.hpp"
#include "coopnet/theory.hpp"

namespace coopnet {

struct SimConfig {
    double delta = 0.01;
    double cost = 1.0;
    GameKind game = GameKind::PGG;
    double r = 4.0;  // synergy factor (PGG)
    double b = 2.0;  // benefit (DG)
    PayoffScheme scheme = PayoffScheme::averaged;
    UpdateRule rule = UpdateRule::DB;
    long max_mcs = 400000;
    long replicates = 1;
    std::uint64_t seed = 0;
    int threads = 1;
};

inline void validate(const SimConfig& c) {
    if (!(c.delta >= 0 && c.delta <= 0.1)) throw InvalidParameter("delta must lie in [0, 0.1]");
    if (c.replicates < 1) throw InvalidParameter("replicates must be >= 1");
    if (c.max_mcs < 1) throw InvalidParameter("max_mcs must be >= 1");
    if (!(c.cost > 0)) throw InvalidParameter("cost must be positive");
    if (c.game == GameKind::DG && !(c.b > c.cost)) throw InvalidParameter("donation game needs b > c");
}

struct SimOutcome {
    long replicates = 0;
    double mean_rho_c = 0;
    long fixation_c = 0;
    long fixation_d = 0;
    long unresolved = 0;
    double std_error = 0;
};

// f_i = (1/G_i) sum_{l in G_i} (r c n_l / G_l - x_i c), G_i = {i} u N_i; accumulated drops 1/G_i.
template <class T = double>
std::vector<T> payoff_pgg(const Graph& g, const std::vector<int>& x, PayoffScheme scheme, T r, T c) {
    const int n = g.size();
    std::vector<T> pool(n, T(0));
    for (int l = 0; l < n; ++l) {
        int coop = x[l];
        for (int m : g.neighbors(l)) coop += x[m];
        pool[l] = r * c * T(coop) / T(g.degree(l) + 1);
    }
    std::vector<T> f(n, T(0));
    for (int i = 0; i < n; ++i) {
        const int G = g.degree(i) + 1;
        T s = pool[i];
        for (int l : g.neighbors(i)) s += pool[l];
        s -= T(G) * T(x[i]) * c;
        f[i] = scheme == PayoffScheme::averaged ? s / T(G) : s;
    }
    return f;
}

// averaged: f_i = -x_i c + (b/k_i) sum_{l in N_i} x_l; accumulated: f_i = -k_i x_i c + b sum x_l.
template <class T = double>
std::vector<T> payoff_dg(const Graph& g, const std::vector<int>& x, PayoffScheme scheme, T b, T c) {
    std::vector<T> f(g.size(), T(0));
    for (int i = 0; i < g.size(); ++i) {
        int coop = 0;
        for (int l : g.neighbors(i)) coop += x[l];
        const int k = g.degree(i);
        if (scheme == PayoffScheme::averaged) f[i] = -T(x[i]) * c + b * T(coop) / T(k);
        else f[i] = -T(k) * T(x[i]) * c + b * T(coop);
    }
    return f;
}

// Strategy state with incrementally maintained pool counts; payoffs are evaluated locally on
// demand. For BD with delta > 0 all fitnesses live in a sum tree for proportional sampling.
class Population {
public:
    Population(const Graph& g, const SimConfig& cfg) : g_(g), cfg_(cfg), x_(g.size(), 0), coop_in_(g.size(), 0) {
        if (cfg_.rule == UpdateRule::BD && cfg_.delta > 0) {
            leaves_ = 1;
            while (leaves_ < g.size()) leaves_ *= 2;
            tree_.assign(2 * leaves_, 0.0);
            mark_.assign(g.size(), 0);
        }
    }

    const Graph& graph() const { return g_; }
    const std::vector<int>& strategies() const { return x_; }
    int strategy(int i) const { return x_[i]; }
    int cooperators() const { return cooperators_; }
    long payoff_evaluations() const { return evaluations_; }

    void reset(int sole_cooperator) {
        std::fill(x_.begin(), x_.end(), 0);
        std::fill(coop_in_.begin(), coop_in_.end(), 0);
        cooperators_ = 0;
        if (!tree_.empty()) {
            std::fill(tree_.begin(), tree_.end(), 0.0);
            for (int i = 0; i < g_.size(); ++i) tree_[leaves_ + i] = fitness(i);
            for (int p = leaves_ - 1; p >= 1; --p) tree_[p] = tree_[2 * p] + tree_[2 * p + 1];
        }
        if (sole_cooperator >= 0) set(sole_cooperator, 1);
    }

    void set(int v, int s) {
        if (x_[v] == s) return;
        x_[v] = s;
        const int d = s ? 1 : -1;
        cooperators_ += d;
        coop_in_[v] += d;
        for (int l : g_.neighbors(v)) coop_in_[l] += d;
        if (!tree_.empty()) refresh_around(v);
    }

    double payoff(int i) const {
        ++evaluations_;
        const double c = cfg_.cost;
        const int k = g_.degree(i);
        if (cfg_.game == GameKind::PGG) {
            double s = static_cast<double>(coop_in_[i]) / (k + 1);
            for (int l : g_.neighbors(i)) s += static_cast<double>(coop_in_[l]) / (g_.degree(l) + 1);
            s = cfg_.r * c * s - (k + 1) * x_[i] * c;
            return cfg_.scheme == PayoffScheme::averaged ? s / (k + 1) : s;
        }
        const int nb = coop_in_[i] - x_[i];
        if (cfg_.scheme == PayoffScheme::averaged) return -x_[i] * c + cfg_.b * nb / k;
        return -k * x_[i] * c + cfg_.b * nb;
    }

    double fitness(int i) const { return std::exp(cfg_.delta * payoff(i)); }

    // Node drawn with probability proportional to fitness (BD with delta > 0 only).
    int sample_by_fitness(Rng& rng) const {
        double u = uniform01(rng) * tree_[1];
        int p = 1;
        while (p < leaves_) {
            if (u < tree_[2 * p] || tree_[2 * p + 1] <= 0) {
                p = 2 * p;
            } else {
                u -= tree_[2 * p];
                p = 2 * p + 1;
            }
        }
        return std::min(p - leaves_, g_.size() - 1);
    }

private:
    void refresh_around(int v) {
        // payoffs depend on pools within one hop, so everything within two hops of v may change
        touched_.clear();
        auto touch = [&](int u) {
            if (!mark_[u]) {
                mark_[u] = 1;
                touched_.push_back(u);
            }
        };
        touch(v);
        for (int l : g_.neighbors(v)) {
            touch(l);
            if (cfg_.game == GameKind::PGG)
                for (int m : g_.neighbors(l)) touch(m);
        }
        for (int u : touched_) {
            mark_[u] = 0;
            int p = leaves_ + u;
            tree_[p] = fitness(u);
            for (p /= 2; p >= 1; p /= 2) tree_[p] = tree_[2 * p] + tree_[2 * p + 1];
        }
    }

    const Graph& g_;
    SimConfig cfg_;
    std::vector<int> x_;
    std::vector<int> coop_in_;  // cooperators in the closed neighbourhood G_i
    int cooperators_ = 0;
    mutable long evaluations_ = 0;
    int leaves_ = 0;
    std::vector<double> tree_;
    std::vector<char> mark_;
    std::vector<int> touched_;
};

// One elementary update; returns true if a strategy changed.
inline bool elementary_step(Population& pop, const SimConfig& cfg, Rng& rng) {
    const Graph& g = pop.graph();
    const int n = g.size();
    switch (cfg.rule) {
    case UpdateRule::PC: {
        const int i = uniform_index(rng, n);
        auto nb = g.neighbors(i);
        const int j = nb[uniform_index(rng, static_cast<int>(nb.size()))];
        if (pop.strategy(i) == pop.strategy(j)) return false;
        double theta = 0.5;
        if (cfg.delta > 0) theta = 1.0 / (1.0 + std::exp(-cfg.delta * (pop.payoff(j) - pop.payoff(i))));
        if (uniform01(rng) >= theta) return false;
        pop.set(i, pop.strategy(j));
        return true;
    }
    case UpdateRule::DB: {
        const int i = uniform_index(rng, n);
        auto nb = g.neighbors(i);
        int coop = 0;
        for (int l : nb) coop += pop.strategy(l);
        int s;
        if (coop == 0 || coop == static_cast<int>(nb.size())) {
            s = coop == 0 ? 0 : 1;
        } else if (cfg.delta == 0) {
            s = pop.strategy(nb[uniform_index(rng, static_cast<int>(nb.size()))]);
        } else {
            thread_local std::vector<double> w;
            w.resize(nb.size());
            double total = 0;
            for (std::size_t a = 0; a < nb.size(); ++a) total += w[a] = pop.fitness(nb[a]);
            double u = uniform01(rng) * total;
            std::size_t pick = nb.size() - 1;
            for (std::size_t a = 0; a < nb.size(); ++a) {
                if (u < w[a]) {
                    pick = a;
                    break;
                }
                u -= w[a];
            }
            s = pop.strategy(nb[pick]);
        }
        if (pop.strategy(i) == s) return false;
        pop.set(i, s);
        return true;
    }
    case UpdateRule::BD: {
        const int i = cfg.delta == 0 ? uniform_index(rng, n) : pop.sample_by_fitness(rng);
        auto nb = g.neighbors(i);
        const int j = nb[uniform_index(rng, static_cast<int>(nb.size()))];
        if (pop.strategy(j) == pop.strategy(i)) return false;
        pop.set(j, pop.strategy(i));
        return true;
    }
    }
    return false;
}

struct ReplicateResult {
    double rho_c = 0;
    bool absorbed = false;
};

using SweepTrace = std::function<void(long sweep, int cooperators)>;

// One random initial cooperator; sweeps of N elementary steps until absorption or max_mcs.
inline ReplicateResult run_replicate(const Graph& g, const SimConfig& cfg, Rng& rng, const SweepTrace& trace = {}) {
    const int n = g.size();
    Population pop(g, cfg);
    pop.reset(uniform_index(rng, n));
    for (long sweep = 0; sweep < cfg.max_mcs; ++sweep) {
        for (int step = 0; step < n; ++step) {
            elementary_step(pop, cfg, rng);
            if (pop.cooperators() == 0 || pop.cooperators() == n)
                return {static_cast<double>(pop.cooperators()) / n, true};
        }
        if (trace) trace(sweep + 1, pop.cooperators());
    }
    return {static_cast<double>(pop.cooperators()) / n, false};
}

// Replicate k uses the stream derive_seed(cfg.seed, k); results are reduced in index order.
inline SimOutcome estimate(const Graph& g, const SimConfig& cfg) {
    validate(cfg);
    std::vector<ReplicateResult> res(cfg.replicates);
    parallel_for(static_cast<std::size_t>(cfg.replicates), cfg.threads, [&](std::size_t k) {
        Rng rng = make_rng(cfg.seed, k);
        res[k] = run_replicate(g, cfg, rng);
    });
    SimOutcome out;
    out.replicates = cfg.replicates;
    double sum = 0;
    for (const auto& r : res) {
        sum += r.rho_c;
        if (!r.absorbed) ++out.unresolved;
        else if (r.rho_c == 1.0) ++out.fixation_c;
        else ++out.fixation_d;
    }
    out.mean_rho_c = sum / cfg.replicates;
    if (cfg.replicates > 1) {
        double ss = 0;
        for (const auto& r : res) ss += (r.rho_c - out.mean_rho_c) * (r.rho_c - out.mean_rho_c);
        out.std_error = std::sqrt(ss / (cfg.replicates - 1) / cfg.replicates);
    }
    return out;
}

} // namespace coopnet
