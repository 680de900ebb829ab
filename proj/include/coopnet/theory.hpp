#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "coopnet/coalescence.hpp"
#include "coopnet/graph.hpp"
#include "coopnet/walk.hpp"

namespace coopnet {

enum class UpdateRule { PC, DB, BD };
enum class PayoffScheme { averaged, accumulated };
enum class GameKind { PGG, DG };
enum class Category { supports, strict, never };

inline constexpr double kSupportLimit = 30.0;
inline constexpr double kInfinityProxy = 1000.0;

inline const char* to_string(UpdateRule r) {
    switch (r) {
    case UpdateRule::PC: return "pc";
    case UpdateRule::DB: return "db";
    case UpdateRule::BD: return "bd";
    }
    return "?";
}
inline const char* to_string(PayoffScheme s) { return s == PayoffScheme::averaged ? "avg" : "acc"; }
inline const char* to_string(GameKind g) { return g == GameKind::PGG ? "pgg" : "dg"; }
inline const char* to_string(Category c) {
    switch (c) {
    case Category::supports: return "supports";
    case Category::strict: return "strict";
    case Category::never: return "never";
    }
    return "?";
}

inline UpdateRule parse_rule(const std::string& s) {
    if (s == "pc" || s == "PC") return UpdateRule::PC;
    if (s == "db" || s == "DB") return UpdateRule::DB;
    if (s == "bd" || s == "BD") return UpdateRule::BD;
    throw InvalidParameter("unknown update rule '" + s + "'");
}
inline PayoffScheme parse_scheme(const std::string& s) {
    if (s == "avg" || s == "averaged") return PayoffScheme::averaged;
    if (s == "acc" || s == "accumulated") return PayoffScheme::accumulated;
    throw InvalidParameter("unknown payoff scheme '" + s + "'");
}
inline GameKind parse_game(const std::string& s) {
    if (s == "pgg" || s == "PGG") return GameKind::PGG;
    if (s == "dg" || s == "DG") return GameKind::DG;
    throw InvalidParameter("unknown game '" + s + "'");
}

inline constexpr UpdateRule kRules[] = {UpdateRule::PC, UpdateRule::DB, UpdateRule::BD};
inline constexpr PayoffScheme kSchemes[] = {PayoffScheme::averaged, PayoffScheme::accumulated};
inline constexpr GameKind kGames[] = {GameKind::PGG, GameKind::DG};

struct CriticalValue {
    double numerator = 0;
    double denominator = 0;
    double value = 0;  // signed infinity when the denominator vanishes
    Category category = Category::never;
    std::string exact;  // "p/q" when computed in rational arithmetic
};

inline Category classify_value(double v) {
    if (std::isnan(v) || v <= 0 || v > kInfinityProxy) return Category::never;
    return v <= kSupportLimit ? Category::supports : Category::strict;
}

inline Category classify(const CriticalValue& v) {
    if (v.denominator == 0) return Category::never;
    return classify_value(v.value);
}

inline CriticalValue make_critical(double num, double den) {
    CriticalValue c{num, den, 0, Category::never, {}};
    if (den == 0) c.value = num == 0 ? std::numeric_limits<double>::quiet_NaN()
                                     : std::copysign(std::numeric_limits<double>::infinity(), num);
    else c.value = num / den;
    c.category = classify(c);
    return c;
}

inline CriticalValue make_critical(const mpq_class& num, const mpq_class& den) {
    CriticalValue c{num.get_d(), den.get_d(), 0, Category::never, {}};
    if (den == 0) {
        c.value = num == 0 ? std::numeric_limits<double>::quiet_NaN()
                           : std::copysign(std::numeric_limits<double>::infinity(), c.numerator);
        c.exact = sgn(num) > 0 ? "inf" : (sgn(num) < 0 ? "-inf" : "nan");
        return c;
    }
    mpq_class v = num / den;
    c.value = v.get_d();
    c.exact = v.get_str();
    if (v <= 0 || v > 1000) c.category = Category::never;
    else c.category = v <= 30 ? Category::supports : Category::strict;
    return c;
}

// Upsilon_ij from a tau (or tau-tilde) table; generally asymmetric, zero diagonal.
template <class T>
T upsilon_entry(const Graph& g, const PairTable<T>& t, int i, int j) {
    if (i == j) return T(0);
    T first = t(i, j);
    T second = T(0);
    for (int l : g.neighbors(i)) {
        T d = t(j, l) - t(i, l);
        first += d;
        T inner = d;
        for (int m : g.neighbors(l)) inner += t(j, m) - t(i, m);
        second += inner * ratio<T>(1, g.degree(l) + 1);
    }
    const long gi = g.degree(i) + 1;
    return (first * ratio<T>(1, gi) + second) * ratio<T>(1, gi);
}

template <class T>
PairTable<T> upsilon_table(const Graph& g, const PairTable<T>& t) {
    PairTable<T> u(g.size());
    for (int i = 0; i < g.size(); ++i)
        for (int j = 0; j < g.size(); ++j) u(i, j) = upsilon_entry(g, t, i, j);
    return u;
}

enum class WeightFamily {
    walk,            // k_i p^(n)_ij
    walk_group,      // k_i (k_i + 1) p^(n)_ij
    walk_degree,     // k_i^2 p^(n)_ij
    inverse,         // k_ij / (k_i k_j)
    inverse_group,   // k_ij (k_i + 1) / (k_i k_j)
    reverse_step,    // p_ji
};

// Nonzero weights W_ij as sparse rows.
template <class T>
SparseRows<T> pair_weights(const Graph& g, WalkKernel<T>& kernel, int order, WeightFamily f) {
    const int n = g.size();
    SparseRows<T> w(n);
    switch (f) {
    case WeightFamily::walk:
    case WeightFamily::walk_group:
    case WeightFamily::walk_degree: {
        for (int i = 0; i < n; ++i) {
            const long k = g.degree(i);
            const long s = f == WeightFamily::walk ? k : (f == WeightFamily::walk_group ? k * (k + 1) : k * k);
            if (order == 0) {
                w[i].emplace_back(i, T(s));
                continue;
            }
            for (const auto& [j, pij] : kernel.power(order)[i]) w[i].emplace_back(j, pij * T(s));
        }
        break;
    }
    case WeightFamily::inverse:
    case WeightFamily::inverse_group:
        for (int i = 0; i < n; ++i)
            for (int j : g.neighbors(i)) {
                T v = ratio<T>(1, static_cast<long>(g.degree(i)) * g.degree(j));
                if (f == WeightFamily::inverse_group) v *= T(g.degree(i) + 1);
                w[i].emplace_back(j, v);
            }
        break;
    case WeightFamily::reverse_step:
        for (int i = 0; i < n; ++i)
            for (int j : g.neighbors(i)) w[i].emplace_back(j, ratio<T>(1, g.degree(j)));
        break;
    }
    return w;
}

template <class T>
T weighted_sum(const SparseRows<T>& w, const PairTable<T>& t) {
    T s = T(0);
    for (int i = 0; i < static_cast<int>(w.size()); ++i)
        for (const auto& [j, wij] : w[i]) s += wij * t(i, j);
    return s;
}

// tau^(n) = sum_ij W_ij t_ij with the chosen weight family (Upsilon^(n) when fed an Upsilon table).
template <class T>
T tau_weighted(const Graph& g, const PairTable<T>& t, int order, WeightFamily f = WeightFamily::walk) {
    WalkKernel<T> kernel(g, std::max(order, 1));
    return weighted_sum(pair_weights(g, kernel, order, f), t);
}

// Analysis of one graph: both coalescence tables are solved lazily and shared by all
// twelve thresholds. T is double or mpq_class.
template <class T>
class ThresholdEngine {
public:
    explicit ThresholdEngine(const Graph& g, SolverOptions opt = {})
        : g_(g), opt_(opt), kernel_(g, 2) {}

    const Graph& graph() const { return g_; }

    const CoalescenceTable<T>& tau() {
        if (!tau_) tau_ = solve(TauVariant::plain);
        return *tau_;
    }
    const CoalescenceTable<T>& tau_bd() {
        if (!tau_bd_) tau_bd_ = solve(TauVariant::birth_death);
        return *tau_bd_;
    }

    SparseRows<T> weights(GameKind game, UpdateRule rule, PayoffScheme scheme) {
        const bool acc = scheme == PayoffScheme::accumulated;
        const bool pgg = game == GameKind::PGG;
        switch (rule) {
        case UpdateRule::PC:
        case UpdateRule::DB: {
            int order = rule == UpdateRule::PC ? 1 : 2;
            WeightFamily f = !acc ? WeightFamily::walk : (pgg ? WeightFamily::walk_group : WeightFamily::walk_degree);
            return pair_weights(g_, kernel_, order, f);
        }
        case UpdateRule::BD: {
            WeightFamily f = !acc ? WeightFamily::inverse : (pgg ? WeightFamily::inverse_group : WeightFamily::reverse_step);
            return pair_weights(g_, kernel_, 1, f);
        }
        }
        return {};
    }

    // Returns (numerator, denominator) of r*.
    std::pair<T, T> pgg_terms(UpdateRule rule, PayoffScheme scheme) {
        const auto& t = rule == UpdateRule::BD ? tau_bd() : tau();
        auto w = weights(GameKind::PGG, rule, scheme);
        T num = T(0), den = T(0);
        for (int i = 0; i < g_.size(); ++i)
            for (const auto& [j, wij] : w[i]) {
                if (i == j) continue;
                num += wij * t(i, j);
                den += wij * upsilon_entry(g_, t, i, j);
            }
        return {num, den};
    }

    // Returns (numerator, denominator) of (b/c)*: sum W t over sum_ijl W_ij p_il (t_jl - t_il).
    std::pair<T, T> dg_terms(UpdateRule rule, PayoffScheme scheme) {
        const auto& t = rule == UpdateRule::BD ? tau_bd() : tau();
        auto w = weights(GameKind::DG, rule, scheme);
        T num = T(0), den = T(0);
        for (int i = 0; i < g_.size(); ++i) {
            const T pi = ratio<T>(1, g_.degree(i));
            for (const auto& [j, wij] : w[i]) {
                num += wij * t(i, j);
                T inner = T(0);
                for (int l : g_.neighbors(i)) inner += t(j, l) - t(i, l);
                den += wij * pi * inner;
            }
        }
        return {num, den};
    }

    CriticalValue critical_r(UpdateRule rule, PayoffScheme scheme) {
        auto [num, den] = pgg_terms(rule, scheme);
        return make_critical(num, den);
    }

    CriticalValue critical_bc(UpdateRule rule, PayoffScheme scheme) {
        auto [num, den] = dg_terms(rule, scheme);
        return make_critical(num, den);
    }

    CriticalValue critical(GameKind game, UpdateRule rule, PayoffScheme scheme) {
        return game == GameKind::PGG ? critical_r(rule, scheme) : critical_bc(rule, scheme);
    }

private:
    CoalescenceTable<T> solve(TauVariant v) {
        if constexpr (std::is_same_v<T, double>)
            return v == TauVariant::plain ? solve_tau(g_, opt_) : solve_tau_bd(g_, opt_);
        else
            return solve_tau_exact(g_, v);
    }

    Graph g_;
    SolverOptions opt_;
    WalkKernel<T> kernel_;
    std::optional<CoalescenceTable<T>> tau_;
    std::optional<CoalescenceTable<T>> tau_bd_;
};

inline CriticalValue critical_r(const Graph& g, UpdateRule rule, PayoffScheme scheme, SolverOptions opt = {}) {
    return ThresholdEngine<double>(g, opt).critical_r(rule, scheme);
}

inline CriticalValue critical_bc(const Graph& g, UpdateRule rule, PayoffScheme scheme, SolverOptions opt = {}) {
    return ThresholdEngine<double>(g, opt).critical_bc(rule, scheme);
}

inline CriticalValue critical_r_exact(const Graph& g, UpdateRule rule, PayoffScheme scheme) {
    return ThresholdEngine<mpq_class>(g).critical_r(rule, scheme);
}

inline CriticalValue critical_bc_exact(const Graph& g, UpdateRule rule, PayoffScheme scheme) {
    return ThresholdEngine<mpq_class>(g).critical_bc(rule, scheme);
}

} // namespace coopnet
