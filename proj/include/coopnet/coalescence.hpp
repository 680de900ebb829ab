#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

#include "coopnet/graph.hpp"
#include "coopnet/scalar.hpp"

namespace coopnet {

// Dense N x N table of pairwise values, row-major.
template <class T>
struct PairTable {
    int n = 0;
    std::vector<T> values;

    PairTable() = default;
    explicit PairTable(int n) : n(n), values(static_cast<std::size_t>(n) * n, T(0)) {}

    const T& operator()(int i, int j) const { return values[static_cast<std::size_t>(i) * n + j]; }
    T& operator()(int i, int j) { return values[static_cast<std::size_t>(i) * n + j]; }
};

enum class TauVariant { plain, birth_death };

template <class T>
struct CoalescenceTable : PairTable<T> {
    TauVariant variant = TauVariant::plain;
    double residual = 0;  // max equation defect of the stored solution
    int iterations = 0;   // 0 for direct solves

    CoalescenceTable() = default;
    CoalescenceTable(int n, TauVariant v) : PairTable<T>(n), variant(v) {}
};

struct SolverOptions {
    int dense_limit = 40;          // N above this uses conjugate gradients
    double tolerance = 1e-12;      // on max defect, relative to max(1, max tau)
    long max_iterations = 1000000;
};

// Index of the unordered pair {i, j}, i != j, in row-major upper-triangle order.
inline std::int64_t pair_index(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    return static_cast<std::int64_t>(i) * (2 * n - i - 1) / 2 + (j - i - 1);
}

namespace detail {

// Symmetrized coalescence equations. Row {i,j} reads
//   diag * t_ij - sum_{l in N_i, l != j} ci * t_jl - sum_{l in N_j, l != i} cj * t_il = rhs
// and is the defining fixed-point equation multiplied by a positive pair weight, so that
// |residual| / diag is the defect of the original equation.
struct PlainSystem {
    const Graph& g;
    double diag(int i, int j) const { return 2.0 * g.degree(i) * g.degree(j); }
    double ci(int i, int j, int) const { (void)i; return g.degree(j); }
    double cj(int i, int, int) const { return g.degree(i); }
    double rhs(int i, int j) const { return diag(i, j); }
};

struct BirthDeathSystem {
    const Graph& g;
    std::vector<double> s;  // s_i = sum_{l in N_i} 1/k_l
    explicit BirthDeathSystem(const Graph& g) : g(g), s(g.size(), 0.0) {
        for (int i = 0; i < g.size(); ++i)
            for (int l : g.neighbors(i)) s[i] += 1.0 / g.degree(l);
    }
    double w(int i, int j) const { return 1.0 / (static_cast<double>(g.degree(i)) * g.degree(j)); }
    double diag(int i, int j) const { return (s[i] + s[j]) * w(i, j); }
    double ci(int i, int j, int l) const { return w(i, j) / g.degree(l); }
    double cj(int i, int j, int l) const { return w(i, j) / g.degree(l); }
    double rhs(int i, int j) const { return w(i, j); }
};

template <class Sys>
void apply_system(const Sys& sys, const std::vector<double>& x, std::vector<double>& y) {
    const Graph& g = sys.g;
    const int n = g.size();
    std::int64_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++idx) {
            double acc = sys.diag(i, j) * x[idx];
            for (int l : g.neighbors(i))
                if (l != j) acc -= sys.ci(i, j, l) * x[pair_index(n, j, l)];
            for (int l : g.neighbors(j))
                if (l != i) acc -= sys.cj(i, j, l) * x[pair_index(n, i, l)];
            y[idx] = acc;
        }
}

template <class Sys>
double max_scaled_defect(const Sys& sys, const std::vector<double>& x, std::vector<double>& scratch) {
    apply_system(sys, x, scratch);
    const int n = sys.g.size();
    double worst = 0;
    std::int64_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++idx)
            worst = std::max(worst, std::abs(sys.rhs(i, j) - scratch[idx]) / sys.diag(i, j));
    return worst;
}

template <class Sys>
std::vector<double> solve_dense(const Sys& sys) {
    const Graph& g = sys.g;
    const int n = g.size();
    const std::int64_t m = static_cast<std::int64_t>(n) * (n - 1) / 2;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd b(m);
    std::int64_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++idx) {
            a(idx, idx) = sys.diag(i, j);
            b(idx) = sys.rhs(i, j);
            for (int l : g.neighbors(i))
                if (l != j) a(idx, pair_index(n, j, l)) -= sys.ci(i, j, l);
            for (int l : g.neighbors(j))
                if (l != i) a(idx, pair_index(n, i, l)) -= sys.cj(i, j, l);
        }
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    Eigen::VectorXd x;
    if (llt.info() == Eigen::Success) {
        x = llt.solve(b);
        // one step of iterative refinement
        Eigen::VectorXd r = b - a * x;
        x += llt.solve(r);
    } else {
        x = a.partialPivLu().solve(b);
    }
    return {x.data(), x.data() + m};
}

// Jacobi-preconditioned conjugate gradients, restarted from the current iterate whenever
// the recursive residual claims convergence but the true defect does not agree.
template <class Sys>
std::vector<double> solve_cg(const Sys& sys, const SolverOptions& opt, int& iterations) {
    const Graph& g = sys.g;
    const int n = g.size();
    const std::int64_t m = static_cast<std::int64_t>(n) * (n - 1) / 2;
    std::vector<double> x(m, 0.0), r(m), z(m), p(m), q(m), dinv(m), b(m);
    std::int64_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++idx) {
            dinv[idx] = 1.0 / sys.diag(i, j);
            b[idx] = sys.rhs(i, j);
        }
    iterations = 0;
    for (int restart = 0; restart < 50; ++restart) {
        apply_system(sys, x, q);
        for (std::int64_t k = 0; k < m; ++k) r[k] = b[k] - q[k];
        double xmax = 0, dmax = 0;
        for (std::int64_t k = 0; k < m; ++k) {
            xmax = std::max(xmax, std::abs(x[k]));
            dmax = std::max(dmax, std::abs(r[k]) * dinv[k]);
        }
        const double target = opt.tolerance * std::max(1.0, xmax);
        if (dmax <= target) return x;
        for (std::int64_t k = 0; k < m; ++k) p[k] = z[k] = r[k] * dinv[k];
        double rz = 0;
        for (std::int64_t k = 0; k < m; ++k) rz += r[k] * z[k];
        bool claimed = false;
        while (iterations < opt.max_iterations) {
            ++iterations;
            apply_system(sys, p, q);
            double pq = 0;
            for (std::int64_t k = 0; k < m; ++k) pq += p[k] * q[k];
            double alpha = rz / pq;
            double worst = 0;
            xmax = 0;
            for (std::int64_t k = 0; k < m; ++k) {
                x[k] += alpha * p[k];
                r[k] -= alpha * q[k];
                z[k] = r[k] * dinv[k];
                worst = std::max(worst, std::abs(z[k]));
                xmax = std::max(xmax, std::abs(x[k]));
            }
            if (worst <= 0.5 * opt.tolerance * std::max(1.0, xmax)) {
                claimed = true;
                break;
            }
            double rz_new = 0;
            for (std::int64_t k = 0; k < m; ++k) rz_new += r[k] * z[k];
            double beta = rz_new / rz;
            rz = rz_new;
            for (std::int64_t k = 0; k < m; ++k) p[k] = z[k] + beta * p[k];
        }
        if (!claimed) break;
    }
    apply_system(sys, x, q);
    double dmax = 0, xmax = 0;
    for (std::int64_t k = 0; k < m; ++k) {
        dmax = std::max(dmax, std::abs(b[k] - q[k]) * dinv[k]);
        xmax = std::max(xmax, std::abs(x[k]));
    }
    if (dmax <= opt.tolerance * std::max(1.0, xmax)) return x;
    throw SolverDivergence("conjugate gradients stopped after " + std::to_string(iterations) +
                           " iterations with max defect " + std::to_string(dmax));
}

template <class T>
CoalescenceTable<T> expand(int n, TauVariant v, const std::vector<T>& x) {
    CoalescenceTable<T> t(n, v);
    std::int64_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++idx) t(i, j) = t(j, i) = x[idx];
    return t;
}

template <class Sys>
CoalescenceTable<double> solve_float(const Sys& sys, TauVariant v, const SolverOptions& opt) {
    const int n = sys.g.size();
    if (n < 2) throw InvalidParameter("coalescence times need N >= 2");
    int iterations = 0;
    std::vector<double> x = n <= opt.dense_limit ? solve_dense(sys) : solve_cg(sys, opt, iterations);
    std::vector<double> scratch(x.size());
    auto t = expand(n, v, x);
    t.residual = max_scaled_defect(sys, x, scratch);
    t.iterations = iterations;
    return t;
}

// Fraction-free Gaussian elimination on an integer system; returns the exact solution.
inline std::vector<mpq_class> bareiss_solve(std::vector<std::vector<mpz_class>> a, std::vector<mpz_class> b) {
    const std::size_t m = a.size();
    for (std::size_t r = 0; r < m; ++r) a[r].push_back(b[r]);
    mpz_class prev = 1;
    for (std::size_t k = 0; k < m; ++k) {
        if (a[k][k] == 0) {
            std::size_t s = k + 1;
            while (s < m && a[s][k] == 0) ++s;
            if (s == m) throw SolverDivergence("singular coalescence system");
            std::swap(a[k], a[s]);
        }
        for (std::size_t i = k + 1; i < m; ++i) {
            for (std::size_t j = k + 1; j <= m; ++j) {
                mpz_class v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = std::move(v);
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    std::vector<mpq_class> x(m);
    for (std::size_t kk = m; kk-- > 0;) {
        mpq_class s(a[kk][m]);
        for (std::size_t j = kk + 1; j < m; ++j)
            if (a[kk][j] != 0) s -= mpq_class(a[kk][j]) * x[j];
        x[kk] = s / mpq_class(a[kk][kk]);
    }
    return x;
}

inline long lcm_of_degrees(const Graph& g) {
    long L = 1;
    for (int k : g.degrees()) L = std::lcm(L, static_cast<long>(k));
    return L;
}

} // namespace detail

// tau_ij = 1 + (1/2) sum_l (p_il tau_jl + p_jl tau_il), tau_ii = 0.
inline CoalescenceTable<double> solve_tau(const Graph& g, const SolverOptions& opt = {}) {
    return detail::solve_float(detail::PlainSystem{g}, TauVariant::plain, opt);
}

// (s_i + s_j) tt_ij = 1 + sum_{l in N_i} tt_jl / k_l + sum_{l in N_j} tt_il / k_l, s_i = sum_{l in N_i} 1/k_l.
inline CoalescenceTable<double> solve_tau_bd(const Graph& g, const SolverOptions& opt = {}) {
    return detail::solve_float(detail::BirthDeathSystem(g), TauVariant::birth_death, opt);
}

// Exact rational solutions via integer elimination. Cost grows as N^6; intended for N <= ~15.
inline CoalescenceTable<mpq_class> solve_tau_exact(const Graph& g, TauVariant v = TauVariant::plain) {
    const int n = g.size();
    if (n < 2) throw InvalidParameter("coalescence times need N >= 2");
    const std::int64_t m = static_cast<std::int64_t>(n) * (n - 1) / 2;
    std::vector<std::vector<mpz_class>> a(m, std::vector<mpz_class>(m));
    std::vector<mpz_class> b(m);
    const long L = detail::lcm_of_degrees(g);
    std::int64_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++idx) {
            const long ki = g.degree(i), kj = g.degree(j);
            if (v == TauVariant::plain) {
                a[idx][idx] = 2 * ki * kj;
                b[idx] = 2 * ki * kj;
                for (int l : g.neighbors(i))
                    if (l != j) a[idx][pair_index(n, j, l)] -= kj;
                for (int l : g.neighbors(j))
                    if (l != i) a[idx][pair_index(n, i, l)] -= ki;
            } else {
                // row scaled by L instead of the symmetric weight; elimination does not need symmetry
                long d = 0;
                for (int l : g.neighbors(i)) d += L / g.degree(l);
                for (int l : g.neighbors(j)) d += L / g.degree(l);
                a[idx][idx] = d;
                b[idx] = L;
                for (int l : g.neighbors(i))
                    if (l != j) a[idx][pair_index(n, j, l)] -= L / g.degree(l);
                for (int l : g.neighbors(j))
                    if (l != i) a[idx][pair_index(n, i, l)] -= L / g.degree(l);
            }
        }
    auto x = detail::bareiss_solve(std::move(a), std::move(b));
    auto t = detail::expand(n, v, x);
    t.residual = 0;
    return t;
}

inline CoalescenceTable<mpq_class> solve_tau_bd_exact(const Graph& g) {
    return solve_tau_exact(g, TauVariant::birth_death);
}

// Max defect of a table against its defining fixed-point equations, evaluated directly.
template <class T>
T equation_defect(const Graph& g, const PairTable<T>& t, TauVariant v) {
    const int n = g.size();
    T worst = T(0);
    std::vector<T> s(n, T(0));
    for (int i = 0; i < n; ++i)
        for (int l : g.neighbors(i)) s[i] += ratio<T>(1, g.degree(l));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            T d;
            if (i == j) {
                d = t(i, j);
            } else if (v == TauVariant::plain) {
                T rhs = T(1);
                for (int l : g.neighbors(i)) rhs += ratio<T>(1, 2 * g.degree(i)) * t(j, l);
                for (int l : g.neighbors(j)) rhs += ratio<T>(1, 2 * g.degree(j)) * t(i, l);
                d = t(i, j) - rhs;
            } else {
                T num = T(1);
                for (int l : g.neighbors(i)) num += t(j, l) * ratio<T>(1, g.degree(l));
                for (int l : g.neighbors(j)) num += t(i, l) * ratio<T>(1, g.degree(l));
                d = t(i, j) - num / (s[i] + s[j]);
            }
            if (d < 0) d = -d;
            if (d > worst) worst = d;
        }
    return worst;
}

} // namespace coopnet
