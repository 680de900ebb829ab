#pragma once

#include <string>

#include <gmpxx.h>

#include "coopnet/theory.hpp"

// Closed-form critical synergy factors for structured families, evaluated in exact
// rational arithmetic. Polynomials are written out term by term.

namespace coopnet {

enum class OracleDomain { finite, limit };

struct OracleResult {
    mpq_class exact;
    double value = 0;
    OracleDomain domain = OracleDomain::finite;
    std::string note;
};

namespace detail {

inline OracleResult oracle_ratio(const mpz_class& num, const mpz_class& den, std::string note,
                                 OracleDomain d = OracleDomain::finite) {
    if (den == 0) throw DomainError("closed form has a vanishing denominator: " + note);
    mpq_class q(num, den);
    q.canonicalize();
    return {q, q.get_d(), d, std::move(note)};
}

inline OracleResult oracle_limit(long num, long den, std::string note) {
    mpq_class q{mpz_class(num), mpz_class(den)};
    q.canonicalize();
    return {q, q.get_d(), OracleDomain::limit, std::move(note)};
}

} // namespace detail

// Regular graph of N nodes and group size G = k + 1; p3 is the three-step return probability.
inline OracleResult regular_r(long N, long G, const mpq_class& p3, UpdateRule rule, PayoffScheme) {
    if (G < 3) throw DomainError("regular oracle needs G >= 3");
    if (N <= G) throw DomainError("regular oracle needs N > G");
    mpq_class v;
    if (rule == UpdateRule::DB) {
        mpq_class den = mpq_class(N) * (G - 1) * (G - 1) * p3 + N * (G + 2) - 2 * G * G;
        if (den == 0) throw DomainError("regular DB denominator vanishes");
        v = mpq_class((N - 2) * G * G) / den;
    } else {
        v = mpq_class(mpz_class((N - 1) * G), mpz_class(N - G));
    }
    v.canonicalize();
    return {v, v.get_d(), OracleDomain::finite, "regular graph"};
}

// Same with the clustering coefficient in place of p3: (G-1)^2 p3 = (G-2) C.
inline OracleResult regular_r_clustering(long N, long G, const mpq_class& C, UpdateRule rule, PayoffScheme s) {
    mpq_class p3 = C * (G - 2) / ((G - 1) * (G - 1));
    return regular_r(N, G, p3, rule, s);
}

inline OracleResult star_r(long n_leaves, UpdateRule rule, PayoffScheme scheme) {
    if (n_leaves < 2) throw DomainError("star oracle needs n >= 2");
    const mpz_class n = n_leaves;
    const bool acc = scheme == PayoffScheme::accumulated;
    switch (rule) {
    case UpdateRule::PC:
        if (!acc) return detail::oracle_ratio(4 * (3 * n - 1) * (n + 1), 3 * n * n - 2 * n - 1, "star PC avg");
        return detail::oracle_ratio((3 * n - 1) * (n + 3), 2 * n * (n - 1), "star PC acc");
    case UpdateRule::DB:
        return detail::oracle_ratio(4, 1, acc ? "star DB acc" : "star DB avg");
    case UpdateRule::BD:
        if (!acc)
            return detail::oracle_ratio(4 * n * n * n + 4 * n + 8, n * n * n - 2 * n * n + 5 * n - 4, "star BD avg");
        return detail::oracle_ratio(2 * (n + 3) * (n * n - n + 2), n * n * n - n * n + 3 * n - 3, "star BD acc");
    }
    throw DomainError("unknown rule");
}

// Two adjacent hubs, each with n private leaves.
inline OracleResult hub2hub_r(long n_leaves, UpdateRule rule, PayoffScheme scheme) {
    if (n_leaves < 1) throw DomainError("hub-to-hub oracle needs n >= 1");
    const mpz_class n = n_leaves;
    const mpz_class n2 = n * n, n3 = n2 * n, n4 = n3 * n, n5 = n4 * n, n6 = n5 * n, n7 = n6 * n, n8 = n7 * n;
    const mpz_class s2 = (n + 2) * (n + 2);
    const bool acc = scheme == PayoffScheme::accumulated;
    switch (rule) {
    case UpdateRule::PC:
        if (!acc)
            return detail::oracle_ratio(2 * s2 * (24 * n3 + 50 * n2 + 27 * n + 5),
                                        n * (18 * n4 + 79 * n3 + 131 * n2 + 98 * n + 20), "hub2hub PC avg");
        return detail::oracle_ratio(14 * n5 + 111 * n4 + 288 * n3 + 303 * n2 + 128 * n + 20,
                                    n * (10 * n4 + 43 * n3 + 70 * n2 + 49 * n + 10), "hub2hub PC acc");
    case UpdateRule::DB:
        if (!acc)
            return detail::oracle_ratio(4 * s2 * (10 * n3 + 27 * n2 + 22 * n + 5),
                                        22 * n5 + 131 * n4 + 287 * n3 + 296 * n2 + 148 * n + 20, "hub2hub DB avg");
        return detail::oracle_ratio(4 * n5 + 70 * n4 + 260 * n3 + 370 * n2 + 216 * n + 40,
                                    4 * n5 + 40 * n4 + 115 * n3 + 141 * n2 + 74 * n + 10, "hub2hub DB acc");
    case UpdateRule::BD:
        if (!acc)
            return detail::oracle_ratio(
                2 * s2 * (4 * n6 + 11 * n5 + 26 * n4 + 32 * n3 + 30 * n2 + 19 * n + 5),
                n * (2 * n7 + 9 * n6 + 32 * n5 + 69 * n4 + 101 * n3 + 107 * n2 + 66 * n + 20), "hub2hub BD avg");
        return detail::oracle_ratio(
            2 * n8 + 18 * n7 + 66 * n6 + 149 * n5 + 231 * n4 + 244 * n3 + 191 * n2 + 96 * n + 20,
            n * (n7 + 5 * n6 + 18 * n5 + 39 * n4 + 56 * n3 + 56 * n2 + 33 * n + 10), "hub2hub BD acc");
    }
    throw DomainError("unknown rule");
}

// m fully connected hubs, each with n private leaves. BD is available as n -> infinity limits only.
inline OracleResult mhub_r(long m_hubs, long n_leaves, UpdateRule rule, PayoffScheme scheme) {
    if (m_hubs < 2 || n_leaves < 1) throw DomainError("m-hub oracle needs m >= 2, n >= 1");
    if (rule == UpdateRule::BD)
        throw DomainError("m-hub BD closed form is provided as a limit only (mhub_limit)");
    const mpz_class m = m_hubs, n = n_leaves;
    const mpz_class m2 = m * m, m3 = m2 * m, m4 = m3 * m, m5 = m4 * m, m6 = m5 * m;
    const mpz_class n2 = n * n, n3 = n2 * n, n4 = n3 * n, n5 = n4 * n;
    const mpz_class q = 2 * m2 + 4 * m * n - 2 * m + 2 * n2 - n + 1;
    const mpz_class s2 = (m + n) * (m + n);
    const bool acc = scheme == PayoffScheme::accumulated;
    if (rule == UpdateRule::PC && !acc) {
        mpz_class num = 2 * s2 *
                        (2 * m4 + 11 * m3 * n - 6 * m3 + 20 * m2 * n2 - 17 * m2 * n + 7 * m2 + 12 * m * n3 -
                         12 * m * n2 + 3 * m * n - 4 * m - 6 * n2 + n + 1);
        mpz_class den = n * (3 * m5 + 18 * m4 * n - 5 * m4 + 39 * m3 * n2 - 28 * m3 * n + 6 * m3 + 36 * m2 * n3 -
                             51 * m2 * n2 + 19 * m2 * n - 19 * m2 + 12 * m * n4 - 34 * m * n3 + 16 * m * n2 -
                             28 * m * n + 18 * m - 6 * n4 + 3 * n3 - 9 * n2 + 14 * n - 4);
        return detail::oracle_ratio(num, den, "m-hub PC avg");
    }
    if (rule == UpdateRule::DB && !acc) {
        mpz_class num = 4 * s2 * (2 * m3 + 6 * m2 * n - 4 * m2 + 6 * m * n2 - 7 * m * n + 3 * m + 2 * n3 - 3 * n2 + 2 * n - 1) *
                        (2 * m4 + 11 * m3 * n - 8 * m3 + 20 * m2 * n2 - 25 * m2 * n + 11 * m2 + 12 * m * n3 -
                         22 * m * n2 + 12 * m * n - 7 * m - 4 * n3 - 2 * n2 - 2 * n + 2);
        mpz_class den = n * q *
                        (9 * m6 + 63 * m5 * n - 30 * m5 + 171 * m4 * n2 - 185 * m4 * n + 54 * m4 + 225 * m3 * n3 -
                         414 * m3 * n2 + 246 * m3 * n - 99 * m3 + 144 * m2 * n4 - 413 * m2 * n3 + 384 * m2 * n2 -
                         256 * m2 * n + 114 * m2 + 36 * m * n5 - 182 * m * n4 + 242 * m * n3 - 215 * m * n2 +
                         168 * m * n - 56 * m - 28 * n5 + 50 * n4 - 58 * n3 + 62 * n2 - 40 * n + 8);
        return detail::oracle_ratio(num, den, "m-hub DB avg");
    }
    if (rule == UpdateRule::PC) {
        mpz_class num = 2 * (2 * m3 + 6 * m2 * n - 2 * m2 + 6 * m * n2 - 3 * m * n + m + 2 * n3 - n2 + n) *
                        (2 * m5 + 12 * m4 * n - 6 * m4 + 26 * m3 * n2 - 22 * m3 * n + 7 * m3 + 24 * m2 * n3 -
                         24 * m2 * n2 + 16 * m2 * n - 4 * m2 + 8 * m * n4 - 8 * m * n3 + 10 * m * n2 - 12 * m * n +
                         m - 2 * n4 + 3 * n3 - 10 * n2 + 3 * n);
        mpz_class den = n * q *
                        (3 * m5 + 18 * m4 * n - 2 * m4 + 39 * m3 * n2 - 17 * m3 * n - 8 * m3 + 36 * m2 * n3 -
                         37 * m2 * n2 - 18 * m2 * n + m2 + 12 * m * n4 - 26 * m * n3 - 14 * m * n2 + 5 * m * n +
                         10 * m - 4 * n4 - 6 * n3 + 4 * n2 + 8 * n - 4);
        return detail::oracle_ratio(num, den, "m-hub PC acc");
    }
    mpz_class num = 2 *
                    (2 * m4 + 8 * m3 * n - 4 * m3 + 12 * m2 * n2 - 11 * m2 * n + 3 * m2 + 8 * m * n3 - 10 * m * n2 +
                     5 * m * n - m + 2 * n4 - 3 * n3 + 2 * n2 - n) *
                    (2 * m5 + 11 * m4 * n - 8 * m4 + 21 * m3 * n2 - 27 * m3 * n + 11 * m3 + 16 * m2 * n3 -
                     25 * m2 * n2 + 23 * m2 * n - 7 * m2 + 4 * m * n4 - 6 * m * n3 + 14 * m * n2 - 17 * m * n +
                     2 * m - 4 * n4 + 6 * n3 - 18 * n2 + 2 * n);
    mpz_class den = n * q *
                    (3 * m6 + 20 * m5 * n - 4 * m5 + 51 * m4 * n2 - 33 * m4 * n - 5 * m4 + 62 * m3 * n3 -
                     81 * m3 * n2 + 7 * m3 * n - 3 * m3 + 36 * m2 * n4 - 80 * m2 * n3 + 38 * m2 * n2 - 15 * m2 * n +
                     23 * m2 + 8 * m * n5 - 36 * m * n4 + 32 * m * n3 - 22 * m * n2 + 23 * m * n - 18 * m - 8 * n5 +
                     8 * n4 - 10 * n3 + 6 * n2 - 6 * n + 4);
    return detail::oracle_ratio(num, den, "m-hub DB acc");
}

// Hub joined to n fan blades (adjacent leaf pairs).
inline OracleResult ceiling_fan_r(long n_fans, UpdateRule rule, PayoffScheme scheme) {
    if (n_fans < 2) throw DomainError("ceiling fan oracle needs n >= 2");
    const mpz_class n = n_fans;
    const mpz_class n2 = n * n, n3 = n2 * n, n4 = n3 * n, n5 = n4 * n;
    const mpz_class s = (2 * n + 1) * (2 * n + 1);
    const bool acc = scheme == PayoffScheme::accumulated;
    switch (rule) {
    case UpdateRule::PC:
        if (!acc) return detail::oracle_ratio(9 * s * (7 * n - 2), 2 * (24 * n3 - 7 * n2 - 13 * n - 4), "fan PC avg");
        return detail::oracle_ratio(16 * n2 + 41 * n - 12, 2 * (4 * n2 - 3 * n - 1), "fan PC acc");
    case UpdateRule::DB:
        if (!acc) return detail::oracle_ratio(9 * s * (12 * n - 7), 2 * (64 * n3 - 7 * n2 - 43 * n - 14), "fan DB avg");
        return detail::oracle_ratio(16 * n2 + 86 * n - 57, 2 * (4 * n2 + 7 * n - 11), "fan DB acc");
    case UpdateRule::BD:
        if (!acc)
            return detail::oracle_ratio(9 * s * (6 * n3 + 5 * n + 4), 2 * (20 * n5 + 16 * n3 + 10 * n2 - 33 * n - 13),
                                        "fan BD avg");
        return detail::oracle_ratio(3 * (4 * n4 + 14 * n3 + 2 * n2 + 17 * n + 8), 2 * (2 * n4 + 2 * n3 + n2 - n - 4),
                                    "fan BD acc");
    }
    throw DomainError("unknown rule");
}

// Closed-form n -> infinity limits.
inline OracleResult star_limit(UpdateRule rule, PayoffScheme scheme) {
    if (scheme == PayoffScheme::averaged) return detail::oracle_limit(4, 1, "star limit");
    switch (rule) {
    case UpdateRule::PC: return detail::oracle_limit(3, 2, "star PC acc limit");
    case UpdateRule::DB: return detail::oracle_limit(4, 1, "star DB acc limit");
    case UpdateRule::BD: return detail::oracle_limit(2, 1, "star BD acc limit");
    }
    throw DomainError("unknown rule");
}

inline OracleResult hub2hub_limit(UpdateRule rule, PayoffScheme scheme) {
    const bool acc = scheme == PayoffScheme::accumulated;
    switch (rule) {
    case UpdateRule::PC: return acc ? detail::oracle_limit(7, 5, "hub2hub PC acc limit") : detail::oracle_limit(8, 3, "hub2hub PC avg limit");
    case UpdateRule::DB: return acc ? detail::oracle_limit(1, 1, "hub2hub DB acc limit") : detail::oracle_limit(20, 11, "hub2hub DB avg limit");
    case UpdateRule::BD: return acc ? detail::oracle_limit(2, 1, "hub2hub BD acc limit") : detail::oracle_limit(4, 1, "hub2hub BD avg limit");
    }
    throw DomainError("unknown rule");
}

inline OracleResult mhub_limit(long m, UpdateRule rule, PayoffScheme scheme) {
    if (m < 2) throw DomainError("m-hub limit needs m >= 2");
    const bool acc = scheme == PayoffScheme::accumulated;
    switch (rule) {
    case UpdateRule::PC: return acc ? detail::oracle_limit(4 * m - 1, 3 * m - 1, "m-hub PC acc limit") : detail::oracle_limit(4 * m, 2 * m - 1, "m-hub PC avg limit");
    case UpdateRule::DB: return acc ? detail::oracle_limit(1, 1, "m-hub DB acc limit") : detail::oracle_limit(12 * m - 4, 9 * m - 7, "m-hub DB avg limit");
    case UpdateRule::BD: return acc ? detail::oracle_limit(2, 1, "m-hub BD acc limit") : detail::oracle_limit(4, 1, "m-hub BD avg limit");
    }
    throw DomainError("unknown rule");
}

inline OracleResult ceiling_fan_limit(UpdateRule rule, PayoffScheme scheme) {
    const bool acc = scheme == PayoffScheme::accumulated;
    switch (rule) {
    case UpdateRule::PC: return acc ? detail::oracle_limit(2, 1, "fan PC acc limit") : detail::oracle_limit(21, 4, "fan PC avg limit");
    case UpdateRule::DB: return acc ? detail::oracle_limit(2, 1, "fan DB acc limit") : detail::oracle_limit(27, 8, "fan DB avg limit");
    case UpdateRule::BD: return acc ? detail::oracle_limit(3, 1, "fan BD acc limit") : detail::oracle_limit(27, 5, "fan BD avg limit");
    }
    throw DomainError("unknown rule");
}

} // namespace coopnet
