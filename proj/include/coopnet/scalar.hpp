#pragma once

#include <cmath>
#include <string>

#include <gmpxx.h>

namespace coopnet {

template <class T>
inline T ratio(long a, long b) {
    return static_cast<T>(a) / static_cast<T>(b);
}

template <>
inline mpq_class ratio<mpq_class>(long a, long b) {
    mpq_class q{mpz_class(a), mpz_class(b)};
    q.canonicalize();
    return q;
}

inline double to_double(double x) { return x; }
inline double to_double(const mpq_class& x) { return x.get_d(); }

inline int sign_of(double x) { return (x > 0) - (x < 0); }
inline int sign_of(const mpq_class& x) { return sgn(x); }

inline std::string exact_string(const mpq_class& x) { return x.get_str(); }

} // namespace coopnet
