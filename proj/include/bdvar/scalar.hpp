#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bdvar {

// Exact scalar path. cpp_rational keeps every identity test exact; the
// floating path below is for large-degree experiments.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

/// C(n,k) as an exact big integer; zero outside 0 <= k <= n.
inline BigInt binomial(long long n, long long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (long long i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;  // exact: i consecutive integers are divisible by i!
    }
    return result;
}

/// log C(n,k); -inf outside the valid range.
inline double log_binomial(long long n, long long k) {
    if (n < 0 || k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
           std::lgamma(double(n - k) + 1.0);
}

/// C(n,k) in double: multiplicative recurrence up to n = 1000 (largest
/// central binomial still below DBL_MAX), log-gamma beyond.
inline double binomial_double(long long n, long long k) {
    if (n < 0 || k < 0 || k > n) return 0.0;
    if (n <= 1000) {
        if (k > n - k) k = n - k;
        double r = 1.0;
        for (long long i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
        return r;
    }
    return std::exp(log_binomial(n, k));
}

template <class S>
S ipow(S base, int exponent) {
    if (exponent < 0) throw std::domain_error("ipow: negative exponent");
    S result(1);
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        base *= base;
        exponent >>= 1;
    }
    return result;
}

}  // namespace bdvar
