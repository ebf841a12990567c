#pragma once

#include "bdvar/scalar.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace bdvar {

/// Raised for moment orders outside the tabulated closed-form range.
struct UnsupportedOrderError : std::domain_error {
    using std::domain_error::domain_error;
};

namespace detail {

template <class S>
void check_unit_interval(const S& x) {
    // The negated form also rejects NaN in the floating instantiation.
    if (!(x >= S(0) && x <= S(1))) throw std::domain_error("point outside [0,1]");
}

/// log(i!) with a cached table for the small arguments hot loops use.
inline double log_factorial(long long i) {
    static const std::vector<double> table = [] {
        std::vector<double> t(2049);
        t[0] = 0.0;
        for (size_t j = 1; j < t.size(); ++j) t[j] = t[j - 1] + std::log(double(j));
        return t;
    }();
    if (i < 0) return -std::numeric_limits<double>::infinity();
    if (size_t(i) < table.size()) return table[size_t(i)];
    return std::lgamma(double(i) + 1.0);
}

/// Stable single-value evaluation in log space; valid for any degree.
/// Used internally where evaluating a full basis row per point would be
/// wasteful (high-degree tails underflow harmlessly to zero).
inline double basis_value_log(int n, int k, double x) {
    if (k < 0 || k > n) return 0.0;
    if (x == 0.0) return k == 0 ? 1.0 : 0.0;
    if (x == 1.0) return k == n ? 1.0 : 0.0;
    const double log_choose = log_factorial(n) - log_factorial(k) - log_factorial(n - k);
    return std::exp(log_choose + double(k) * std::log(x) + double(n - k) * std::log1p(-x));
}

}  // namespace detail

/// All n+1 Bernstein basis values at x via the triangular (de Casteljau
/// style) recurrence. Every intermediate is a convex combination, so the
/// floating instantiation is stable at any degree; the rational one is exact.
template <class S>
std::vector<S> basis_eval_all(int n, const S& x) {
    detail::check_unit_interval(x);
    if (n < 0) throw std::domain_error("basis_eval_all: negative degree");
    std::vector<S> row(static_cast<size_t>(n) + 1);
    row[0] = S(1);
    const S one_minus = S(1) - x;
    for (int j = 1; j <= n; ++j) {
        row[j] = x * row[j - 1];
        for (int k = j - 1; k >= 1; --k) row[k] = one_minus * row[k] + x * row[k - 1];
        row[0] = one_minus * row[0];
    }
    return row;
}

/// p_{n,k}(x) = C(n,k) x^k (1-x)^(n-k); zero for k outside 0..n.
/// Triangular recurrence up to degree 1000, log-gamma beyond (no overflow
/// through n = 10^4 and far past it).
inline double basis_eval(int n, int k, double x) {
    detail::check_unit_interval(x);
    if (k < 0 || k > n) return 0.0;
    if (n > 1000) return detail::basis_value_log(n, k, x);
    return basis_eval_all<double>(n, x)[static_cast<size_t>(k)];
}

inline Rational basis_eval(int n, int k, const Rational& x) {
    detail::check_unit_interval(x);
    if (k < 0 || k > n) return Rational(0);
    return Rational(binomial(n, k)) * ipow(x, k) * ipow(Rational(1) - x, n - k);
}

/// p'_{n,k}(x) = n (p_{n-1,k-1}(x) - p_{n-1,k}(x)); the out-of-range
/// convention of basis_eval makes the k = 0 and k = n cases come out right.
inline double basis_derivative(int n, int k, double x) {
    if (n == 0) {
        detail::check_unit_interval(x);
        return 0.0;
    }
    return double(n) * (basis_eval(n - 1, k - 1, x) - basis_eval(n - 1, k, x));
}

inline Rational basis_derivative(int n, int k, const Rational& x) {
    if (n == 0) {
        detail::check_unit_interval(x);
        return Rational(0);
    }
    return Rational(n) * (basis_eval(n - 1, k - 1, x) - basis_eval(n - 1, k, x));
}

/// Integral of p_{n,k} over [0,1]: exactly 1/(n+1) for every valid index.
inline Rational basis_integral(int n, int k) {
    if (n < 0 || k < 0 || k > n)
        throw std::domain_error("basis_integral: index out of range");
    return Rational(1, n + 1);
}

inline double basis_integral_d(int n, int k) { return to_double(basis_integral(n, k)); }

/// Integral of p_{n,k} p_{m,j} over [0,1] via the Beta identity:
/// C(n,k) C(m,j) / (C(n+m,k+j) (n+m+1)).
inline Rational basis_product_integral(int n, int k, int m, int j) {
    if (n < 0 || k < 0 || k > n || m < 0 || j < 0 || j > m)
        throw std::domain_error("basis_product_integral: index out of range");
    return Rational(binomial(n, k) * binomial(m, j),
                    binomial(n + m, k + j) * (n + m + 1));
}

inline double basis_product_integral_d(int n, int k, int m, int j) {
    if (n < 0 || k < 0 || k > n || m < 0 || j < 0 || j > m)
        throw std::domain_error("basis_product_integral: index out of range");
    return std::exp(log_binomial(n, k) + log_binomial(m, j) -
                    log_binomial(n + m, k + j)) /
           double(n + m + 1);
}

/// Closed-form sum moments T_{r,n}(x) = sum_k k^r p_{n,k}(x), r = 0..4.
template <class S>
S sum_moment(int r, int n, const S& x) {
    detail::check_unit_interval(x);
    const S nn(n);
    switch (r) {
        case 0:
            return S(1);
        case 1:
            return nn * x;
        case 2:
            return nn * (nn - S(1)) * x * x + nn * x;
        case 3:
            return nn * (nn - S(1)) * (nn - S(2)) * x * x * x +
                   S(3) * nn * (nn - S(1)) * x * x + nn * x;
        case 4:
            return nn * (nn - S(1)) * (nn - S(2)) * (nn - S(3)) * x * x * x * x +
                   S(6) * nn * (nn - S(1)) * (nn - S(2)) * x * x * x +
                   S(7) * nn * (nn - S(1)) * x * x + nn * x;
        default:
            throw UnsupportedOrderError(
                "sum_moment: closed forms cover r = 0..4; use sum_moment_direct");
    }
}

/// Direct summation fallback, any order r >= 0.
template <class S>
S sum_moment_direct(int r, int n, const S& x) {
    if (r < 0) throw UnsupportedOrderError("sum_moment_direct: negative order");
    const auto row = basis_eval_all(n, x);
    S acc(0);
    for (int k = 0; k <= n; ++k) acc += ipow(S(k), r) * row[static_cast<size_t>(k)];
    return acc;
}

/// Closed-form central moments sum_k (k-nx)^r p_{n,k}(x), r = 1..4, with
/// X = x(1-x). The r = 3 closed form is nX(1-2x); see central_moment_direct
/// for the oracle that pins this down.
template <class S>
S central_moment(int r, int n, const S& x) {
    detail::check_unit_interval(x);
    const S bigX = x * (S(1) - x);
    const S nX = S(n) * bigX;
    switch (r) {
        case 1:
            return S(0);
        case 2:
            return nX;
        case 3:
            return nX * (S(1) - S(2) * x);
        case 4:
            return S(3) * nX * nX + (S(1) - S(6) * bigX) * nX;
        default:
            throw UnsupportedOrderError(
                "central_moment: closed forms cover r = 1..4; use central_moment_direct");
    }
}

template <class S>
S central_moment_direct(int r, int n, const S& x) {
    if (r < 0) throw UnsupportedOrderError("central_moment_direct: negative order");
    const auto row = basis_eval_all(n, x);
    const S mean = S(n) * x;
    S acc(0);
    for (int k = 0; k <= n; ++k)
        acc += ipow(S(k) - mean, r) * row[static_cast<size_t>(k)];
    return acc;
}

}  // namespace bdvar
