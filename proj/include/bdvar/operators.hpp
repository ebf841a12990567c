#pragma once

#include "bdvar/basis.hpp"
#include "bdvar/poly.hpp"
#include "bdvar/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdvar {

/// Raised when a formula with an x(1-x) denominator is asked for an endpoint.
struct SingularRepresentationError : std::domain_error {
    using std::domain_error::domain_error;
};

enum class CoefficientProvenance { exact, quadrature };

/// Coefficient vector of D_n f: F_k = (n+1) * integral of f p_{n,k}.
template <class S>
struct DurrmeyerCoefficients {
    int n = 0;
    std::vector<S> values;  // F_0 .. F_n
    CoefficientProvenance provenance = CoefficientProvenance::quadrature;
    int rule_order = 0;  // set when provenance == quadrature
    int panels = 0;
};

/// Gauss-Legendre order that integrates (degree-m input) x (degree-n basis)
/// exactly: 2 * order - 1 >= n + m.
inline QuadratureRule exactness_matched_rule(int n, int m) {
    return gauss_legendre((n + m + 1) / 2 + 1);
}

/// B_n f: Bernstein coefficients are the samples f(k/n).
template <class F>
PolyD bernstein_apply(F&& f, int n) {
    if (n < 1) throw std::domain_error("bernstein_apply: degree must be >= 1");
    std::vector<double> coeffs(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        const double node = double(k) / double(n);
        const double v = f(node);
        if (!std::isfinite(v))
            throw IntegrationError("bernstein_apply: non-finite sample at node " +
                                   std::to_string(node));
        coeffs[size_t(k)] = v;
    }
    return PolyD(std::move(coeffs));
}

/// Exact-path B_n for polynomial input: samples at the rational nodes k/n.
inline PolyQ bernstein_apply(const PolyQ& p, int n) {
    if (n < 1) throw std::domain_error("bernstein_apply: degree must be >= 1");
    std::vector<Rational> coeffs(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) coeffs[size_t(k)] = p(Rational(k, n));
    return PolyQ(std::move(coeffs));
}

/// Durrmeyer coefficients by quadrature. The basis row is shared across k at
/// every node, so a full coefficient vector costs one basis row per node.
template <class F>
DurrmeyerCoefficients<double> durrmeyer_coefficients(F&& f, int n, const QuadratureRule& rule,
                                                     const Panelization& panels) {
    if (n < 0) throw std::domain_error("durrmeyer_coefficients: negative degree");
    panels.validate();
    std::vector<double> acc(static_cast<size_t>(n) + 1, 0.0);
    for (size_t s = 0; s + 1 < panels.breakpoints.size(); ++s) {
        const double a = panels.breakpoints[s];
        const double b = panels.breakpoints[s + 1];
        const double h = (b - a) / panels.panels_per_segment;
        for (int p = 0; p < panels.panels_per_segment; ++p) {
            const double lo = a + p * h;
            for (size_t q = 0; q < rule.nodes.size(); ++q) {
                const double t = lo + h * rule.nodes[q];
                const double v = f(t);
                if (!std::isfinite(v))
                    throw IntegrationError(
                        "durrmeyer_coefficients: non-finite integrand at t = " +
                        std::to_string(t));
                const double w = rule.weights[q] * h * v;
                const auto row = basis_eval_all<double>(n, t);
                for (int k = 0; k <= n; ++k) acc[size_t(k)] += w * row[size_t(k)];
            }
        }
    }
    DurrmeyerCoefficients<double> result;
    result.n = n;
    result.values = std::move(acc);
    for (auto& F_k : result.values) F_k *= double(n + 1);
    result.provenance = CoefficientProvenance::quadrature;
    result.rule_order = int(rule.nodes.size());
    result.panels = panels.panels_per_segment;
    return result;
}

/// Exact Durrmeyer coefficients of a polynomial input via the Beta-identity
/// product integrals: F_k = (n+1) sum_j c_j int p_{n,k} p_{m,j}.
inline DurrmeyerCoefficients<Rational> durrmeyer_coefficients(const PolyQ& p, int n) {
    if (n < 0) throw std::domain_error("durrmeyer_coefficients: negative degree");
    const int m = p.degree();
    DurrmeyerCoefficients<Rational> result;
    result.n = n;
    result.provenance = CoefficientProvenance::exact;
    result.values.resize(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        Rational acc(0);
        for (int j = 0; j <= m; ++j)
            acc += p.coeffs()[size_t(j)] * basis_product_integral(n, k, m, j);
        result.values[size_t(k)] = Rational(n + 1) * acc;
    }
    return result;
}

inline DurrmeyerCoefficients<double> to_double(const DurrmeyerCoefficients<Rational>& F) {
    DurrmeyerCoefficients<double> result;
    result.n = F.n;
    result.provenance = F.provenance;
    result.rule_order = F.rule_order;
    result.panels = F.panels;
    result.values.reserve(F.values.size());
    for (const auto& v : F.values) result.values.push_back(to_double(v));
    return result;
}

template <class S>
BernsteinPoly<S> durrmeyer_apply(const DurrmeyerCoefficients<S>& F) {
    return BernsteinPoly<S>(F.values);
}

/// D_n f materialized as its coefficient polynomial.
template <class F>
PolyD durrmeyer_apply(F&& f, int n, const QuadratureRule& rule, const Panelization& panels) {
    return durrmeyer_apply(durrmeyer_coefficients(std::forward<F>(f), n, rule, panels));
}

inline PolyQ durrmeyer_apply_exact(const PolyQ& p, int n) {
    return durrmeyer_apply(durrmeyer_coefficients(p, n));
}

/// Representation (a): (D_n f)'(x) = (1/X) sum_k (k - nx) p_{n,k}(x) F_k,
/// X = x(1-x). Interior points only; use representation (b) at endpoints.
inline double durrmeyer_derivative_a(const DurrmeyerCoefficients<double>& F, double x) {
    detail::check_unit_interval(x);
    if (x == 0.0 || x == 1.0)
        throw SingularRepresentationError(
            "durrmeyer_derivative_a: singular at x = " + std::to_string(x) +
            "; use durrmeyer_derivative_b at the endpoints");
    const int n = F.n;
    const auto row = basis_eval_all<double>(n, x);
    double acc = 0.0;
    for (int k = 0; k <= n; ++k)
        acc += (double(k) - double(n) * x) * row[size_t(k)] * F.values[size_t(k)];
    return acc / (x * (1.0 - x));
}

/// Representation (b): (D_n f)'(x) = n sum_k p_{n-1,k}(x) (F_{k+1} - F_k);
/// finite on all of [0,1].
inline double durrmeyer_derivative_b(const DurrmeyerCoefficients<double>& F, double x) {
    detail::check_unit_interval(x);
    const int n = F.n;
    if (n == 0) return 0.0;
    const auto row = basis_eval_all<double>(n - 1, x);
    double acc = 0.0;
    for (int k = 0; k < n; ++k)
        acc += row[size_t(k)] * (F.values[size_t(k) + 1] - F.values[size_t(k)]);
    return double(n) * acc;
}

template <class F>
double durrmeyer_derivative_a(F&& f, int n, double x, const QuadratureRule& rule,
                              const Panelization& panels) {
    return durrmeyer_derivative_a(durrmeyer_coefficients(std::forward<F>(f), n, rule, panels), x);
}

template <class F>
double durrmeyer_derivative_b(F&& f, int n, double x, const QuadratureRule& rule,
                              const Panelization& panels) {
    return durrmeyer_derivative_b(durrmeyer_coefficients(std::forward<F>(f), n, rule, panels), x);
}

}  // namespace bdvar
