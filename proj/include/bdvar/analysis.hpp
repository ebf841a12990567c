#pragma once

#include "bdvar/basis.hpp"
#include "bdvar/corpus.hpp"
#include "bdvar/operators.hpp"
#include "bdvar/variation.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdvar {

struct UndefinedRatioError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Integer part of nx with downward ties ([nx] = nx at exact integers).
/// Values within 1e-9 of an integer are snapped to it to absorb the floating
/// representation of x = k/n.
inline int integer_part_nx(int n, double x) {
    const double v = double(n) * x;
    const double r = std::nearbyint(v);
    if (std::abs(v - r) <= 1e-9) return int(r);
    return int(std::floor(v));
}

/// Closed forms of the Taylor coefficients of (D_n g)':
/// A_0 = 0, A_1 = n/(n+2), A_2 = 2n(1-2x)/((n+2)(n+3)).
inline double a_coefficient_closed(int j, int n, double x) {
    detail::check_unit_interval(x);
    switch (j) {
        case 0:
            return 0.0;
        case 1:
            return double(n) / double(n + 2);
        case 2:
            return 2.0 * double(n) * (1.0 - 2.0 * x) / (double(n + 2) * double(n + 3));
        default:
            throw std::domain_error("a_coefficient: j must be 0, 1 or 2");
    }
}

/// The defining sum A_j(x) = (n+1)/(X j!) sum_k (k-nx) p_{n,k}(x)
/// int (t-x)^j p_{n,k}(t) dt, evaluated in exact rational arithmetic.
/// The basis moment integrals come from the Beta identity
/// int t^i p_{n,k} = (1/(n+1)) prod_{s=1..i} (k+s)/(n+1+s).
inline Rational a_coefficient_direct(int j, int n, const Rational& x) {
    if (j < 0 || j > 2) throw std::domain_error("a_coefficient_direct: j must be 0, 1 or 2");
    detail::check_unit_interval(x);
    const Rational big_x = x * (Rational(1) - x);
    if (big_x == 0)
        throw SingularRepresentationError(
            "a_coefficient_direct: defining sum is singular at the endpoints");
    Rational acc(0);
    for (int k = 0; k <= n; ++k) {
        // int_0^1 t^i p_{n,k}(t) dt for i = 0..j
        std::array<Rational, 3> moment{Rational(1, n + 1), Rational(0), Rational(0)};
        for (int i = 1; i <= j; ++i)
            moment[size_t(i)] = moment[size_t(i) - 1] * Rational(k + i, n + 1 + i);
        Rational shifted(0);  // int (t-x)^j p_{n,k}
        for (int i = 0; i <= j; ++i)
            shifted += Rational(binomial(j, i)) * ipow(Rational(-x), j - i) * moment[size_t(i)];
        acc += (Rational(k) - Rational(n) * x) * basis_eval(n, k, x) * shifted;
    }
    Rational factorial(1);
    for (int i = 2; i <= j; ++i) factorial *= i;
    return Rational(n + 1) / (big_x * factorial) * acc;
}

/// Floating front end: doubles are exact rationals, so the defining sum is
/// still evaluated without rounding.
inline double a_coefficient_direct(int j, int n, double x) {
    detail::check_unit_interval(x);
    if (x == 0.0 || x == 1.0)
        throw SingularRepresentationError(
            "a_coefficient_direct: defining sum is singular at the endpoints");
    return to_double(a_coefficient_direct(j, n, Rational(x)));
}

/// Remainder of the Taylor expansion of (D_n g)' at x:
/// R_n g(x) = (D_n g)'(x) - A_1 g'(x) - A_2(x) g''(x). Representation (b)
/// supplies the derivative, so the endpoints work too.
inline double taylor_remainder(const TestFunction& g, const DurrmeyerCoefficients<double>& F,
                               double x) {
    if (!g.d1 || !g.d2)
        throw std::invalid_argument("taylor_remainder: " + g.id + " lacks derivatives");
    return durrmeyer_derivative_b(F, x) - a_coefficient_closed(1, F.n, x) * g.d1(x) -
           a_coefficient_closed(2, F.n, x) * g.d2(x);
}

inline double taylor_remainder(const TestFunction& g, int n, double x, int quad_order = 32,
                               int panels = 64) {
    return taylor_remainder(g, durrmeyer_coefficients_for(g, n, quad_order, panels), x);
}

struct BComponentOptions {
    int order = 24;   // Gauss-Legendre order per t-range
    int panels = 2;   // panels per t-range
};

/// The four bound-stage partial sums B_{1..4,n} g(x): kernel
/// (t-x)^2 (g''(t) - g''(x)), k split at [nx], t-ranges [0,k/n] and [k/n,x]
/// for the lower half, [x,k/n] and [k/n,1] for the upper. These majorize the
/// remainder pieces; they use the second-order bound kernel rather than the
/// exact Taylor kernel and their t-ranges do not tile [0,1], so their sum is
/// not R_n g. remainder_quadrants below is the partition that reassembles it.
inline std::array<double, 4> b_components(const TestFunction& g, int n, double x,
                                          const BComponentOptions& opts = {}) {
    if (!g.d2) throw std::invalid_argument("b_components: " + g.id + " lacks g''");
    detail::check_unit_interval(x);
    if (x == 0.0 || x == 1.0)
        throw SingularRepresentationError("b_components: singular at the endpoints");
    const double big_x = x * (1.0 - x);
    const int kx = integer_part_nx(n, x);
    const double d2_at_x = g.d2(x);
    const auto rule = gauss_legendre(opts.order);
    const auto px_row = basis_eval_all<double>(n, x);

    const auto range_integral = [&](int k, double lo, double hi) {
        if (!(hi > lo)) return 0.0;
        const double h = (hi - lo) / opts.panels;
        double acc = 0.0;
        for (int p = 0; p < opts.panels; ++p) {
            const double a = lo + p * h;
            for (size_t q = 0; q < rule.nodes.size(); ++q) {
                const double t = a + h * rule.nodes[q];
                const double diff = t - x;
                acc += rule.weights[q] * diff * diff * (g.d2(t) - d2_at_x) *
                       detail::basis_value_log(n, k, t);
            }
        }
        return acc * h;
    };

    std::array<double, 4> components{0.0, 0.0, 0.0, 0.0};
    for (int k = 0; k <= n; ++k) {
        const double weight =
            (double(k) - double(n) * x) * px_row[size_t(k)] * double(n + 1) / (2.0 * big_x);
        if (weight == 0.0) continue;
        const double node = double(k) / double(n);
        if (k <= kx) {
            components[0] += weight * range_integral(k, 0.0, node);
            components[1] += weight * range_integral(k, node, x);
        } else {
            components[2] += weight * range_integral(k, x, node);
            components[3] += weight * range_integral(k, node, 1.0);
        }
    }
    return components;
}

struct QuadrantOptions {
    int outer_order = 32;
    int outer_panels = 8;
    int inner_order = 12;
};

/// Exact-kernel quadrant split of the remainder sum: contributions of
/// (k <= [nx]) x (t <= x), (k <= [nx]) x (t > x), (k > [nx]) x (t <= x),
/// (k > [nx]) x (t > x) with the true Taylor kernel
/// (1/2) int_x^t (t-v)^2 g'''(v) dv. The four quadrants tile the full
/// (k, t) domain, so their sum is R_n g(x) up to quadrature error.
inline std::array<double, 4> remainder_quadrants(const TestFunction& g, int n, double x,
                                                 const QuadrantOptions& opts = {}) {
    if (!g.d3) throw std::invalid_argument("remainder_quadrants: " + g.id + " lacks g'''");
    detail::check_unit_interval(x);
    if (x == 0.0 || x == 1.0)
        throw SingularRepresentationError("remainder_quadrants: singular at the endpoints");
    const double big_x = x * (1.0 - x);
    const int kx = integer_part_nx(n, x);
    const auto outer_rule = gauss_legendre(opts.outer_order);
    const auto inner_rule = gauss_legendre(opts.inner_order);
    const auto px_row = basis_eval_all<double>(n, x);

    std::vector<double> split_weight(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        split_weight[size_t(k)] = (double(k) - double(n) * x) * px_row[size_t(k)];

    // W(t) = (1/2) int_x^t (t-v)^2 g'''(v) dv
    const auto taylor_kernel = [&](double t) {
        const double lo = std::min(x, t), hi = std::max(x, t);
        if (hi == lo) return 0.0;
        const double h = hi - lo;
        double acc = 0.0;
        for (size_t q = 0; q < inner_rule.nodes.size(); ++q) {
            const double v = lo + h * inner_rule.nodes[q];
            const double tv = t - v;
            acc += inner_rule.weights[q] * tv * tv * g.d3(v);
        }
        return 0.5 * acc * h * (t >= x ? 1.0 : -1.0);
    };

    std::array<double, 4> quadrants{0.0, 0.0, 0.0, 0.0};
    const auto accumulate_side = [&](double lo, double hi, size_t low_slot, size_t high_slot) {
        if (!(hi > lo)) return;
        const double h = (hi - lo) / opts.outer_panels;
        double low_acc = 0.0, high_acc = 0.0;
        for (int p = 0; p < opts.outer_panels; ++p) {
            const double a = lo + p * h;
            for (size_t q = 0; q < outer_rule.nodes.size(); ++q) {
                const double t = a + h * outer_rule.nodes[q];
                const double w = outer_rule.weights[q] * taylor_kernel(t);
                if (w == 0.0) continue;
                const auto row = basis_eval_all<double>(n, t);
                double low_dot = 0.0, high_dot = 0.0;
                for (int k = 0; k <= kx; ++k) low_dot += split_weight[size_t(k)] * row[size_t(k)];
                for (int k = kx + 1; k <= n; ++k)
                    high_dot += split_weight[size_t(k)] * row[size_t(k)];
                low_acc += w * low_dot;
                high_acc += w * high_dot;
            }
        }
        quadrants[low_slot] += low_acc * h;
        quadrants[high_slot] += high_acc * h;
    };
    accumulate_side(0.0, x, 0, 2);
    accumulate_side(x, 1.0, 1, 3);

    const double scale = double(n + 1) / big_x;
    for (auto& v : quadrants) v *= scale;
    return quadrants;
}

struct DetractingRecord {
    std::string function_id;
    int n = 0;
    double v_input = 0.0;
    double v_output = 0.0;
    double margin = 0.0;  // v_input - v_output
    double bv_input = 0.0;
    double bv_output = 0.0;
    double eps = 0.0;  // combined numerical allowance
    bool pass = false;
};

/// Detracting check: V[D_n f] <= V[f] and the BV-norm counterpart with
/// anchor 0. V[D_n f] always comes from the exact monotone-segment
/// decomposition of the materialized coefficient polynomial.
inline DetractingRecord verify_detracting(const TestFunction& f, int n, int quad_order = 32,
                                          int panels = 64) {
    const auto F = durrmeyer_coefficients_for(f, n, quad_order, panels);
    const auto image = durrmeyer_apply(F);
    const auto v_out = variation_bernstein_exact(image, 1e-12);

    double v_in = 0.0;
    if (f.known_tv) {
        v_in = *f.known_tv;
    } else {
        // partition fallback on a dense grid with the breakpoints injected
        std::vector<std::pair<double, double>> samples;
        const int grid = 1 << 17;
        std::vector<double> xs;
        xs.reserve(size_t(grid) + 1 + 2 * f.breakpoints.size());
        for (int i = 0; i <= grid; ++i) xs.push_back(double(i) / grid);
        for (double b : f.breakpoints) {
            xs.push_back(std::nextafter(b, 0.0));
            xs.push_back(b);
        }
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        samples.reserve(xs.size());
        for (double xv : xs) samples.emplace_back(xv, f.f(xv));
        v_in = variation_partition(samples).value;
    }

    double max_coeff = 0.0;
    for (double v : F.values) max_coeff = std::max(max_coeff, std::abs(v));
    const double coeff_allowance =
        (F.provenance == CoefficientProvenance::exact ? 0.0 : 1e-10) +
        64.0 * std::numeric_limits<double>::epsilon() * double(n + 1) * max_coeff;

    DetractingRecord rec;
    rec.function_id = f.id;
    rec.n = n;
    rec.v_input = v_in;
    rec.v_output = v_out.value;
    rec.margin = v_in - v_out.value;
    rec.bv_input = v_in + std::abs(f.f(0.0));
    rec.bv_output = v_out.value + std::abs(F.values.front());
    rec.eps = v_out.error_bound + coeff_allowance;
    rec.pass = rec.margin >= -rec.eps && rec.bv_input - rec.bv_output >= -rec.eps;
    return rec;
}

/// L1 norms of the first three derivatives: closed forms from the corpus
/// entry when registered, adaptive quadrature otherwise.
inline std::array<double, 3> derivative_l1_norms(const TestFunction& g, double tol = 1e-10,
                                                 int panels = 64) {
    if (g.known_l1_norms) return *g.known_l1_norms;
    if (!g.d1 || !g.d2 || !g.d3)
        throw std::invalid_argument("derivative_l1_norms: " + g.id + " lacks derivatives");
    const auto panelization = g.panelization(panels);
    return {l1_norm(g.d1, panelization, tol).value, l1_norm(g.d2, panelization, tol).value,
            l1_norm(g.d3, panelization, tol).value};
}

struct RateRecord {
    std::string function_id;
    int n = 0;
    double lhs = 0.0;    // measured |(D_n g)' - g'| in L1
    double term1 = 0.0;  // 2/(n+2) |g'|
    double term2 = 0.0;  // 2/(n+2) |g''|
    double term3 = 0.0;  // 2/sqrt(n) |g'''|
    double rhs = 0.0;
    double ratio = 0.0;
    bool pass = false;
};

constexpr double kRateRatioTolerance = 1e-8;

/// Rate bound check: measured |(D_n g)' - g'|_L1 against
/// 2/(n+2) |g'| + 2/(n+2) |g''| + 2/sqrt(n) |g'''|.
inline RateRecord verify_rate(const TestFunction& g, int n, int quad_order = 32,
                              int panels = 64, double tol = 1e-10) {
    if (!g.d1) throw std::invalid_argument("verify_rate: " + g.id + " lacks g'");
    const auto F = durrmeyer_coefficients_for(g, n, quad_order, panels);
    const auto integrand = [&](double x) { return durrmeyer_derivative_b(F, x) - g.d1(x); };
    const double lhs = l1_norm(integrand, g.panelization(panels), tol).value;
    const auto norms = derivative_l1_norms(g, tol, panels);

    RateRecord rec;
    rec.function_id = g.id;
    rec.n = n;
    rec.lhs = lhs;
    rec.term1 = 2.0 / double(n + 2) * norms[0];
    rec.term2 = 2.0 / double(n + 2) * norms[1];
    rec.term3 = 2.0 / std::sqrt(double(n)) * norms[2];
    rec.rhs = rec.term1 + rec.term2 + rec.term3;
    if (rec.rhs > 0.0) {
        rec.ratio = rec.lhs / rec.rhs;
        rec.pass = rec.ratio <= 1.0 + kRateRatioTolerance;
    } else {
        rec.ratio = 0.0;
        rec.pass = rec.lhs <= 1e-12;  // bound and measurement both vanish
    }
    return rec;
}

/// Empirical witness for the constant in |g''| <= C sqrt(|g'| |g'''|).
inline double stein_ratio(const TestFunction& g, double tol = 1e-10) {
    const auto norms = derivative_l1_norms(g, tol);
    const double denom = norms[0] * norms[2];
    if (!(denom > 0.0) || !std::isfinite(denom))
        throw UndefinedRatioError("stein_ratio: |g'| |g'''| vanishes for " + g.id);
    return norms[1] / std::sqrt(denom);
}

/// Least-squares slope of log(value) against log(n); pairs with
/// non-positive entries are skipped.
inline double loglog_slope(const std::vector<std::pair<double, double>>& pairs) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const auto& [n, value] : pairs) {
        if (!(n > 0.0) || !(value > 0.0)) continue;
        const double lx = std::log(n), ly = std::log(value);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m < 2) throw std::invalid_argument("loglog_slope: need at least two positive pairs");
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace bdvar
