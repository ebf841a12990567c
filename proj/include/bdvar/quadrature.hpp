#pragma once

#include "bdvar/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bdvar {

/// Raised when an integrand misbehaves or a tolerance cannot be met; carries
/// the best estimate reached and the remaining gap when those are known.
class IntegrationError : public std::runtime_error {
public:
    explicit IntegrationError(const std::string& msg,
                              double best_estimate = std::nan(""),
                              double gap = std::nan(""))
        : std::runtime_error(msg), best_estimate_(best_estimate), gap_(gap) {}

    double best_estimate() const { return best_estimate_; }
    double gap() const { return gap_; }

private:
    double best_estimate_;
    double gap_;
};

/// Nodes and weights on [0,1]; integrates polynomials exactly up to
/// degree `exactness`.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int exactness = 0;
};

/// Gauss-Legendre rule mapped to [0,1], exactness 2*order - 1. Roots of the
/// Legendre polynomial by Newton iteration on the three-term recurrence.
inline QuadratureRule gauss_legendre(int order) {
    if (order < 1) throw std::domain_error("gauss_legendre: order must be >= 1");
    const int n = order;
    std::vector<double> x(n), w(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double deriv = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            deriv = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = -p1 / deriv;
            z += dz;
            if (std::abs(dz) < 1e-16) break;
        }
        x[size_t(i)] = -z;
        x[size_t(n - 1 - i)] = z;
        w[size_t(i)] = w[size_t(n - 1 - i)] = 2.0 / ((1.0 - z * z) * deriv * deriv);
    }
    QuadratureRule rule;
    rule.nodes.resize(size_t(n));
    rule.weights.resize(size_t(n));
    for (int i = 0; i < n; ++i) {
        rule.nodes[size_t(i)] = 0.5 * (x[size_t(i)] + 1.0);
        rule.weights[size_t(i)] = 0.5 * w[size_t(i)];
    }
    rule.exactness = 2 * n - 1;
    return rule;
}

/// A partition of [0,1] into segments (split at integrand breakpoints), each
/// integrated as `panels_per_segment` equal composite panels.
struct Panelization {
    std::vector<double> breakpoints{0.0, 1.0};
    int panels_per_segment = 64;

    Panelization() = default;
    Panelization(std::vector<double> bps, int pps)
        : breakpoints(std::move(bps)), panels_per_segment(pps) {
        validate();
    }

    /// Build from interior breakpoints only; 0 and 1 are added here.
    static Panelization with_interior(std::vector<double> interior, int pps = 64) {
        std::sort(interior.begin(), interior.end());
        std::vector<double> bps{0.0};
        for (double b : interior) {
            if (b <= 0.0 || b >= 1.0) continue;
            if (b - bps.back() > 1e-14) bps.push_back(b);
        }
        bps.push_back(1.0);
        return Panelization(std::move(bps), pps);
    }

    void validate() const {
        if (panels_per_segment < 1)
            throw std::invalid_argument("Panelization: panels_per_segment must be >= 1");
        if (breakpoints.size() < 2 || breakpoints.front() != 0.0 || breakpoints.back() != 1.0)
            throw std::invalid_argument("Panelization: breakpoints must run from 0 to 1");
        for (size_t i = 1; i < breakpoints.size(); ++i)
            if (!(breakpoints[i] > breakpoints[i - 1]))
                throw std::invalid_argument("Panelization: breakpoints must be strictly increasing");
    }
};

/// Composite application of `rule` on every panel of every segment. Gauss
/// nodes are interior, so f is never evaluated at a breakpoint.
template <class F>
double integrate(F&& f, const QuadratureRule& rule, const Panelization& panels) {
    panels.validate();
    double total = 0.0;
    for (size_t s = 0; s + 1 < panels.breakpoints.size(); ++s) {
        const double a = panels.breakpoints[s];
        const double b = panels.breakpoints[s + 1];
        const double h = (b - a) / panels.panels_per_segment;
        double segment = 0.0;
        for (int p = 0; p < panels.panels_per_segment; ++p) {
            const double lo = a + p * h;
            for (size_t q = 0; q < rule.nodes.size(); ++q) {
                const double t = lo + h * rule.nodes[q];
                const double v = f(t);
                if (!std::isfinite(v))
                    throw IntegrationError("integrate: non-finite integrand at t = " +
                                           std::to_string(t));
                segment += rule.weights[q] * v;
            }
        }
        total += segment * h;
    }
    return total;
}

struct L1Options {
    int rule_order = 32;
    int scan_points = 1024;   // sign-change scan resolution per segment
    double root_tol = 1e-13;  // bisection bracket width
    int max_doublings = 14;
};

struct L1Result {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels_used = 0;
};

namespace detail {

template <class F>
double bisect_sign_change(F&& f, double lo, double hi, double flo, double tol) {
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) != (fm < 0.0)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// Integral of |f| over [0,1]. Sign changes are located by a scan-and-bisect
/// pass per segment and promoted to breakpoints, so |f| is smooth on every
/// panel; panel counts double until two successive estimates agree to tol.
template <class F>
L1Result l1_norm(F&& f, const Panelization& panels, double tol, const L1Options& opts = {}) {
    panels.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("l1_norm: tol must be positive");

    std::vector<double> refined = panels.breakpoints;
    for (size_t s = 0; s + 1 < panels.breakpoints.size(); ++s) {
        const double a = panels.breakpoints[s];
        const double b = panels.breakpoints[s + 1];
        const double h = (b - a) / opts.scan_points;
        // Track the last nonzero sample; exact zeros are skipped so that an
        // identically-zero integrand produces no spurious breakpoints, while
        // a genuine crossing through a grid zero is still bracketed by its
        // nonzero neighbors.
        double prev_t = 0.0, prev_v = 0.0;
        bool have_prev = false;
        for (int i = 0; i < opts.scan_points; ++i) {
            const double t = a + (i + 0.5) * h;
            const double v = f(t);
            if (!std::isfinite(v))
                throw IntegrationError("l1_norm: non-finite integrand at t = " +
                                       std::to_string(t));
            if (v == 0.0) continue;
            if (have_prev && (prev_v < 0.0) != (v < 0.0))
                refined.push_back(detail::bisect_sign_change(f, prev_t, t, prev_v, opts.root_tol));
            prev_t = t;
            prev_v = v;
            have_prev = true;
        }
    }
    std::sort(refined.begin(), refined.end());
    std::vector<double> bps{0.0};
    for (double b : refined) {
        if (b <= 0.0 || b >= 1.0) continue;
        if (b - bps.back() > 1e-14) bps.push_back(b);
    }
    bps.push_back(1.0);

    const QuadratureRule rule = gauss_legendre(opts.rule_order);
    auto abs_f = [&f](double t) { return std::abs(f(t)); };

    int p = panels.panels_per_segment;
    double prev = integrate(abs_f, rule, Panelization(bps, p));
    double gap = std::abs(prev);
    for (int d = 0; d < opts.max_doublings; ++d) {
        p *= 2;
        const double cur = integrate(abs_f, rule, Panelization(bps, p));
        gap = std::abs(cur - prev);
        if (gap < tol) return {cur, gap, p};
        prev = cur;
    }
    throw IntegrationError("l1_norm: panel budget exhausted before reaching tol", prev, gap);
}

}  // namespace bdvar
