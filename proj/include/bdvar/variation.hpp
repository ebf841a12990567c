#pragma once

#include "bdvar/poly.hpp"
#include "bdvar/quadrature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bdvar {

enum class VariationMethod { partition, l1_of_derivative, exact_monotone };

struct VariationResult {
    double value = 0.0;
    VariationMethod method = VariationMethod::partition;
    double error_bound = 0.0;  // half-width of the enclosure; 0 when exact
    bool exact = false;
};

/// Partition sum over ordered samples: a lower bound on the total variation.
inline VariationResult variation_partition(const std::vector<std::pair<double, double>>& samples) {
    if (samples.empty())
        throw std::invalid_argument("variation_partition: no samples");
    double value = 0.0;
    for (size_t i = 1; i < samples.size(); ++i) {
        if (!(samples[i].first > samples[i - 1].first))
            throw std::invalid_argument("variation_partition: x-values must be strictly increasing");
        value += std::abs(samples[i].second - samples[i - 1].second);
    }
    if (samples.front().first < 0.0 || samples.back().first > 1.0)
        throw std::invalid_argument("variation_partition: samples outside [0,1]");
    return {value, VariationMethod::partition, 0.0, false};
}

/// V[f] = integral of |f'| for absolutely continuous f, given its a.e.
/// derivative.
template <class F>
VariationResult tv_seminorm_ac(F&& fprime, const Panelization& panels, double tol,
                               const L1Options& opts = {}) {
    const L1Result r = l1_norm(std::forward<F>(fprime), panels, tol, opts);
    return {r.value, VariationMethod::l1_of_derivative, r.error_estimate, false};
}

/// Total variation of a Bernstein-form polynomial by monotone-segment
/// decomposition. Roots of p' are isolated by recursive de Casteljau
/// subdivision; a segment whose subdivided coefficients carry no sign change
/// is monotone and contributes |p(b) - p(a)| exactly, an unresolved segment
/// narrower than tol contributes the same with an error bounded by its width
/// times the convex-hull bound on |p'|.
inline VariationResult variation_bernstein_exact(const PolyD& p, double tol = 1e-12) {
    if (!(tol > 0.0)) throw std::invalid_argument("variation_bernstein_exact: tol must be positive");
    const PolyD q = p.derivative();

    bool identically_zero = true;
    for (double c : q.coeffs())
        if (c != 0.0) identically_zero = false;
    if (identically_zero) return {0.0, VariationMethod::exact_monotone, 0.0, true};

    struct Segment {
        double a, b;
        std::vector<double> coeffs;  // q restricted to [a,b], reparameterized
    };
    const auto sign_variations = [](const std::vector<double>& c) {
        int count = 0, last = 0;
        for (double v : c) {
            const int s = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
            if (s == 0) continue;
            if (last != 0 && s != last) ++count;
            last = s;
        }
        return count;
    };

    std::vector<double> boundaries{0.0};
    double unresolved_error = 0.0;
    std::vector<Segment> stack{{0.0, 1.0, q.coeffs()}};
    size_t processed = 0;
    while (!stack.empty()) {
        if (++processed > 2'000'000)
            throw std::runtime_error("variation_bernstein_exact: subdivision budget exhausted");
        Segment seg = std::move(stack.back());
        stack.pop_back();
        if (sign_variations(seg.coeffs) == 0) {
            boundaries.push_back(seg.b);
            continue;
        }
        if (seg.b - seg.a < tol) {
            double bound = 0.0;
            for (double c : seg.coeffs) bound = std::max(bound, std::abs(c));
            unresolved_error += (seg.b - seg.a) * bound;
            boundaries.push_back(seg.b);
            continue;
        }
        const double mid = 0.5 * (seg.a + seg.b);
        auto [left, right] = PolyD(seg.coeffs).subdivide(0.5);
        stack.push_back({mid, seg.b, right.coeffs()});   // LIFO: left first
        stack.push_back({seg.a, mid, left.coeffs()});
    }

    double value = 0.0;
    double prev = p(0.0);
    double scale = 0.0;
    for (double c : p.coeffs()) scale = std::max(scale, std::abs(c));
    for (size_t i = 1; i < boundaries.size(); ++i) {
        const double cur = p(boundaries[i]);
        value += std::abs(cur - prev);
        prev = cur;
    }
    const double rounding =
        32.0 * std::numeric_limits<double>::epsilon() * scale * double(boundaries.size());
    const bool exact = unresolved_error == 0.0 && boundaries.size() == 2;
    return {value, VariationMethod::exact_monotone, exact ? 0.0 : unresolved_error + rounding,
            exact};
}

/// BV norm with anchor c = 0: V[f] + |f(0)|.
inline double bv_norm(const VariationResult& variation, double value_at_zero) {
    return variation.value + std::abs(value_at_zero);
}

}  // namespace bdvar
