#pragma once

#include "bdvar/operators.hpp"
#include "bdvar/poly.hpp"
#include "bdvar/quadrature.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdvar {

enum class SmoothnessClass { BV, AC, C3 };

inline bool is_at_least(SmoothnessClass cls, SmoothnessClass wanted) {
    return int(cls) >= int(wanted);
}

/// A corpus member: evaluator, optional derivatives up to order 3, interior
/// breakpoints, and exact metadata where available.
struct TestFunction {
    std::string id;
    SmoothnessClass cls = SmoothnessClass::BV;
    std::function<double(double)> f;
    std::function<double(double)> d1, d2, d3;  // null when not supplied
    std::vector<double> breakpoints;           // interior nonsmooth points
    std::optional<double> known_tv;
    std::optional<std::array<double, 3>> known_l1_norms;  // |g'|, |g''|, |g'''|
    std::optional<PolyQ> exact_poly;     // set for polynomial members
    std::optional<int> piecewise_degree; // set for (piecewise) polynomial members

    void validate() const {
        if (!f) throw std::invalid_argument("TestFunction " + id + ": evaluator missing");
        if (cls == SmoothnessClass::C3 && (!d1 || !d2 || !d3))
            throw std::invalid_argument("TestFunction " + id +
                                        ": C3 members need all three derivatives");
        for (size_t i = 0; i < breakpoints.size(); ++i) {
            if (breakpoints[i] < 0.0 || breakpoints[i] > 1.0)
                throw std::invalid_argument("TestFunction " + id + ": breakpoint outside [0,1]");
            if (i > 0 && !(breakpoints[i] > breakpoints[i - 1]))
                throw std::invalid_argument("TestFunction " + id + ": breakpoints unsorted");
        }
    }

    Panelization panelization(int panels_per_segment) const {
        return Panelization::with_interior(breakpoints, panels_per_segment);
    }
};

/// The default experiment corpus: polynomials, a kink, a jump, trigonometric
/// and exponential C3 members, and a three-tooth triangle wave.
inline std::vector<TestFunction> corpus_default() {
    const double pi = std::acos(-1.0);
    const double e = std::exp(1.0);
    std::vector<TestFunction> corpus;

    {
        TestFunction t;
        t.id = "one";
        t.cls = SmoothnessClass::C3;
        t.f = [](double) { return 1.0; };
        t.d1 = [](double) { return 0.0; };
        t.d2 = [](double) { return 0.0; };
        t.d3 = [](double) { return 0.0; };
        t.known_tv = 0.0;
        t.known_l1_norms = std::array<double, 3>{0.0, 0.0, 0.0};
        t.exact_poly = PolyQ({Rational(1)});
        t.piecewise_degree = 0;
        corpus.push_back(std::move(t));
    }
    {
        TestFunction t;
        t.id = "id";
        t.cls = SmoothnessClass::C3;
        t.f = [](double x) { return x; };
        t.d1 = [](double) { return 1.0; };
        t.d2 = [](double) { return 0.0; };
        t.d3 = [](double) { return 0.0; };
        t.known_tv = 1.0;
        t.known_l1_norms = std::array<double, 3>{1.0, 0.0, 0.0};
        t.exact_poly = PolyQ({Rational(0), Rational(1)});
        t.piecewise_degree = 1;
        corpus.push_back(std::move(t));
    }
    {
        TestFunction t;
        t.id = "square";
        t.cls = SmoothnessClass::C3;
        t.f = [](double x) { return x * x; };
        t.d1 = [](double x) { return 2.0 * x; };
        t.d2 = [](double) { return 2.0; };
        t.d3 = [](double) { return 0.0; };
        t.known_tv = 1.0;
        t.known_l1_norms = std::array<double, 3>{1.0, 2.0, 0.0};
        t.exact_poly = PolyQ({Rational(0), Rational(0), Rational(1)});
        t.piecewise_degree = 2;
        corpus.push_back(std::move(t));
    }
    {
        TestFunction t;
        t.id = "cube";
        t.cls = SmoothnessClass::C3;
        t.f = [](double x) { return x * x * x; };
        t.d1 = [](double x) { return 3.0 * x * x; };
        t.d2 = [](double x) { return 6.0 * x; };
        t.d3 = [](double) { return 6.0; };
        t.known_tv = 1.0;
        t.known_l1_norms = std::array<double, 3>{1.0, 3.0, 6.0};
        t.exact_poly = PolyQ({Rational(0), Rational(0), Rational(0), Rational(1)});
        t.piecewise_degree = 3;
        corpus.push_back(std::move(t));
    }
    {
        TestFunction t;
        t.id = "abs_half";
        t.cls = SmoothnessClass::AC;
        t.f = [](double x) { return std::abs(x - 0.5); };
        t.d1 = [](double x) { return x < 0.5 ? -1.0 : 1.0; };
        t.breakpoints = {0.5};
        t.known_tv = 1.0;
        t.piecewise_degree = 1;
        corpus.push_back(std::move(t));
    }
    {
        TestFunction t;
        t.id = "step_half";
        t.cls = SmoothnessClass::BV;
        t.f = [](double x) { return x < 0.5 ? 0.0 : 1.0; };
        t.breakpoints = {0.5};
        t.known_tv = 1.0;
        t.piecewise_degree = 0;
        corpus.push_back(std::move(t));
    }
    {
        TestFunction t;
        t.id = "sin2pi";
        t.cls = SmoothnessClass::C3;
        t.f = [pi](double x) { return std::sin(2.0 * pi * x); };
        t.d1 = [pi](double x) { return 2.0 * pi * std::cos(2.0 * pi * x); };
        t.d2 = [pi](double x) { return -4.0 * pi * pi * std::sin(2.0 * pi * x); };
        t.d3 = [pi](double x) { return -8.0 * pi * pi * pi * std::cos(2.0 * pi * x); };
        t.known_tv = 4.0;
        t.known_l1_norms = std::array<double, 3>{4.0, 8.0 * pi, 16.0 * pi * pi};
        corpus.push_back(std::move(t));
    }
    {
        TestFunction t;
        t.id = "exp";
        t.cls = SmoothnessClass::C3;
        t.f = [](double x) { return std::exp(x); };
        t.d1 = [](double x) { return std::exp(x); };
        t.d2 = [](double x) { return std::exp(x); };
        t.d3 = [](double x) { return std::exp(x); };
        t.known_tv = e - 1.0;
        t.known_l1_norms = std::array<double, 3>{e - 1.0, e - 1.0, e - 1.0};
        corpus.push_back(std::move(t));
    }
    {
        TestFunction t;
        t.id = "sawtooth3";
        t.cls = SmoothnessClass::AC;
        // three-tooth triangle wave of amplitude 1/2: V = 3
        t.f = [](double x) {
            const double s = 3.0 * x - std::floor(3.0 * x);
            return s <= 0.5 ? s : 1.0 - s;
        };
        t.d1 = [](double x) {
            const double s = 3.0 * x - std::floor(3.0 * x);
            return s <= 0.5 ? 3.0 : -3.0;
        };
        t.breakpoints = {1.0 / 6.0, 1.0 / 3.0, 0.5, 2.0 / 3.0, 5.0 / 6.0};
        t.known_tv = 3.0;
        t.piecewise_degree = 1;
        corpus.push_back(std::move(t));
    }

    for (const auto& t : corpus) t.validate();
    return corpus;
}

inline const TestFunction& corpus_lookup(const std::vector<TestFunction>& corpus,
                                         const std::string& id) {
    for (const auto& t : corpus)
        if (t.id == id) return t;
    throw std::invalid_argument("unknown corpus function: " + id);
}

/// Durrmeyer coefficients honoring the corpus metadata: exact path for
/// polynomial members, exactness-matched single-panel rules for piecewise
/// polynomials, composite defaults otherwise. Breakpoints always become
/// segment boundaries.
inline DurrmeyerCoefficients<double> durrmeyer_coefficients_for(const TestFunction& f, int n,
                                                                int quad_order = 32,
                                                                int panels = 64) {
    if (f.exact_poly) return to_double(durrmeyer_coefficients(*f.exact_poly, n));
    if (f.piecewise_degree) {
        return durrmeyer_coefficients(f.f, n, exactness_matched_rule(n, *f.piecewise_degree),
                                      f.panelization(1));
    }
    return durrmeyer_coefficients(f.f, n, gauss_legendre(quad_order), f.panelization(panels));
}

}  // namespace bdvar
