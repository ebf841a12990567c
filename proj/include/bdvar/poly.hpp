#pragma once

#include "bdvar/scalar.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace bdvar {

/// Polynomial in Bernstein form: degree n, coefficients c_0..c_n. The scalar
/// parameter selects the exact (Rational) or floating path.
template <class S>
class BernsteinPoly {
public:
    explicit BernsteinPoly(std::vector<S> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty())
            throw std::invalid_argument("BernsteinPoly: at least one coefficient required");
    }

    int degree() const { return int(coeffs_.size()) - 1; }
    const std::vector<S>& coeffs() const { return coeffs_; }

    /// de Casteljau evaluation; exact at the endpoints (returns c_0 / c_n).
    S operator()(const S& x) const {
        std::vector<S> work = coeffs_;
        const S one_minus = S(1) - x;
        for (size_t level = work.size() - 1; level > 0; --level)
            for (size_t k = 0; k < level; ++k)
                work[k] = one_minus * work[k] + x * work[k + 1];
        return work[0];
    }

    /// Derivative in Bernstein form: degree n-1 with coefficients
    /// n (c_{k+1} - c_k); the derivative of a constant is the zero constant.
    BernsteinPoly derivative() const {
        const int n = degree();
        if (n == 0) return BernsteinPoly(std::vector<S>{S(0)});
        std::vector<S> d(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k)
            d[size_t(k)] = S(n) * (coeffs_[size_t(k) + 1] - coeffs_[size_t(k)]);
        return BernsteinPoly(std::move(d));
    }

    /// de Casteljau subdivision at x: Bernstein coefficients of the
    /// restrictions to [0,x] and [x,1], reparameterized to [0,1].
    std::pair<BernsteinPoly, BernsteinPoly> subdivide(const S& x) const {
        const size_t m = coeffs_.size();
        std::vector<S> work = coeffs_, left(m), right(m);
        const S one_minus = S(1) - x;
        left[0] = work[0];
        right[m - 1] = work[m - 1];
        for (size_t level = m - 1; level > 0; --level) {
            for (size_t k = 0; k < level; ++k)
                work[k] = one_minus * work[k] + x * work[k + 1];
            left[m - level] = work[0];
            right[level - 1] = work[level - 1];
        }
        return {BernsteinPoly(std::move(left)), BernsteinPoly(std::move(right))};
    }

    BernsteinPoly<double> to_double() const {
        std::vector<double> c(coeffs_.size());
        for (size_t k = 0; k < coeffs_.size(); ++k) c[k] = bdvar::to_double(coeffs_[k]);
        return BernsteinPoly<double>(std::move(c));
    }

    friend BernsteinPoly operator+(const BernsteinPoly& a, const BernsteinPoly& b) {
        if (a.degree() != b.degree())
            throw std::invalid_argument("BernsteinPoly: degree mismatch in addition");
        std::vector<S> c(a.coeffs_.size());
        for (size_t k = 0; k < c.size(); ++k) c[k] = a.coeffs_[k] + b.coeffs_[k];
        return BernsteinPoly(std::move(c));
    }

    friend BernsteinPoly operator*(const S& s, const BernsteinPoly& p) {
        std::vector<S> c(p.coeffs_.size());
        for (size_t k = 0; k < c.size(); ++k) c[k] = s * p.coeffs_[k];
        return BernsteinPoly(std::move(c));
    }

private:
    std::vector<S> coeffs_;
};

using PolyD = BernsteinPoly<double>;
using PolyQ = BernsteinPoly<Rational>;

}  // namespace bdvar
