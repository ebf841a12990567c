#include "bdvar/operators.hpp"
#include "bdvar/variation.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace bdvar;

namespace {

const double kPi = std::acos(-1.0);

std::vector<std::pair<double, double>> sample_on_grid(const std::function<double(double)>& f,
                                                      int points) {
    std::vector<std::pair<double, double>> samples;
    samples.reserve(size_t(points));
    for (int i = 0; i < points; ++i) {
        const double x = double(i) / double(points - 1);
        samples.emplace_back(x, f(x));
    }
    return samples;
}

}  // namespace

TEST_CASE("variation_partition closed cases") {
    CHECK(variation_partition({{0.0, 0.0}, {0.5, 0.5}, {1.0, 1.0}}).value == 1.0);
    CHECK(variation_partition({{0.0, 0.0}, {0.4, 0.0}, {0.6, 1.0}, {1.0, 1.0}}).value == 1.0);

    const auto sine = sample_on_grid([](double x) { return std::sin(2 * kPi * x); }, 1025);
    CHECK(std::abs(variation_partition(sine).value - 4.0) <= 1e-4);

    CHECK_THROWS_AS(variation_partition({{0.5, 1.0}, {0.4, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(variation_partition({{0.0, 1.0}, {1.5, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(variation_partition({}), std::invalid_argument);
}

TEST_CASE("partition sums grow under refinement") {
    const auto f = [](double x) { return std::sin(5.0 * x) + 0.3 * std::cos(17.0 * x); };
    const auto coarse = sample_on_grid(f, 33);
    const auto fine = sample_on_grid(f, 129);  // contains the coarse grid
    CHECK(variation_partition(fine).value >= variation_partition(coarse).value - 1e-15);
}

TEST_CASE("triangle inequality on a shared partition") {
    const auto f = [](double x) { return std::sin(3.0 * x); };
    const auto g = [](double x) { return std::cos(7.0 * x) * 0.5; };
    const auto fg = [&](double x) { return f(x) + g(x); };
    const auto vf = variation_partition(sample_on_grid(f, 257)).value;
    const auto vg = variation_partition(sample_on_grid(g, 257)).value;
    const auto vfg = variation_partition(sample_on_grid(fg, 257)).value;
    CHECK(vfg <= vf + vg + 1e-12);
}

TEST_CASE("tv_seminorm_ac closed cases") {
    const Panelization unit({0.0, 1.0}, 64);
    const auto one = tv_seminorm_ac([](double) { return 1.0; }, unit, 1e-10);
    CHECK(one.value == Catch::Approx(1.0).margin(1e-13));
    CHECK(one.method == VariationMethod::l1_of_derivative);

    const auto sine = tv_seminorm_ac([](double t) { return 2 * kPi * std::cos(2 * kPi * t); },
                                     unit, 1e-10);
    CHECK(std::abs(sine.value - 4.0) <= 1e-10);

    CHECK(tv_seminorm_ac([](double) { return 0.0; }, unit, 1e-10).value == 0.0);
}

TEST_CASE("variation_bernstein_exact on constants and monotone polynomials") {
    const auto constant = variation_bernstein_exact(PolyD({3.5}));
    CHECK(constant.value == 0.0);
    CHECK(constant.exact);

    // identity elevated to degree 5: coefficients k/5, monotone
    const auto id5 = variation_bernstein_exact(PolyD({0.0, 0.2, 0.4, 0.6, 0.8, 1.0}));
    CHECK(id5.value == 1.0);
    CHECK(id5.exact);
    CHECK(id5.method == VariationMethod::exact_monotone);
}

TEST_CASE("variation_bernstein_exact handles a double root of the derivative") {
    // p with coefficients [0,1,0,1]: p'(x) = 12 (x - 1/2)^2 >= 0, so p is
    // monotone and V = 1; the derivative root at 1/2 is a tangency.
    const PolyD p({0.0, 1.0, 0.0, 1.0});
    const auto v = variation_bernstein_exact(p, 1e-12);

    // dense-partition oracle
    std::vector<std::pair<double, double>> samples;
    const int grid = 1'000'000;
    samples.reserve(size_t(grid) + 1);
    for (int i = 0; i <= grid; ++i) {
        const double x = double(i) / grid;
        samples.emplace_back(x, p(x));
    }
    const double oracle = variation_partition(samples).value;
    CHECK(std::abs(v.value - oracle) <= 1e-9);
    CHECK(v.value <= 1.0 + 1e-12);
}

TEST_CASE("variation_bernstein_exact on an oscillating polynomial") {
    const PolyD p({0.0, 1.0, -1.0, 1.0});
    const auto v = variation_bernstein_exact(p, 1e-12);

    const int grid = 100'000;
    std::vector<std::pair<double, double>> samples;
    samples.reserve(size_t(grid) + 1);
    for (int i = 0; i <= grid; ++i) {
        const double x = double(i) / grid;
        samples.emplace_back(x, p(x));
    }
    const double lower = variation_partition(samples).value;
    CHECK(v.value >= lower - 1e-9);
    CHECK(v.value <= lower + 1e-8 + v.error_bound);

    // variation-diminishing coefficient bound: V <= sum |c_{k+1} - c_k| = 5
    double coeff_variation = 0.0;
    for (size_t k = 1; k < p.coeffs().size(); ++k)
        coeff_variation += std::abs(p.coeffs()[k] - p.coeffs()[k - 1]);
    CHECK(v.value <= coeff_variation + 1e-12);
}

TEST_CASE("coefficient bound holds for random polynomials") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + int(rng() % 12);
        std::vector<double> coeffs(size_t(n) + 1);
        for (auto& c : coeffs) c = dist(rng);
        const PolyD p(coeffs);
        const auto v = variation_bernstein_exact(p, 1e-12);
        double coeff_variation = 0.0;
        for (size_t k = 1; k < coeffs.size(); ++k)
            coeff_variation += std::abs(coeffs[k] - coeffs[k - 1]);
        CHECK(v.value <= coeff_variation + 1e-10);

        // consistency across regimes
        const auto q = p.derivative();
        const auto via_l1 =
            tv_seminorm_ac([&](double x) { return q(x); }, Panelization({0.0, 1.0}, 16), 1e-9);
        CHECK(std::abs(v.value - via_l1.value) <=
              std::max(1e-8, v.error_bound + via_l1.error_bound + 1e-9));
    }
}

TEST_CASE("variation of a Durrmeyer image matches the sampled lower bound") {
    const auto f = [](double t) { return std::sin(2 * kPi * t); };
    const auto poly = durrmeyer_apply(f, 24, gauss_legendre(32), Panelization({0.0, 1.0}, 64));
    const auto v = variation_bernstein_exact(poly, 1e-12);

    const int grid = 100'000;
    std::vector<std::pair<double, double>> samples;
    samples.reserve(size_t(grid) + 1);
    for (int i = 0; i <= grid; ++i) {
        const double x = double(i) / grid;
        samples.emplace_back(x, poly(x));
    }
    const double lower = variation_partition(samples).value;
    CHECK(v.value >= lower - 1e-10);
    CHECK(v.value <= lower + 1e-7);
}

TEST_CASE("bv_norm adds the anchor value at zero") {
    VariationResult id{1.0, VariationMethod::exact_monotone, 0.0, true};
    CHECK(bv_norm(id, 0.0) == 1.0);
    VariationResult constant{0.0, VariationMethod::exact_monotone, 0.0, true};
    CHECK(bv_norm(constant, 1.0) == 1.0);
    VariationResult sine{4.0, VariationMethod::l1_of_derivative, 1e-11, false};
    CHECK(bv_norm(sine, std::sin(0.0)) == 4.0);
}
