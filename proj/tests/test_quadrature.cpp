#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lightcav/kernel.hpp"
#include "lightcav/modes.hpp"
#include "lightcav/quadrature.hpp"
#include "reference_values.hpp"

using namespace lightcav;

namespace
{
const double pi = std::numbers::pi;

Eigen::Matrix<double, 7, 1> seven_sources(double eta, double zeta)
{
    Eigen::Matrix<double, 7, 1> v;
    v.head<5>() = stress_011_sources(eta, zeta);
    v[5] = stress_01M_energy(eta);
    v[6] = 1.0;
    return v;
}

const SourceFunction f1_source{[](double e, double z) { return stress_f1(e, z); }, "f1"};
const SourceFunction one_source{[](double, double) { return 1.0; }, "1"};
const SourceFunction zero_source{[](double, double) { return 0.0; }, "0"};

void check_against_reference(const Eigen::Vector3d& point, const double (&reference)[7], double tolerance)
{
    const ConvolutionResult<7> r = convolve_sources<7>(seven_sources, point, {});
    CHECK(r.converged);
    // the center value of the largest integrand sets the scale of the absolute error
    const double scale = std::max(std::abs(reference[0]), 1.0);
    for (int i = 0; i < 7; ++i)
    {
        INFO("component " << i);
        CHECK(std::abs(r.value[i] - reference[i]) <= tolerance * scale);
    }
}
} // namespace

TEST_CASE("kernel values")
{
    CHECK(line_kernel(pi / 2, pi / 2, 0.0) == doctest::Approx(std::log(3.0 + 2.0 * std::sqrt(2.0))).epsilon(1e-12));
    CHECK(std::abs(line_kernel(pi / 2, pi / 2, 0.0) - 1.76275) < 1e-5);
    CHECK(line_kernel(pi / 2, 50.0, 0.0) == doctest::Approx(pi / 50.0).epsilon(0.01));
    CHECK(line_kernel(1.0, 0.5, 0.5) == doctest::Approx(line_kernel(pi - 1.0, 0.5, 0.5)).epsilon(1e-14));
    // on-axis exterior value ln(xi / (xi - pi))
    CHECK(line_kernel(10.0, 0.0, 0.0) == doctest::Approx(std::log(10.0 / (10.0 - pi))).epsilon(1e-14));
    CHECK_THROWS_AS(line_kernel(1.0, 0.0, 0.0), SingularKernel);
    CHECK_THROWS_AS(line_kernel(0.0, 0.0, 0.0), SingularKernel);
    CHECK(std::isinf(line_kernel_unchecked(1.0, 0.0, 0.0)));
}

TEST_CASE("kernel agrees with the textbook logarithm where that is well conditioned")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-3.0, 6.0);
    for (int i = 0; i < 1000; ++i)
    {
        const double xi = u(rng), eta = u(rng), zeta = u(rng);
        const double rho2 = eta * eta + zeta * zeta;
        if (rho2 < 0.1)
            continue;
        const double plain = std::log((xi + std::sqrt(xi * xi + rho2)) / (xi - pi + std::sqrt((xi - pi) * (xi - pi) + rho2)));
        CHECK(line_kernel(xi, eta, zeta) == doctest::Approx(plain).epsilon(1e-11));
    }
}

TEST_CASE("kernel symmetries and positivity")
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-5.0, 8.0);
    std::uniform_real_distribution<double> inside(1e-3, pi - 1e-3);
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i)
    {
        const double xi = u(rng), eta = u(rng), zeta = u(rng);
        const double I = line_kernel(xi, eta, zeta);
        worst = std::max({worst, std::abs(line_kernel(pi - xi, eta, zeta) - I) / I,
                          std::abs(line_kernel(xi, -eta, zeta) - I) / I,
                          std::abs(line_kernel(xi, eta, -zeta) - I) / I});
        CHECK(line_kernel(inside(rng), eta, zeta) > 0.0);
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("kernel stays accurate far away and next to the segment")
{
    // far field: pi / rho to leading order
    CHECK(line_kernel(pi / 2, 1e6, 0.0) == doctest::Approx(pi / 1e6).epsilon(1e-10));
    CHECK(line_kernel(1e7, 0.0, 1.0) == doctest::Approx(pi / 1e7).epsilon(1e-6));
    // just beyond the end of the segment, small rho
    const double xi = pi + 1e-9, rho = 1e-12;
    const double expected = std::log((xi + std::sqrt(xi * xi + rho * rho)) / (2e-9));
    CHECK(line_kernel(xi, rho, 0.0) == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("zero source gives exactly zero")
{
    const PointValue v = convolve_point(zero_source, {0.3, 1.0, 2.0});
    CHECK(v.value == 0.0);
    CHECK(v.converged);
    const FieldMap map = convolve_grid(zero_source, GridSpec::cube(-1.0, 4.0, 2));
    CHECK(map["value"].abs().maxCoeff() == 0.0);
}

TEST_CASE("convolutions match high-precision references")
{
    check_against_reference({pi / 2, pi / 2, pi / 2}, ref::center_hp, 1e-6);
    check_against_reference({10.0, pi / 2, pi / 2}, ref::xi10_hp, 1e-6);
    check_against_reference({1.5, 0.7, 2.0}, ref::interior_hp, 1e-6);
    check_against_reference({-1.0, 0.3, 2.5}, ref::exterior_hp, 1e-6);
}

TEST_CASE("center and exterior values agree with the frozen Monte-Carlo estimates")
{
    const ConvolutionResult<7> center = convolve_sources<7>(seven_sources, {pi / 2, pi / 2, pi / 2});
    const ConvolutionResult<7> far = convolve_sources<7>(seven_sources, {10.0, pi / 2, pi / 2});
    for (int i = 0; i < 7; ++i)
    {
        INFO("component " << i);
        CHECK(std::abs(center.value[i] - ref::center_mc[i].mean) <= 3.0 * ref::center_mc[i].standard_error);
        CHECK(std::abs(far.value[i] - ref::xi10_mc[i].mean) <= 3.0 * ref::xi10_mc[i].standard_error);
    }
}

TEST_CASE("constant source at an exterior point")
{
    const Eigen::Vector3d x{10.0, pi / 2, pi / 2};
    const PointValue v = convolve_point(one_source, x);
    CHECK(v.value > 0.0);
    CHECK(v.value < pi * pi * line_kernel(10.0, 0.0, 0.0));
    const ScalarOracle mc = mc_oracle(one_source, x, 1000000, 42);
    CHECK(std::abs(v.value - mc.mean) <= 3.0 * mc.standard_error);
    CHECK(convolve_point(one_source, {1000.0, pi / 2, pi / 2}).value < 0.01 * v.value);
}

TEST_CASE("convolution is finite at random interior points")
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, pi);
    for (int i = 0; i < 100; ++i)
    {
        const PointValue v = convolve_point(f1_source, {u(rng), u(rng), u(rng)});
        CHECK(std::isfinite(v.value));
        CHECK(v.value > 0.0);
        CHECK(v.converged);
    }
}

TEST_CASE("points on walls, edges and the singular segment")
{
    for (const Eigen::Vector3d& x : {Eigen::Vector3d(0.0, 0.0, 0.0), Eigen::Vector3d(pi, pi, 1.0),
                                     Eigen::Vector3d(1.0, 0.0, 2.0), Eigen::Vector3d(pi / 2, pi, pi)})
    {
        const PointValue v = convolve_point(one_source, x);
        CHECK(std::isfinite(v.value));
        CHECK(v.converged);
    }
}

TEST_CASE("halving the tolerance keeps the error below the previous bound")
{
    const Eigen::Vector3d points[] = {{pi / 2, pi / 2, pi / 2}, {1.5, 0.7, 2.0}, {-1.0, 0.3, 2.5}};
    const double* refs[] = {ref::center_hp, ref::interior_hp, ref::exterior_hp};
    for (int p = 0; p < 3; ++p)
        for (double tol = 1e-3; tol >= 1e-8; tol /= 10.0)
        {
            QuadratureSpec half;
            half.tolerance = tol / 2;
            const ConvolutionResult<7> r = convolve_sources<7>(seven_sources, points[p], half);
            for (int i = 0; i < 7; ++i)
                CHECK(std::abs(r.value[i] - refs[p][i]) <= tol * std::abs(refs[p][0]));
        }
}

TEST_CASE("the unsplit domain converges to the same value")
{
    QuadratureSpec plain;
    plain.split_singularity = false;
    const Eigen::Vector3d x{-1.0, 0.3, 2.5};
    CHECK(convolve_point(f1_source, x, plain).value == doctest::Approx(ref::exterior_hp[0]).epsilon(1e-6));
    QuadratureSpec wide;
    wide.points_per_panel = 21;
    CHECK(convolve_point(f1_source, {1.5, 0.7, 2.0}, wide).value == doctest::Approx(ref::interior_hp[0]).epsilon(1e-6));
}

TEST_CASE("quadrature spec validation")
{
    QuadratureSpec s;
    s.tolerance = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = QuadratureSpec{};
    s.max_depth = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = QuadratureSpec{};
    s.points_per_panel = 9;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("exhausted panel budget is reported, not hidden")
{
    QuadratureSpec s;
    s.tolerance = 1e-15;
    s.max_panels = 8;
    const PointValue v = convolve_point(f1_source, {pi / 2, pi / 2, pi / 2}, s);
    CHECK_FALSE(v.converged);
    CHECK(v.error > 0.0);
    CHECK(std::isfinite(v.value));
}

TEST_CASE("grid values mirror about the cavity mid-plane")
{
    GridSpec grid;
    grid.axes = {AxisRange{-1.0, pi + 1.0, 5}, AxisRange{0.2, 2.9, 3}, AxisRange{-0.5, 1.0, 2}};
    const FieldMap map = convolve_grid(f1_source, grid);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 2; ++k)
            {
                const double a = map["value"][static_cast<Eigen::Index>(grid.index(i, j, k))];
                const double b = map["value"][static_cast<Eigen::Index>(grid.index(4 - i, j, k))];
                CHECK(std::abs(a - b) <= 1e-10 * std::abs(a));
            }
}

TEST_CASE("grid evaluation does not depend on the worker count")
{
    const GridSpec grid = GridSpec::cube(-1.0, 4.0, 4);
    const FieldMap one = convolve_grid(f1_source, grid, {}, 1);
    const FieldMap four = convolve_grid(f1_source, grid, {}, 4);
    CHECK((one["value"] == four["value"]).all());
    CHECK((one.error == four.error).all());
}

TEST_CASE("Monte-Carlo oracle contract")
{
    const Eigen::Vector3d x{1.0, 2.0, 0.5};
    const ScalarOracle zero = mc_oracle(zero_source, x, 1000, 42);
    CHECK(zero.mean == 0.0);
    CHECK(zero.standard_error == 0.0);
    const ScalarOracle a = mc_oracle(f1_source, x, 5000, 42);
    const ScalarOracle b = mc_oracle(f1_source, x, 5000, 42);
    CHECK(a.mean == b.mean);
    CHECK(a.standard_error == b.standard_error);
    CHECK(mc_oracle(f1_source, x, 5000, 43).mean != a.mean);
    CHECK_THROWS_AS(mc_oracle(f1_source, x, 999, 42), std::invalid_argument);

    CHECK(derive_seed(42, 7) == derive_seed(42, 7));
    CHECK(derive_seed(42, 7) != derive_seed(42, 8));
    CHECK(derive_seed(42, 7) != derive_seed(43, 7));
}

TEST_CASE("quadrature agrees with the oracle over a 16^3 cavity grid")
{
    const GridSpec grid = GridSpec::cube(0.0, pi, 16);
    const FieldMap map = convolve_grid(f1_source, grid);
    const std::size_t samples = 100000;
    std::size_t inside = 0;
    for (std::size_t idx = 0; idx < grid.size(); ++idx)
    {
        const ScalarOracle mc = mc_oracle(f1_source, grid.point(idx), samples, derive_seed(42, idx));
        inside += std::abs(map["value"][static_cast<Eigen::Index>(idx)] - mc.mean) <= 3.0 * mc.standard_error;
    }
    CHECK(static_cast<double>(inside) >= 0.99 * static_cast<double>(grid.size()));
}
