#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lightcav/modes.hpp"
#include "lightcav/quadrature.hpp"

using namespace lightcav;

namespace
{
const double pi = std::numbers::pi;

// integral of v . v over the cavity, product Kronrod rule on [0, pi]^3
double mode_norm(const ModeIndices& mode, double L)
{
    const detail::KronrodRule& rule = detail::kronrod_rule(21);
    const std::size_t m = rule.nodes.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k)
            {
                const Eigen::Vector3d x = (pi / 2) * (Eigen::Vector3d(rule.nodes[i], rule.nodes[j], rule.nodes[k]).array() + 1.0).matrix();
                sum += rule.kronrod_weights[i] * rule.kronrod_weights[j] * rule.kronrod_weights[k]
                       * mode_function(mode, x, L).squaredNorm();
            }
    const double jacobian = std::pow(pi / 2, 3) * std::pow(L / pi, 3);
    return sum * jacobian;
}
} // namespace

TEST_CASE("mode frequency")
{
    const double c = 299792458.0;
    CHECK(mode_frequency(ModeIndices::make(0, 1, 1), pi, c) == doctest::Approx(std::sqrt(2.0) * c).epsilon(1e-14));
    for (std::int64_t M : {10, 1000, 100000})
    {
        const double ratio = mode_frequency(ModeIndices::make(0, 1, M), 1.0, c) / (M * pi * c);
        CHECK(std::abs(ratio - 1.0) <= 1.0 / (2.0 * M * M) + 1e-15);
    }
    CHECK_THROWS_AS(ModeIndices::make(0, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(ModeIndices::make(-1, 1, 1), std::invalid_argument);
}

TEST_CASE("polarization is a transverse unit vector")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> index(0, 9);
    for (int trial = 0; trial < 200; ++trial)
    {
        const std::int64_t lx = index(rng), ly = index(rng), lz = index(rng) + 1;
        if ((lx == 0) + (ly == 0) > 1)
            continue;
        const ModeIndices m = ModeIndices::make(lx, ly, lz);
        CHECK(std::abs(m.polarization.norm() - 1.0) < 1e-12);
        CHECK(std::abs(m.polarization.dot(m.index_vector())) < 1e-12 * m.index_vector().norm());
    }
    ModeIndices bad = ModeIndices::make(0, 1, 1);
    bad.polarization = Eigen::Vector3d::UnitY();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("mode function values")
{
    const ModeIndices m = ModeIndices::make(0, 1, 1);
    const double L = 2.0;
    const double norm = std::sqrt(4.0 / (L * L * L));
    for (double xi : {0.0, 0.4, 2.9})
    {
        const Eigen::Vector3d v = mode_function(m, {xi, pi / 2, pi / 2}, L);
        CHECK(v.x() == doctest::Approx(norm).epsilon(1e-14));
        CHECK(std::abs(v.y()) < 1e-15);
        CHECK(std::abs(v.z()) < 1e-15);
    }
    for (const ModeIndices& mode : {m, ModeIndices::make(2, 1, 3), ModeIndices::make(1, 4, 0)})
        CHECK(std::abs(mode_function(mode, {1.1, 0.0, 0.7}, L).x()) < 1e-15);
}

TEST_CASE("modes are normalized")
{
    CHECK(mode_norm(ModeIndices::make(0, 1, 1), 1.0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(mode_norm(ModeIndices::make(0, 1, 1), 3.0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(mode_norm(ModeIndices::make(1, 2, 1), 1.0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(mode_norm(ModeIndices::make(2, 0, 3), 1.0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("fundamental-mode stress values")
{
    CHECK(stress_f1(pi / 2, pi / 2) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(std::abs(stress_f1(0.0, 0.0)) < 1e-15);
    CHECK(stress_f4(pi / 4, pi / 4) == doctest::Approx(1.0).epsilon(1e-15));
    const StressComponents t = StressComponents::mode011();
    CHECK(t(0, 0, 0.3, 1.1) == stress_f1(0.3, 1.1));
    CHECK(t(1, 1, 0.3, 1.1) == stress_f2(0.3, 1.1));
    CHECK(t(2, 2, 0.3, 1.1) == stress_f3(0.3, 1.1));
    CHECK(t(3, 3, 0.3, 1.1) == stress_f3(1.1, 0.3));
    CHECK(t(2, 3, 0.3, 1.1) == stress_f4(0.3, 1.1));
    CHECK(t(3, 2, 0.3, 1.1) == stress_f4(0.3, 1.1));
    CHECK(t(0, 1, 0.3, 1.1) == 0.0);
    CHECK(t(1, 2, 0.3, 1.1) == 0.0);
    const Eigen::Matrix<double, 5, 1> f = stress_011_sources(0.3, 1.1);
    CHECK(f[0] == doctest::Approx(stress_f1(0.3, 1.1)).epsilon(1e-15));
    CHECK(f[3] == doctest::Approx(stress_f3_tilde(0.3, 1.1)).epsilon(1e-15));
}

TEST_CASE("large-M stress values")
{
    const StressComponents t = StressComponents::mode01M(100);
    for (double zeta : {0.0, 0.3, 2.0})
    {
        CHECK(t(0, 0, pi / 2, zeta) == doctest::Approx(4.0).epsilon(1e-15));
        CHECK(t.tensor(0.0, zeta).cwiseAbs().maxCoeff() < 1e-15);
    }
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, pi);
    for (int i = 0; i < 100; ++i)
    {
        const double e = u(rng), z = u(rng);
        CHECK(std::abs(t(1, 1, e, z) + t(2, 2, e, z)) < 1e-15);
        CHECK(t(0, 0, e, z) == t(3, 3, e, z));
    }
    CHECK_THROWS_AS(StressComponents::mode01M(1), std::invalid_argument);
    CHECK(StressComponents::mode01M(10).warnings().size() == 1);
    CHECK(StressComponents::mode01M(64).warnings().empty());
}

TEST_CASE("stress tensors are symmetric, trace-free and bounded")
{
    CHECK(std::abs(stress_trace(StressComponents::mode011(), 0.3, 1.1)) < 1e-14);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, pi);
    const StressComponents a = StressComponents::mode011();
    const StressComponents b = StressComponents::mode01M(4000);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i)
    {
        const double e = u(rng), z = u(rng);
        worst = std::max({worst, std::abs(stress_trace(a, e, z)), std::abs(stress_trace(b, e, z))});
        const Eigen::Matrix4d ta = a.tensor(e, z);
        CHECK((ta - ta.transpose()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(stress_f1(e, z) >= -1e-15);
        CHECK(stress_f1(e, z) <= 4.0 + 1e-15);
        CHECK(std::abs(stress_f2(e, z)) <= 4.0 + 1e-15);
        CHECK(std::abs(stress_f4(e, z)) <= 1.0 + 1e-15);
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("fundamental-mode stress is divergence free")
{
    const StressComponents t = StressComponents::mode011();
    CHECK(stress_divergence(t, pi / 4, pi / 4).cwiseAbs().maxCoeff() < 1e-14);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(1e-6, pi - 1e-6);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i)
        worst = std::max(worst, stress_divergence(t, u(rng), u(rng)).cwiseAbs().maxCoeff());
    CHECK(worst < 1e-12);
}

TEST_CASE("large-M stress has no divergence along z")
{
    const Eigen::Vector3d d = stress_divergence(StressComponents::mode01M(100), pi / 3, pi / 5);
    CHECK(std::abs(d.z()) < 1e-12);
    CHECK(d.x() == 0.0);
}

TEST_CASE("analytic divergence matches finite differences")
{
    const StressComponents t = StressComponents::mode011();
    const double e = 0.8, z = 2.1, h = 1e-5;
    const double dy = (t(2, 2, e + h, z) - t(2, 2, e - h, z)) / (2 * h) + (t(2, 3, e, z + h) - t(2, 3, e, z - h)) / (2 * h);
    const double dz = (t(3, 2, e + h, z) - t(3, 2, e - h, z)) / (2 * h) + (t(3, 3, e, z + h) - t(3, 3, e, z - h)) / (2 * h);
    CHECK(std::abs(dy) < 1e-8);
    CHECK(std::abs(dz) < 1e-8);
}
