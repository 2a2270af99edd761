#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lightcav/setup.hpp"

using namespace lightcav;

TEST_CASE("planck length from hbar, G and c")
{
    const PhysicalConstants k;
    const double l = k.planck_length();
    CHECK(l * l / (k.hbar * k.G / (k.c * k.c * k.c)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(l == doctest::Approx(1.62e-35).epsilon(0.01));
}

TEST_CASE("kappa and mode index of the standard cavity")
{
    const DimensionlessParams p = derive_params(standard_config());
    CHECK(p.kappa == doctest::Approx(2.62e-76).epsilon(0.01));
    CHECK(p.mode_index == 4000000000LL);
    // Omega = M pi c / L sits at 2 pi c / lambda
    CHECK(p.omega == doctest::Approx(2.0 * std::numbers::pi * 299792458.0 / 500e-9).epsilon(1e-12));
    CHECK(p.perturbation_coefficient == doctest::Approx(4.0 * p.kappa / std::numbers::pi).epsilon(1e-15));
    CHECK(p.perturbation_scale(2.0) == doctest::Approx(2.0 * p.perturbation_coefficient).epsilon(1e-15));
}

TEST_CASE("fundamental mode frequency")
{
    ExperimentConfig c;
    c.cavity_length = 1.0;
    c.mode = ModeIndices::make(0, 1, 1);
    const DimensionlessParams p = derive_params(c);
    CHECK(p.omega == doctest::Approx(1.3324e9).epsilon(5e-4));
    CHECK(p.omega == doctest::Approx(std::sqrt(2.0) * std::numbers::pi * c.constants.c).epsilon(1e-12));
    CHECK(p.exact_prefactor == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("storage time conventions")
{
    ExperimentConfig c = lossless_variant(standard_config());
    CHECK(storage_time(c) == doctest::Approx(3.336e-6).epsilon(1e-3));

    c.finesse = 1e4;
    c.lossy_time_convention = LossyTimeConvention::Pi;
    CHECK(storage_time(c) == doctest::Approx(1.061e-2).epsilon(1e-3));
    c.lossy_time_convention = LossyTimeConvention::Caption;
    CHECK(storage_time(c) == doctest::Approx(3.336e-2).epsilon(1e-3));

    c.measurement_time_override = 2.5;
    CHECK(storage_time(c) == 2.5);
}

TEST_CASE("storage time grows with finesse and length")
{
    for (auto conv : {LossyTimeConvention::Pi, LossyTimeConvention::Caption})
    {
        ExperimentConfig c = standard_config();
        c.lossy_time_convention = conv;
        double last = 0.0;
        for (double f : {1.0, 10.0, 1e3, 1e5})
        {
            c.finesse = f;
            CHECK(storage_time(c) > last);
            last = storage_time(c);
        }
        last = 0.0;
        for (double L : {1.0, 10.0, 1e3, 1e5})
        {
            c.cavity_length = L;
            CHECK(storage_time(c) > last);
            last = storage_time(c);
        }
    }
}

TEST_CASE("doubling the length quarters kappa and halves omega")
{
    ExperimentConfig a;
    a.mode = ModeIndices::make(0, 3, 7);
    ExperimentConfig b = a;
    b.cavity_length = 2.0 * a.cavity_length;
    const DimensionlessParams pa = derive_params(a);
    const DimensionlessParams pb = derive_params(b);
    CHECK(pb.kappa / pa.kappa == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(pb.omega / pa.omega == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("configuration validation")
{
    ExperimentConfig c;
    c.cavity_length = -1.0;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
    c = ExperimentConfig{};
    c.wavelength = 0.0;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
    c = ExperimentConfig{};
    c.finesse = -3.0;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
    c = ExperimentConfig{};
    CHECK(validate(c).empty());
    c.wavelength = 0.5 * c.cavity_length;
    CHECK_FALSE(validate(c).empty());
    CHECK_EQ(lossy_time_convention_from_string("pi"), LossyTimeConvention::Pi);
    CHECK_THROWS_AS(lossy_time_convention_from_string("other"), std::invalid_argument);
}

TEST_CASE("two zero mode indices are rejected")
{
    ExperimentConfig c;
    c.mode = ModeIndices{0, 0, 1, Eigen::Vector3d::UnitX()};
    CHECK_THROWS_AS(derive_params(c), std::invalid_argument);
}

TEST_CASE("regime checks on the standard cavity")
{
    const ValidityReport r = validate_regime(standard_config(), 1e26);
    CHECK(r.all_ok());
    // (2.1e-13 m) (n M)^{1/4} with n M = 4e35
    CHECK(r.minimum_cavity_length == doctest::Approx(2.1e-13 * std::pow(4e35, 0.25)).epsilon(0.05));
    CHECK(r.minimum_cavity_length < 1000.0);
    CHECK(euler_heisenberg_length(PhysicalConstants{}) == doctest::Approx(2.1e-13).epsilon(0.05));
    CHECK(r.messages.size() == 3);
}

TEST_CASE("regime checks at zero photons and at the weak-field threshold")
{
    const ExperimentConfig c = standard_config();
    const ValidityReport zero = validate_regime(c, 0.0);
    CHECK(zero.all_ok());
    CHECK(zero.weak_field_margin == 0.0);

    const DimensionlessParams p = derive_params(c);
    const double n = 0.5 / (p.kappa * static_cast<double>(p.mode_index));
    const ValidityReport strong = validate_regime(c, n);
    CHECK(strong.weak_field_margin == doctest::Approx(0.5));
    CHECK_FALSE(strong.weak_field_ok);
    CHECK_FALSE(strong.all_ok());

    CHECK_THROWS_AS(validate_regime(c, -1.0), std::invalid_argument);
}
