#ifndef LIGHTCAV_SETUP_HPP
#define LIGHTCAV_SETUP_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lightcav/modes.hpp"

namespace lightcav
{

// CODATA 2018, SI units.
struct PhysicalConstants
{
    double c = 299792458.0;                    // m/s, exact
    double G = 6.67430e-11;                    // m^3 kg^-1 s^-2
    double hbar = 1.054571817e-34;             // J s
    double vacuum_permittivity = 8.8541878128e-12;
    double vacuum_permeability = 1.25663706212e-6;
    double electron_mass = 9.1093837015e-31;   // kg
    double elementary_charge = 1.602176634e-19; // C

    double planck_length() const { return std::sqrt(hbar * G / (c * c * c)); }
};

// How the photon storage time of a lossy cavity follows from its finesse.
enum class LossyTimeConvention
{
    Pi,      // T = L F / (pi c)
    Caption  // T = L F / c
};

std::string to_string(LossyTimeConvention convention);
LossyTimeConvention lossy_time_convention_from_string(const std::string& name);

struct ExperimentConfig
{
    double cavity_length = 1000.0;  // m
    double wavelength = 500e-9;     // m
    std::optional<double> finesse;  // empty: lossless cavity
    std::optional<double> measurement_time_override;  // s
    // Empty: the (0, 1, M) mode with M = round(2 L / lambda).
    std::optional<ModeIndices> mode;
    LossyTimeConvention lossy_time_convention = LossyTimeConvention::Caption;
    PhysicalConstants constants;

    ModeIndices resolved_mode() const;
};

// lambda = 500 nm, L = 1000 m, F = 10^4.
ExperimentConfig standard_config();

// The same cavity with the finesse removed, so that T = L / c.
ExperimentConfig lossless_variant(const ExperimentConfig& config);

// Optical (0, 1, M) mode whose frequency M pi c / L sits at 2 pi c / lambda.
ModeIndices optical_mode(double cavity_length, double wavelength);

// Throws std::invalid_argument for an unphysical configuration; returns
// non-fatal warnings (for example lambda not much smaller than L).
std::vector<std::string> validate(const ExperimentConfig& config);

struct DimensionlessParams
{
    double kappa = 0.0;                // (l_Pl / L)^2
    std::int64_t mode_index = 1;       // M, the l_z of the mode
    double omega = 0.0;                // rad/s
    double tau = 0.0;                  // Omega T
    double perturbation_coefficient = 0.0;  // 4 kappa / pi, so that P = n * coefficient
    double exact_prefactor = 1.0;      // Omega L / (pi c)

    double perturbation_scale(double photons) const { return photons * perturbation_coefficient; }
};

double storage_time(const ExperimentConfig& config);

DimensionlessParams derive_params(const ExperimentConfig& config);

struct ValidityReport
{
    bool weak_field_ok = true;
    double weak_field_margin = 0.0;  // n kappa M
    bool euler_heisenberg_ok = true;
    double minimum_cavity_length = 0.0;  // m
    bool wavelength_vs_planck_ok = true;
    std::vector<std::string> messages;

    bool all_ok() const { return weak_field_ok && euler_heisenberg_ok && wavelength_vs_planck_ok; }
};

inline constexpr double kWeakFieldThreshold = 0.1;

// Length scale hbar^{3/4} e^{1/2} eps0^{-1/4} m_e^{-1} c^{-5/4}; the cavity must be
// larger than this times (n M)^{1/4} to stay below the critical field.
double euler_heisenberg_length(const PhysicalConstants& constants);

ValidityReport validate_regime(const ExperimentConfig& config, double photons);

} // namespace lightcav

#endif // LIGHTCAV_SETUP_HPP
