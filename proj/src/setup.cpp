#include "lightcav/setup.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lightcav
{

std::string to_string(LossyTimeConvention convention)
{
    return convention == LossyTimeConvention::Pi ? "pi" : "caption";
}

LossyTimeConvention lossy_time_convention_from_string(const std::string& name)
{
    if (name == "pi")
        return LossyTimeConvention::Pi;
    if (name == "caption")
        return LossyTimeConvention::Caption;
    throw std::invalid_argument("unknown lossy time convention '" + name
                                + "' (expected 'pi' or 'caption')");
}

ModeIndices ExperimentConfig::resolved_mode() const
{
    return mode ? *mode : optical_mode(cavity_length, wavelength);
}

ExperimentConfig standard_config()
{
    ExperimentConfig config;
    config.cavity_length = 1000.0;
    config.wavelength = 500e-9;
    config.finesse = 1e4;
    return config;
}

ExperimentConfig lossless_variant(const ExperimentConfig& config)
{
    ExperimentConfig out = config;
    out.finesse.reset();
    return out;
}

ModeIndices optical_mode(double cavity_length, double wavelength)
{
    if (!(cavity_length > 0.0) || !(wavelength > 0.0))
        throw std::invalid_argument("cavity length and wavelength must be positive");
    const double M = std::max(1.0, std::round(2.0 * cavity_length / wavelength));
    return ModeIndices::make(0, 1, static_cast<std::int64_t>(M));
}

std::vector<std::string> validate(const ExperimentConfig& config)
{
    if (!(config.cavity_length > 0.0) || !std::isfinite(config.cavity_length))
        throw std::invalid_argument("cavity_length must be positive and finite");
    if (!(config.wavelength > 0.0) || !std::isfinite(config.wavelength))
        throw std::invalid_argument("wavelength must be positive and finite");
    if (config.finesse && !(*config.finesse > 0.0))
        throw std::invalid_argument("finesse must be positive");
    if (config.measurement_time_override && !(*config.measurement_time_override > 0.0))
        throw std::invalid_argument("measurement time must be positive");
    if (config.mode)
        config.mode->validate();

    std::vector<std::string> warnings;
    if (config.wavelength / config.cavity_length >= 1e-2)
    {
        std::ostringstream msg;
        msg << "wavelength/cavity_length = " << config.wavelength / config.cavity_length
            << " is not small; the plane-mode picture is marginal";
        warnings.push_back(msg.str());
    }
    return warnings;
}

double storage_time(const ExperimentConfig& config)
{
    validate(config);
    if (config.measurement_time_override)
        return *config.measurement_time_override;

    const double transit = config.cavity_length / config.constants.c;
    if (!config.finesse)
        return transit;
    const double finesse = *config.finesse;
    return config.lossy_time_convention == LossyTimeConvention::Pi
               ? transit * finesse / std::numbers::pi
               : transit * finesse;
}

DimensionlessParams derive_params(const ExperimentConfig& config)
{
    validate(config);
    const ModeIndices mode = config.resolved_mode();
    const PhysicalConstants& k = config.constants;
    const double L = config.cavity_length;

    DimensionlessParams p;
    const double ratio = k.planck_length() / L;
    p.kappa = ratio * ratio;
    p.mode_index = mode.lz;
    p.omega = mode_frequency(mode, L, k.c);
    p.tau = p.omega * storage_time(config);
    p.perturbation_coefficient = 4.0 * p.kappa / std::numbers::pi;
    p.exact_prefactor = p.omega * L / (std::numbers::pi * k.c);
    return p;
}

double euler_heisenberg_length(const PhysicalConstants& k)
{
    return std::pow(k.hbar, 0.75) * std::sqrt(k.elementary_charge)
           * std::pow(k.vacuum_permittivity, -0.25) / k.electron_mass * std::pow(k.c, -1.25);
}

ValidityReport validate_regime(const ExperimentConfig& config, double photons)
{
    if (!(photons >= 0.0))
        throw std::invalid_argument("photon number must be non-negative");
    const DimensionlessParams p = derive_params(config);
    const PhysicalConstants& k = config.constants;
    const double M = static_cast<double>(p.mode_index);

    ValidityReport report;
    std::ostringstream msg;

    report.weak_field_margin = photons * p.kappa * M;
    report.weak_field_ok = report.weak_field_margin < kWeakFieldThreshold;
    msg << "weak field: n kappa M = " << report.weak_field_margin
        << (report.weak_field_ok ? " < " : " >= ") << kWeakFieldThreshold;
    report.messages.push_back(msg.str());

    msg.str("");
    report.minimum_cavity_length = euler_heisenberg_length(k) * std::pow(photons * M, 0.25);
    report.euler_heisenberg_ok = config.cavity_length > report.minimum_cavity_length;
    msg << "Euler-Heisenberg: minimum cavity length " << report.minimum_cavity_length << " m"
        << (report.euler_heisenberg_ok ? " < L = " : " >= L = ") << config.cavity_length << " m";
    report.messages.push_back(msg.str());

    // Below l_Pl sqrt(cT/L) a coherent probe would beat the optimal state and
    // the wavelength approaches the Planck scale.
    msg.str("");
    const double T = storage_time(config);
    const double floor =
        k.planck_length() * std::max(1.0, std::sqrt(k.c * T / config.cavity_length));
    report.wavelength_vs_planck_ok = config.wavelength > floor;
    msg << "wavelength: " << config.wavelength << " m"
        << (report.wavelength_vs_planck_ok ? " > " : " <= ") << floor << " m";
    report.messages.push_back(msg.str());

    return report;
}

} // namespace lightcav
