#ifndef LIGHTCAV_RESONANCE_HPP
#define LIGHTCAV_RESONANCE_HPP

#include <Eigen/Dense>

#include "lightcav/quadrature.hpp"
#include "lightcav/setup.hpp"

namespace lightcav
{

// How the cavity length is defined in the perturbed space-time.
enum class LengthConvention
{
    LightSignal,  // proper length along the light path: the resonance shifts
    RigidRods     // coordinate length fixed by rods: no shift
};

// Where the average of epsilon along the propagation direction is taken.
enum class ShiftAverage
{
    CenterLine,   // eta = zeta = pi/2
    CrossSection  // uniform over the whole cavity
};

// epsilon per unit P M for the plane-wave setup: 2 * integral of I over the
// cross-section (constant source).
PointValue epsilon_field(const Eigen::Vector3d& point, const QuadratureSpec& spec = {});

// Dimensionless mean of epsilon / (P M) along xi in [0, pi].
struct EpsilonAverage
{
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
};

EpsilonAverage mean_epsilon(ShiftAverage average, const QuadratureSpec& spec = {});

struct FrequencyShift
{
    double relative_shift = 0.0;  // delta omega / omega
    double mean_epsilon = 0.0;    // per unit P M
    double perturbation_scale = 0.0;  // P M
    double error = 0.0;           // absolute, in delta omega / omega
    bool converged = true;
};

// delta omega / omega = (P M / 2) * mean epsilon under LightSignal, 0 under RigidRods.
FrequencyShift frequency_shift(const ExperimentConfig& config, double photons,
                               const QuadratureSpec& spec = {},
                               LengthConvention convention = LengthConvention::LightSignal,
                               ShiftAverage average = ShiftAverage::CenterLine);

} // namespace lightcav

#endif // LIGHTCAV_RESONANCE_HPP
