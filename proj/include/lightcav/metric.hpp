#ifndef LIGHTCAV_METRIC_HPP
#define LIGHTCAV_METRIC_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "lightcav/field_map.hpp"
#include "lightcav/modes.hpp"
#include "lightcav/quadrature.hpp"
#include "lightcav/setup.hpp"

namespace lightcav
{

// Convolutions of the kernel with the (011) sources f1, f2, f3, f3_tilde, f4.
struct GIntegrals
{
    double g1 = 0.0;
    double g2 = 0.0;
    double g3 = 0.0;
    double g3_tilde = 0.0;
    double g4 = 0.0;
    double error = 0.0;  // largest absolute error estimate of the five
    bool converged = true;

    Eigen::Matrix<double, 5, 1> as_vector() const
    {
        Eigen::Matrix<double, 5, 1> v;
        v << g1, g2, g3, g3_tilde, g4;
        return v;
    }
    static GIntegrals from_vector(const Eigen::Matrix<double, 5, 1>& v, double error, bool converged)
    {
        return {v[0], v[1], v[2], v[3], v[4], error, converged};
    }
};

GIntegrals g_integrals(const Eigen::Vector3d& point, const QuadratureSpec& spec = {});

// Which large-M source the (01M) metric uses. SinSquared follows from the
// large-M stress tensor (t00 = t33 = 4 sin^2 eta); FundamentalG is the
// alternative h00 = (g1 + g2 + g3 + g3_tilde) / 2 = g1 that yields
// delta_c(x)/c = -P M (g1 + g2 + g3 + g3_tilde) / 4.
enum class Mode01MSource
{
    SinSquared,
    FundamentalG
};

// h_{mu nu} in units of P (Mode011) or P M (Mode01M).
struct MetricPerturbation
{
    ModeKind kind = ModeKind::Mode011;
    double h00 = 0.0;
    double h11 = 0.0;
    double h22 = 0.0;
    double h33 = 0.0;
    double h23 = 0.0;
    double error = 0.0;
    bool converged = true;

    double trace() const { return -h00 + h11 + h22 + h33; }
    MetricPerturbation scaled(double factor) const;
};

MetricPerturbation metric_011(const GIntegrals& g);
MetricPerturbation metric_011(const Eigen::Vector3d& point, const QuadratureSpec& spec = {});

// 4 * integral of I * sin^2(eta').
PointValue h_tilde(const Eigen::Vector3d& point, const QuadratureSpec& spec = {});

// Throws std::invalid_argument for M < 8.
MetricPerturbation metric_01M(const Eigen::Vector3d& point, std::int64_t M,
                              const QuadratureSpec& spec = {},
                              Mode01MSource source = Mode01MSource::SinSquared);

// Absolute h: multiplies by P = n * 4 kappa / pi, by M for the (01M) mode, and
// optionally by Omega L / (pi c).
MetricPerturbation absolute_metric(const MetricPerturbation& h, const DimensionlessParams& params,
                                   double photons, bool exact_prefactor = false);

enum class LightSpeedDefinition
{
    Coordinate,  // dx/dt along a null ray: -(h00 + h_ii) / 2
    Measured     // clock eigentime: -h00 - h_ii / 2
};

// Relative change of the speed of light along x, y, z, in the units of h.
Eigen::Vector3d lightspeed_field(const MetricPerturbation& h,
                                 LightSpeedDefinition definition = LightSpeedDefinition::Coordinate);

struct MetricMapOptions
{
    ModeKind kind = ModeKind::Mode011;
    Mode01MSource source_01M = Mode01MSource::SinSquared;
    LightSpeedDefinition definition = LightSpeedDefinition::Coordinate;
    unsigned threads = 0;
    // Evaluate one node per orbit of the source symmetries (xi, eta, zeta
    // mirrors about pi/2, and eta <-> zeta for the 011 mode) when the grid has
    // them, and fill the rest by the exact transformation rules.
    bool use_symmetry = true;
};

// Components h00 h11 h22 h33 h23 dcx dcy dcz on the grid.
FieldMap metric_field_map(const GridSpec& grid, const QuadratureSpec& spec = {},
                          const MetricMapOptions& options = {});

inline const std::vector<std::string>& metric_component_names()
{
    static const std::vector<std::string> names{"h00", "h11", "h22", "h33", "h23", "dcx", "dcy", "dcz"};
    return names;
}

struct GridTooCoarse : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

struct ComponentResidual
{
    std::string name;
    double max_relative = 0.0;
    double mean_relative = 0.0;
    double max_absolute = 0.0;
};

struct ResidualStats
{
    std::vector<ComponentResidual> components;
    std::size_t nodes = 0;
    double spacing = 0.0;

    double max_relative() const;
    double mean_relative() const;
};

// Compares the 7-point Laplacian of each metric component with -4 pi * scale * t
// at grid nodes inside the cavity whose stencil stays in the closed cavity.
// Relative residuals are normalized by max |4 pi scale t| of the component over
// the nodes used. Throws GridTooCoarse for spacing above pi/32 or unequal spacing.
ResidualStats laplacian_residual(const FieldMap& field, ModeKind kind, double scale = 1.0);

// Orbit bookkeeping used for symmetric grids; exposed for tests.
struct NodeImage
{
    std::size_t canonical = 0;
    bool flip_eta = false;
    bool flip_zeta = false;
    bool swap = false;
};
std::vector<NodeImage> symmetry_images(const GridSpec& grid, bool allow_swap);

} // namespace lightcav

#endif // LIGHTCAV_METRIC_HPP
