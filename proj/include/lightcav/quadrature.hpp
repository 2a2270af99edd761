#ifndef LIGHTCAV_QUADRATURE_HPP
#define LIGHTCAV_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lightcav/field_map.hpp"
#include "lightcav/kernel.hpp"

namespace lightcav
{

struct QuadratureSpec
{
    double tolerance = 1e-6;       // relative to the L1 size of the integral
    int max_depth = 24;            // subdivision levels per panel
    int points_per_panel = 15;     // Gauss-Kronrod order per axis: 15 or 21
    bool split_singularity = true; // four-panel split at the projected point
    std::size_t max_panels = 200000;

    void validate() const;
};

// A bounded scalar source on [0, pi]^2 (the dimensionless cross-section).
struct SourceFunction
{
    std::function<double(double, double)> eval;
    std::string label;
};

template <int N>
struct ConvolutionResult
{
    Eigen::Matrix<double, N, 1> value = Eigen::Matrix<double, N, 1>::Zero();
    // Absolute error estimate, the largest over components.
    double error = 0.0;
    bool converged = true;
    std::size_t evaluations = 0;
};

struct PointValue
{
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
};

namespace detail
{

// Gauss-Kronrod pair on [-1, 1]; gauss_weights are zero on the Kronrod-only nodes.
struct KronrodRule
{
    std::vector<double> nodes;
    std::vector<double> kronrod_weights;
    std::vector<double> gauss_weights;
};

const KronrodRule& kronrod_rule(int points);

// Maps the unit square (s, v) onto part of the cross-section. Duffy maps send
// s = 0 to the corner of a rectangle, where the kernel may be singular, with
// u = s^2 grading: offsets (w u, h u v) or (w u v, h u), Jacobian 2 |w h| s^3.
struct PanelMap
{
    enum Shape
    {
        LowerTriangle,
        UpperTriangle,
        Plain
    };
    double corner_eta = 0.0;
    double corner_zeta = 0.0;
    double width = 0.0;   // signed extent along eta from the corner
    double height = 0.0;  // signed extent along zeta from the corner
    Shape shape = Plain;
};

std::vector<PanelMap> panel_maps(const Eigen::Vector3d& point, const QuadratureSpec& spec);

template <int N>
struct Panel
{
    double s0, s1, v0, v1;
    int map;
    int depth;
    Eigen::Matrix<double, N, 1> value;
    Eigen::Matrix<double, N, 1> error;
    Eigen::Matrix<double, N, 1> l1;
};

// Integrates kernel * sources over one panel with the tensor Kronrod rule. The
// error estimate uses the embedded Gauss rule with the QUADPACK rescaling.
template <int N, class Sources>
void integrate_panel(const Sources& sources, const Eigen::Vector3d& point, const PanelMap& map,
                     const KronrodRule& rule, Panel<N>& panel)
{
    using Vec = Eigen::Matrix<double, N, 1>;
    const std::size_t m = rule.nodes.size();
    const double hs = 0.5 * (panel.s1 - panel.s0);
    const double cs = 0.5 * (panel.s1 + panel.s0);
    const double hv = 0.5 * (panel.v1 - panel.v0);
    const double cv = 0.5 * (panel.v1 + panel.v0);
    const double area = 4.0 * hs * hv;

    // Offset of the evaluation point from the map corner.
    const double off_eta = point.y() - map.corner_eta;
    const double off_zeta = point.z() - map.corner_zeta;
    const double duffy_scale = 2.0 * std::abs(map.width * map.height);

    thread_local std::vector<Vec> samples;
    samples.resize(m * m);

    Vec kronrod = Vec::Zero();
    Vec gauss = Vec::Zero();
    Vec absolute = Vec::Zero();
    for (std::size_t i = 0; i < m; ++i)
    {
        const double s = cs + hs * rule.nodes[i];
        for (std::size_t j = 0; j < m; ++j)
        {
            const double v = cv + hv * rule.nodes[j];
            double d_eta, d_zeta, jacobian;
            if (map.shape == PanelMap::Plain)
            {
                d_eta = std::numbers::pi * s;
                d_zeta = std::numbers::pi * v;
                jacobian = std::numbers::pi * std::numbers::pi;
            }
            else
            {
                const double u = s * s;
                const double along = map.shape == PanelMap::LowerTriangle ? u : u * v;
                const double across = map.shape == PanelMap::LowerTriangle ? u * v : u;
                d_eta = map.width * along;
                d_zeta = map.height * across;
                jacobian = duffy_scale * s * s * s;
            }
            const double kernel =
                line_kernel_unchecked(point.x(), off_eta - d_eta, off_zeta - d_zeta);
            Vec f = Vec::Zero();
            if (jacobian > 0.0 && std::isfinite(kernel))
                f = (kernel * jacobian) * sources(map.corner_eta + d_eta, map.corner_zeta + d_zeta);
            samples[i * m + j] = f;

            const double wk = rule.kronrod_weights[i] * rule.kronrod_weights[j];
            const double wg = rule.gauss_weights[i] * rule.gauss_weights[j];
            kronrod += wk * f;
            gauss += wg * f;
            absolute += wk * f.cwiseAbs();
        }
    }
    kronrod *= hs * hv;
    gauss *= hs * hv;
    absolute *= hs * hv;

    const Vec mean = kronrod / area;
    Vec spread = Vec::Zero();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            spread += (rule.kronrod_weights[i] * rule.kronrod_weights[j])
                      * (samples[i * m + j] - mean).cwiseAbs();
    spread *= hs * hv;

    constexpr double eps = std::numeric_limits<double>::epsilon();
    panel.value = kronrod;
    panel.l1 = absolute;
    for (int c = 0; c < N; ++c)
    {
        double err = std::abs(kronrod[c] - gauss[c]);
        if (spread[c] > 0.0 && err > 0.0)
            err = spread[c] * std::min(1.0, std::pow(200.0 * err / spread[c], 1.5));
        panel.error[c] = std::max(err, 50.0 * eps * absolute[c]);
    }
}

// Globally adaptive cubature of I(xi, eta - eta', zeta - zeta') * sources(eta', zeta')
// over [0, pi]^2. The panel with the largest error is split into four until the
// summed error meets tolerance * (L1 size of the integral).
template <int N, class Sources>
ConvolutionResult<N> convolve_sources(const Sources& sources, const Eigen::Vector3d& point,
                                      const QuadratureSpec& spec)
{
    using Vec = Eigen::Matrix<double, N, 1>;
    const KronrodRule& rule = kronrod_rule(spec.points_per_panel);
    const std::vector<PanelMap> maps = panel_maps(point, spec);

    std::vector<Panel<N>> panels;
    panels.reserve(64);
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry> queue;

    ConvolutionResult<N> result;
    const std::size_t per_panel = rule.nodes.size() * rule.nodes.size();

    Vec total_error = Vec::Zero();
    Vec total_l1 = Vec::Zero();
    auto add = [&](Panel<N> panel) {
        integrate_panel<N>(sources, point, maps[static_cast<std::size_t>(panel.map)], rule, panel);
        result.evaluations += per_panel;
        total_error += panel.error;
        total_l1 += panel.l1;
        queue.emplace(panel.error.maxCoeff(), panels.size());
        panels.push_back(panel);
    };

    for (std::size_t k = 0; k < maps.size(); ++k)
        add(Panel<N>{0.0, 1.0, 0.0, 1.0, static_cast<int>(k), 0, Vec::Zero(), Vec::Zero(), Vec::Zero()});

    std::vector<bool> retired(panels.size(), false);
    auto target = [&]() { return spec.tolerance * total_l1.maxCoeff(); };

    while (!queue.empty() && total_error.maxCoeff() > target())
    {
        const std::size_t worst = queue.top().second;
        queue.pop();
        const Panel<N> parent = panels[worst];
        if (parent.depth >= spec.max_depth || panels.size() + 4 > spec.max_panels)
            continue;

        retired.resize(panels.size() + 4, false);
        retired[worst] = true;
        total_error -= parent.error;
        total_l1 -= parent.l1;

        const double sm = 0.5 * (parent.s0 + parent.s1);
        const double vm = 0.5 * (parent.v0 + parent.v1);
        const int depth = parent.depth + 1;
        add(Panel<N>{parent.s0, sm, parent.v0, vm, parent.map, depth, Vec::Zero(), Vec::Zero(), Vec::Zero()});
        add(Panel<N>{sm, parent.s1, parent.v0, vm, parent.map, depth, Vec::Zero(), Vec::Zero(), Vec::Zero()});
        add(Panel<N>{parent.s0, sm, vm, parent.v1, parent.map, depth, Vec::Zero(), Vec::Zero(), Vec::Zero()});
        add(Panel<N>{sm, parent.s1, vm, parent.v1, parent.map, depth, Vec::Zero(), Vec::Zero(), Vec::Zero()});
    }
    retired.resize(panels.size(), false);

    // Final sums in panel order; the running totals above only steer refinement.
    Vec value = Vec::Zero();
    Vec error = Vec::Zero();
    Vec l1 = Vec::Zero();
    for (std::size_t p = 0; p < panels.size(); ++p)
    {
        if (retired[p])
            continue;
        value += panels[p].value;
        error += panels[p].error;
        l1 += panels[p].l1;
    }
    result.value = value;
    result.error = error.maxCoeff();
    result.converged = result.error <= spec.tolerance * l1.maxCoeff();
    return result;
}

} // namespace detail

// Integral of I(xi, eta - eta', zeta - zeta') * source(eta', zeta') over [0, pi]^2.
PointValue convolve_point(const SourceFunction& source, const Eigen::Vector3d& point,
                          const QuadratureSpec& spec = {});

// Several sources against one set of kernel evaluations. `sources` maps
// (eta', zeta') to an N-vector.
template <int N, class Sources>
ConvolutionResult<N> convolve_sources(const Sources& sources, const Eigen::Vector3d& point,
                                      const QuadratureSpec& spec = {})
{
    spec.validate();
    return detail::convolve_sources<N>(sources, point, spec);
}

// convolve_point at every node; the single component is named "value".
FieldMap convolve_grid(const SourceFunction& source, const GridSpec& grid,
                       const QuadratureSpec& spec = {}, unsigned threads = 0);

// Plain Monte-Carlo estimate of the same integral from uniform samples on
// [0, pi]^2. Deterministic for a given seed.
template <int N>
struct OracleEstimate
{
    Eigen::Matrix<double, N, 1> mean = Eigen::Matrix<double, N, 1>::Zero();
    Eigen::Matrix<double, N, 1> standard_error = Eigen::Matrix<double, N, 1>::Zero();
};

// Seed for grid node `index`; a pure function of both arguments.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

namespace detail
{
inline double unit_uniform(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
} // namespace detail

template <int N, class Sources>
OracleEstimate<N> mc_oracle_sources(const Sources& sources, const Eigen::Vector3d& point,
                                    std::size_t samples, std::uint64_t seed)
{
    using Vec = Eigen::Matrix<double, N, 1>;
    if (samples < 1000)
        throw std::invalid_argument("Monte-Carlo oracle needs at least 1000 samples");

    std::mt19937_64 rng(seed);
    const double pi = std::numbers::pi;
    const double area = pi * pi;
    Vec mean = Vec::Zero();
    Vec m2 = Vec::Zero();
    for (std::size_t k = 0; k < samples; ++k)
    {
        double eta, zeta, kernel;
        do
        {
            eta = pi * detail::unit_uniform(rng);
            zeta = pi * detail::unit_uniform(rng);
            kernel = line_kernel_unchecked(point.x(), point.y() - eta, point.z() - zeta);
        } while (!std::isfinite(kernel));

        const Vec f = (area * kernel) * sources(eta, zeta);
        const Vec delta = f - mean;
        mean += delta / static_cast<double>(k + 1);
        m2 += delta.cwiseProduct(f - mean);
    }

    OracleEstimate<N> out;
    out.mean = mean;
    const double n = static_cast<double>(samples);
    out.standard_error = (m2 / ((n - 1.0) * n)).cwiseSqrt();
    return out;
}

struct ScalarOracle
{
    double mean = 0.0;
    double standard_error = 0.0;
};

ScalarOracle mc_oracle(const SourceFunction& source, const Eigen::Vector3d& point,
                       std::size_t samples, std::uint64_t seed);

} // namespace lightcav

#endif // LIGHTCAV_QUADRATURE_HPP
