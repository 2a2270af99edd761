#include "lightcav/resonance.hpp"

#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <vector>

namespace lightcav
{

namespace
{

const SourceFunction& constant_source()
{
    static const SourceFunction source{[](double, double) { return 1.0; }, "1"};
    return source;
}

struct Interval
{
    double a;
    double b;
    double value;
    double error;
    bool converged;
};

// One Gauss-Kronrod step of epsilon(xi, pi/2, pi/2) over [a, b].
Interval line_panel(double a, double b, const QuadratureSpec& inner)
{
    const detail::KronrodRule& rule = detail::kronrod_rule(15);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const double pi = std::numbers::pi;
    double kronrod = 0.0;
    double gauss = 0.0;
    bool converged = true;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    {
        const PointValue e = epsilon_field({mid + half * rule.nodes[i], pi / 2, pi / 2}, inner);
        converged = converged && e.converged;
        kronrod += rule.kronrod_weights[i] * e.value;
        gauss += rule.gauss_weights[i] * e.value;
    }
    return {a, b, kronrod * half, std::abs(kronrod - gauss) * half, converged};
}

EpsilonAverage center_line_mean(const QuadratureSpec& spec)
{
    QuadratureSpec inner = spec;
    inner.tolerance = 0.1 * spec.tolerance;
    const double pi = std::numbers::pi;

    // epsilon is even about xi = pi/2, so integrate [0, pi/2] and double.
    auto worse = [](const Interval& x, const Interval& y) { return x.error < y.error; };
    std::priority_queue<Interval, std::vector<Interval>, decltype(worse)> queue(worse);
    Interval root = line_panel(0.0, pi / 2, inner);
    double value = root.value;
    double error = root.error;
    bool inner_ok = root.converged;
    queue.push(root);
    int splits = 0;
    while (error > spec.tolerance * std::abs(value) && splits < 200)
    {
        const Interval worst = queue.top();
        queue.pop();
        const double m = 0.5 * (worst.a + worst.b);
        const Interval left = line_panel(worst.a, m, inner);
        const Interval right = line_panel(m, worst.b, inner);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        inner_ok = inner_ok && left.converged && right.converged;
        queue.push(left);
        queue.push(right);
        ++splits;
    }
    const double to_mean = 2.0 / pi;
    return {value * to_mean, error * to_mean,
            inner_ok && error <= spec.tolerance * std::abs(value)};
}

// Product Gauss-Kronrod rule over [0, pi/2]^3 split into cells^3 boxes; the
// cavity mean is eight times the octant integral over pi^3.
EpsilonAverage cross_section_mean(const QuadratureSpec& spec, int cells)
{
    QuadratureSpec inner = spec;
    inner.tolerance = 0.1 * spec.tolerance;
    const detail::KronrodRule& rule = detail::kronrod_rule(15);
    const double pi = std::numbers::pi;
    const double width = 0.5 * pi / cells;
    const double half = 0.5 * width;
    const std::size_t m = rule.nodes.size();

    double kronrod = 0.0;
    double gauss = 0.0;
    bool converged = true;
    for (int ci = 0; ci < cells; ++ci)
        for (int cj = 0; cj < cells; ++cj)
            for (int ck = 0; ck < cells; ++ck)
            {
                const Eigen::Vector3d mid = (Eigen::Vector3d(ci, cj, ck).array() + 0.5) * width;
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = 0; j < m; ++j)
                        for (std::size_t k = 0; k < m; ++k)
                        {
                            const Eigen::Vector3d x =
                                mid + half * Eigen::Vector3d(rule.nodes[i], rule.nodes[j], rule.nodes[k]);
                            const PointValue e = epsilon_field(x, inner);
                            converged = converged && e.converged;
                            kronrod += rule.kronrod_weights[i] * rule.kronrod_weights[j]
                                       * rule.kronrod_weights[k] * e.value;
                            gauss += rule.gauss_weights[i] * rule.gauss_weights[j]
                                     * rule.gauss_weights[k] * e.value;
                        }
            }
    const double scale = half * half * half * 8.0 / (pi * pi * pi);
    const double value = kronrod * scale;
    const double error = std::abs(kronrod - gauss) * scale;
    return {value, error, converged && error <= spec.tolerance * std::abs(value)};
}

} // namespace

PointValue epsilon_field(const Eigen::Vector3d& point, const QuadratureSpec& spec)
{
    PointValue v = convolve_point(constant_source(), point, spec);
    v.value *= 2.0;
    v.error *= 2.0;
    return v;
}

EpsilonAverage mean_epsilon(ShiftAverage average, const QuadratureSpec& spec)
{
    spec.validate();
    if (average == ShiftAverage::CenterLine)
        return center_line_mean(spec);

    EpsilonAverage result = cross_section_mean(spec, 1);
    for (int cells = 2; !result.converged && cells <= 4; cells *= 2)
        result = cross_section_mean(spec, cells);
    return result;
}

FrequencyShift frequency_shift(const ExperimentConfig& config, double photons,
                               const QuadratureSpec& spec, LengthConvention convention,
                               ShiftAverage average)
{
    if (!(photons >= 0.0))
        throw std::invalid_argument("photon number must be non-negative");
    const DimensionlessParams params = derive_params(config);
    const EpsilonAverage mean = mean_epsilon(average, spec);

    FrequencyShift shift;
    shift.mean_epsilon = mean.value;
    shift.perturbation_scale =
        params.perturbation_scale(photons) * static_cast<double>(params.mode_index);
    shift.converged = mean.converged;
    if (convention == LengthConvention::RigidRods)
        return shift;
    shift.relative_shift = 0.5 * shift.perturbation_scale * mean.value;
    shift.error = 0.5 * shift.perturbation_scale * mean.error;
    return shift;
}

} // namespace lightcav
