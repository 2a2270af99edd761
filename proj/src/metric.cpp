#include "lightcav/metric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace lightcav
{

GIntegrals g_integrals(const Eigen::Vector3d& point, const QuadratureSpec& spec)
{
    auto sources = [](double eta, double zeta) { return stress_011_sources(eta, zeta); };
    const ConvolutionResult<5> r = convolve_sources<5>(sources, point, spec);
    return GIntegrals::from_vector(r.value, r.error, r.converged);
}

MetricPerturbation MetricPerturbation::scaled(double factor) const
{
    MetricPerturbation out = *this;
    out.h00 *= factor;
    out.h11 *= factor;
    out.h22 *= factor;
    out.h33 *= factor;
    out.h23 *= factor;
    out.error *= std::abs(factor);
    return out;
}

MetricPerturbation metric_011(const GIntegrals& g)
{
    MetricPerturbation h;
    h.kind = ModeKind::Mode011;
    h.h00 = 0.5 * (g.g1 + g.g2 + g.g3 + g.g3_tilde);
    h.h11 = 0.5 * (g.g1 + g.g2 - g.g3 - g.g3_tilde);
    h.h22 = 0.5 * (g.g1 - g.g2 + g.g3 - g.g3_tilde);
    h.h33 = 0.5 * (g.g1 - g.g2 + g.g3_tilde - g.g3);
    h.h23 = g.g4;
    h.error = 2.0 * g.error;
    h.converged = g.converged;
    return h;
}

MetricPerturbation metric_011(const Eigen::Vector3d& point, const QuadratureSpec& spec)
{
    return metric_011(g_integrals(point, spec));
}

namespace
{

SourceFunction sin_squared_source()
{
    return {[](double eta, double) { return stress_01M_energy(eta); }, "4 sin^2(eta)"};
}

SourceFunction f1_source()
{
    return {[](double eta, double zeta) { return stress_f1(eta, zeta); }, "f1"};
}

MetricPerturbation metric_01M_from(double h00, double error, bool converged)
{
    MetricPerturbation h;
    h.kind = ModeKind::Mode01M;
    h.h00 = h00;
    h.h33 = h00;
    h.error = error;
    h.converged = converged;
    return h;
}

} // namespace

PointValue h_tilde(const Eigen::Vector3d& point, const QuadratureSpec& spec)
{
    return convolve_point(sin_squared_source(), point, spec);
}

MetricPerturbation metric_01M(const Eigen::Vector3d& point, std::int64_t M,
                              const QuadratureSpec& spec, Mode01MSource source)
{
    if (M < 8)
        throw std::invalid_argument("the (01M) metric needs M >= 8");
    const PointValue v = source == Mode01MSource::SinSquared
                             ? h_tilde(point, spec)
                             : convolve_point(f1_source(), point, spec);
    return metric_01M_from(v.value, v.error, v.converged);
}

MetricPerturbation absolute_metric(const MetricPerturbation& h, const DimensionlessParams& params,
                                   double photons, bool exact_prefactor)
{
    double factor = params.perturbation_scale(photons);
    if (h.kind == ModeKind::Mode01M)
        factor *= static_cast<double>(params.mode_index);
    if (exact_prefactor)
        factor *= params.exact_prefactor;
    return h.scaled(factor);
}

Eigen::Vector3d lightspeed_field(const MetricPerturbation& h, LightSpeedDefinition definition)
{
    // For the (01M) metric h11 = h22 = 0 and h33 = h00, which gives
    // dc(x) = dc(y) = -h00/2 and dc(z) = 2 dc(x).
    const Eigen::Vector3d spatial(h.h11, h.h22, h.h33);
    if (definition == LightSpeedDefinition::Coordinate)
        return -0.5 * (Eigen::Vector3d::Constant(h.h00) + spatial);
    return -(Eigen::Vector3d::Constant(h.h00) + 0.5 * spatial);
}

std::vector<NodeImage> symmetry_images(const GridSpec& grid, bool allow_swap)
{
    const double pi = std::numbers::pi;
    auto mirrored = [&](const AxisRange& a) {
        return a.count > 0 && std::abs(a.lo + a.hi - pi) <= 1e-12 * pi;
    };
    const bool mx = mirrored(grid.axes[0]);
    const bool my = mirrored(grid.axes[1]);
    const bool mz = mirrored(grid.axes[2]);
    const bool sw = allow_swap && grid.axes[1].lo == grid.axes[2].lo
                    && grid.axes[1].hi == grid.axes[2].hi
                    && grid.axes[1].count == grid.axes[2].count;

    const std::size_t n0 = grid.axes[0].count;
    const std::size_t n1 = grid.axes[1].count;
    const std::size_t n2 = grid.axes[2].count;
    std::vector<NodeImage> images(grid.size());
    for (std::size_t i = 0; i < n0; ++i)
        for (std::size_t j = 0; j < n1; ++j)
            for (std::size_t k = 0; k < n2; ++k)
            {
                const std::size_t self = grid.index(i, j, k);
                NodeImage best{self, false, false, false};
                for (int fx = 0; fx <= (mx ? 1 : 0); ++fx)
                    for (int fe = 0; fe <= (my ? 1 : 0); ++fe)
                        for (int fz = 0; fz <= (mz ? 1 : 0); ++fz)
                            for (int s = 0; s <= (sw ? 1 : 0); ++s)
                            {
                                const std::size_t ii = fx ? n0 - 1 - i : i;
                                std::size_t jj = fe ? n1 - 1 - j : j;
                                std::size_t kk = fz ? n2 - 1 - k : k;
                                if (s)
                                    std::swap(jj, kk);
                                const std::size_t c = grid.index(ii, jj, kk);
                                if (c < best.canonical)
                                    best = NodeImage{c, fe == 1, fz == 1, s == 1};
                            }
                images[self] = best;
            }
    return images;
}

FieldMap metric_field_map(const GridSpec& grid, const QuadratureSpec& spec,
                          const MetricMapOptions& options)
{
    grid.validate();
    spec.validate();
    const std::size_t n = grid.size();
    const bool is_011 = options.kind == ModeKind::Mode011;

    std::vector<NodeImage> images;
    if (options.use_symmetry)
        images = symmetry_images(grid, is_011);
    else
    {
        images.resize(n);
        for (std::size_t p = 0; p < n; ++p)
            images[p].canonical = p;
    }
    std::vector<std::size_t> canonical;
    for (std::size_t p = 0; p < n; ++p)
        if (images[p].canonical == p)
            canonical.push_back(p);

    // g1..g4 for the 011 mode, h00 (per P M) in slot 0 for the 01M mode.
    std::vector<Eigen::Matrix<double, 5, 1>> values(n, Eigen::Matrix<double, 5, 1>::Zero());
    std::vector<double> errors(n, 0.0);
    std::vector<char> converged(n, 1);

    const SourceFunction source_01M = options.source_01M == Mode01MSource::SinSquared
                                          ? sin_squared_source()
                                          : f1_source();
    parallel_for(canonical.size(), options.threads, [&](std::size_t c) {
        const std::size_t p = canonical[c];
        const Eigen::Vector3d x = grid.point(p);
        if (is_011)
        {
            const GIntegrals g = g_integrals(x, spec);
            values[p] = g.as_vector();
            errors[p] = g.error;
            converged[p] = g.converged;
        }
        else
        {
            const PointValue v = convolve_point(source_01M, x, spec);
            values[p][0] = v.value;
            errors[p] = v.error;
            converged[p] = v.converged;
        }
    });

    for (std::size_t p = 0; p < n; ++p)
    {
        const NodeImage& img = images[p];
        if (img.canonical == p)
            continue;
        Eigen::Matrix<double, 5, 1> v = values[img.canonical];
        if (is_011)
        {
            if (img.flip_eta != img.flip_zeta)
                v[4] = -v[4];
            if (img.swap)
                std::swap(v[2], v[3]);
        }
        values[p] = v;
        errors[p] = errors[img.canonical];
        converged[p] = converged[img.canonical];
    }

    FieldMap map(grid, metric_component_names());
    map.units = is_011 ? "per-P" : "per-PM";
    map.mode_kind = to_string(options.kind);
    map.provenance.tolerance = spec.tolerance;

    Eigen::ArrayXd& h00 = map["h00"];
    Eigen::ArrayXd& h11 = map["h11"];
    Eigen::ArrayXd& h22 = map["h22"];
    Eigen::ArrayXd& h33 = map["h33"];
    Eigen::ArrayXd& h23 = map["h23"];
    Eigen::ArrayXd& dcx = map["dcx"];
    Eigen::ArrayXd& dcy = map["dcy"];
    Eigen::ArrayXd& dcz = map["dcz"];
    for (std::size_t p = 0; p < n; ++p)
    {
        const MetricPerturbation h =
            is_011 ? metric_011(GIntegrals::from_vector(values[p], errors[p], converged[p] != 0))
                   : metric_01M_from(values[p][0], errors[p], converged[p] != 0);
        const Eigen::Vector3d dc = lightspeed_field(h, options.definition);
        const auto e = static_cast<Eigen::Index>(p);
        h00[e] = h.h00;
        h11[e] = h.h11;
        h22[e] = h.h22;
        h33[e] = h.h33;
        h23[e] = h.h23;
        dcx[e] = dc.x();
        dcy[e] = dc.y();
        dcz[e] = dc.z();
        map.error[e] = h.error;
        if (!h.converged)
            ++map.unconverged_points;
    }
    map.converged = map.unconverged_points == 0;
    return map;
}

double ResidualStats::max_relative() const
{
    double m = 0.0;
    for (const ComponentResidual& c : components)
        m = std::max(m, c.max_relative);
    return m;
}

double ResidualStats::mean_relative() const
{
    double m = 0.0;
    for (const ComponentResidual& c : components)
        m = std::max(m, c.mean_relative);
    return m;
}

ResidualStats laplacian_residual(const FieldMap& field, ModeKind kind, double scale)
{
    const double pi = std::numbers::pi;
    const GridSpec& grid = field.grid;
    double spacing = 0.0;
    for (const AxisRange& a : grid.axes)
    {
        if (a.count < 3)
            throw GridTooCoarse("Laplacian residual needs at least 3 nodes per axis");
        const double d = (a.hi - a.lo) / static_cast<double>(a.count - 1);
        if (spacing == 0.0)
            spacing = d;
        else if (std::abs(d - spacing) > 1e-9 * spacing)
            throw GridTooCoarse("Laplacian residual needs equal spacing on all axes");
    }
    if (!(spacing > 0.0) || spacing > pi / 32.0 * (1.0 + 1e-12))
        throw GridTooCoarse("grid spacing must be at most pi/32");

    const StressComponents t011 = StressComponents::mode011();
    // Only t00 = t33 = 4 sin^2(eta) enter the (01M) metric.
    auto t = [&](int mu, int nu, double eta, double zeta) {
        return kind == ModeKind::Mode011 ? t011(mu, nu, eta, zeta) : stress_01M_energy(eta);
    };
    struct Target
    {
        const char* name;
        int mu;
        int nu;
    };
    std::vector<Target> targets;
    if (kind == ModeKind::Mode011)
        targets = {{"h00", 0, 0}, {"h11", 1, 1}, {"h22", 2, 2}, {"h33", 3, 3}, {"h23", 2, 3}};
    else
        targets = {{"h00", 0, 0}, {"h33", 3, 3}};

    const double slack = 1e-9 * spacing;
    auto usable = [&](const AxisRange& a, std::size_t i) {
        const double x = a.at(i);
        return i > 0 && i + 1 < a.count && x - spacing >= -slack && x + spacing <= pi + slack;
    };

    ResidualStats stats;
    stats.spacing = spacing;
    std::vector<std::array<std::size_t, 3>> nodes;
    for (std::size_t i = 0; i < grid.axes[0].count; ++i)
        for (std::size_t j = 0; j < grid.axes[1].count; ++j)
            for (std::size_t k = 0; k < grid.axes[2].count; ++k)
                if (usable(grid.axes[0], i) && usable(grid.axes[1], j) && usable(grid.axes[2], k))
                    nodes.push_back({i, j, k});
    if (nodes.empty())
        throw GridTooCoarse("no grid node has a full stencil inside the cavity");
    stats.nodes = nodes.size();

    const double inv_h2 = 1.0 / (spacing * spacing);
    for (const Target& target : targets)
    {
        const Eigen::ArrayXd& h = field[target.name];
        double max_res = 0.0;
        double sum_res = 0.0;
        double max_source = 0.0;
        for (const auto& [i, j, k] : nodes)
        {
            const auto at = [&](std::size_t a, std::size_t b, std::size_t c) {
                return h[static_cast<Eigen::Index>(grid.index(a, b, c))];
            };
            const double center = at(i, j, k);
            const double lap = (at(i - 1, j, k) + at(i + 1, j, k) + at(i, j - 1, k) + at(i, j + 1, k)
                                + at(i, j, k - 1) + at(i, j, k + 1) - 6.0 * center)
                               * inv_h2;
            const double source =
                4.0 * pi * scale * t(target.mu, target.nu, grid.axes[1].at(j), grid.axes[2].at(k));
            const double res = std::abs(lap + source);
            max_res = std::max(max_res, res);
            sum_res += res;
            max_source = std::max(max_source, std::abs(source));
        }
        ComponentResidual c;
        c.name = target.name;
        c.max_absolute = max_res;
        const double mean_res = sum_res / static_cast<double>(nodes.size());
        if (max_source > 0.0)
        {
            c.max_relative = max_res / max_source;
            c.mean_relative = mean_res / max_source;
        }
        else
        {
            c.max_relative = max_res > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
            c.mean_relative = mean_res > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        }
        stats.components.push_back(c);
    }
    return stats;
}

} // namespace lightcav
