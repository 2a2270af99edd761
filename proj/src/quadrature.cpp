#include "lightcav/quadrature.hpp"

#include <stdexcept>

namespace lightcav
{

void QuadratureSpec::validate() const
{
    if (!(tolerance > 0.0))
        throw std::invalid_argument("quadrature tolerance must be positive");
    if (max_depth < 1)
        throw std::invalid_argument("quadrature max_depth must be at least 1");
    if (points_per_panel != 15 && points_per_panel != 21)
        throw std::invalid_argument("points_per_panel must be 15 or 21");
    if (max_panels < 8)
        throw std::invalid_argument("max_panels must be at least 8");
}

namespace detail
{
namespace
{

// QUADPACK qk15 / qk21 abscissae and weights (positive half, center last).
constexpr double kXgk15[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk15[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg7[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kXgk21[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981732291470446809014499,
    0.000000000000000000000000000000000};
constexpr double kWgk21[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208292626425, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double kWg10[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

// Expands a half table into the full symmetric rule. Gauss nodes are the odd
// positions of the half table.
KronrodRule expand(const double* xgk, const double* wgk, const double* wg, std::size_t half)
{
    KronrodRule rule;
    const std::size_t m = 2 * half - 1;
    rule.nodes.resize(m);
    rule.kronrod_weights.resize(m);
    rule.gauss_weights.assign(m, 0.0);
    for (std::size_t k = 0; k < half; ++k)
    {
        const double gw = (k % 2 == 1) ? wg[k / 2] : 0.0;
        rule.nodes[k] = -xgk[k];
        rule.kronrod_weights[k] = wgk[k];
        rule.gauss_weights[k] = gw;
        rule.nodes[m - 1 - k] = xgk[k];
        rule.kronrod_weights[m - 1 - k] = wgk[k];
        rule.gauss_weights[m - 1 - k] = gw;
    }
    return rule;
}

} // namespace

const KronrodRule& kronrod_rule(int points)
{
    static const KronrodRule rule15 = expand(kXgk15, kWgk15, kWg7, 8);
    static const KronrodRule rule21 = expand(kXgk21, kWgk21, kWg10, 11);
    if (points == 15)
        return rule15;
    if (points == 21)
        return rule21;
    throw std::invalid_argument("unsupported Gauss-Kronrod order");
}

std::vector<PanelMap> panel_maps(const Eigen::Vector3d& point, const QuadratureSpec& spec)
{
    const double pi = std::numbers::pi;
    std::vector<PanelMap> maps;
    if (!spec.split_singularity)
    {
        maps.push_back(PanelMap{0.0, 0.0, 1.0, 1.0, PanelMap::Plain});
        return maps;
    }

    // The kernel peaks where (eta', zeta') is closest to (eta, zeta); put that
    // point at the corner of every panel.
    const double ce = std::clamp(point.y(), 0.0, pi);
    const double cz = std::clamp(point.z(), 0.0, pi);
    const double widths[2] = {-ce, pi - ce};
    const double heights[2] = {-cz, pi - cz};
    for (double w : widths)
    {
        for (double h : heights)
        {
            if (w == 0.0 || h == 0.0)
                continue;
            maps.push_back(PanelMap{ce, cz, w, h, PanelMap::LowerTriangle});
            maps.push_back(PanelMap{ce, cz, w, h, PanelMap::UpperTriangle});
        }
    }
    return maps;
}

} // namespace detail

PointValue convolve_point(const SourceFunction& source, const Eigen::Vector3d& point,
                          const QuadratureSpec& spec)
{
    if (!point.allFinite())
        throw std::invalid_argument("convolution point must be finite");
    auto wrapped = [&](double eta, double zeta) {
        return Eigen::Matrix<double, 1, 1>(source.eval(eta, zeta));
    };
    const ConvolutionResult<1> r = convolve_sources<1>(wrapped, point, spec);
    return {r.value[0], r.error, r.converged};
}

FieldMap convolve_grid(const SourceFunction& source, const GridSpec& grid,
                       const QuadratureSpec& spec, unsigned threads)
{
    grid.validate();
    spec.validate();
    FieldMap map(grid, {"value"});
    map.provenance.tolerance = spec.tolerance;
    std::vector<char> converged(grid.size(), 1);
    Eigen::ArrayXd& values = map["value"];

    parallel_for(grid.size(), threads, [&](std::size_t idx) {
        const PointValue v = convolve_point(source, grid.point(idx), spec);
        values[static_cast<Eigen::Index>(idx)] = v.value;
        map.error[static_cast<Eigen::Index>(idx)] = v.error;
        converged[idx] = v.converged ? 1 : 0;
    });

    for (char ok : converged)
        map.unconverged_points += ok ? 0 : 1;
    map.converged = map.unconverged_points == 0;
    return map;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
    // splitmix64 finalizer over the combined key
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

ScalarOracle mc_oracle(const SourceFunction& source, const Eigen::Vector3d& point,
                       std::size_t samples, std::uint64_t seed)
{
    auto wrapped = [&](double eta, double zeta) {
        return Eigen::Matrix<double, 1, 1>(source.eval(eta, zeta));
    };
    const OracleEstimate<1> r = mc_oracle_sources<1>(wrapped, point, samples, seed);
    return {r.mean[0], r.standard_error[0]};
}

} // namespace lightcav
