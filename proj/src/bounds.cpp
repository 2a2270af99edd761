#include "lightcav/bounds.hpp"

#include <cmath>

namespace lightcav
{

std::string to_string(ProbeKind kind)
{
    return kind == ProbeKind::OptimalSuperposition ? "optimal" : "coherent";
}

double qcrb(const ProbeState& state, double tau)
{
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw std::invalid_argument("tau must be positive and finite");
    if (!(state.n > 0.0))
        throw std::invalid_argument("photon number must be positive");
    const double n = state.n;
    if (state.kind == ProbeKind::OptimalSuperposition)
        return 1.0 / (2.0 * tau * n);
    if (state.formula == CoherentFormula::Asymptotic)
        return 1.0 / (2.0 * tau * std::sqrt(n));
    const double s = std::sin(tau);
    const double fisher = (0.5 + n) * s * s + n * tau * (tau + std::sin(2.0 * tau));
    return 0.5 / std::sqrt(std::abs(fisher));
}

double backaction(double n, double M, double kappa)
{
    return -kappa * n * M;
}

namespace
{

TradeoffSolution closed_form(double tau, double kappa, double M, ProbeKind kind)
{
    TradeoffSolution s;
    s.tau_used = tau;
    s.kappa_used = kappa;
    s.M_used = M;
    s.method = SolveMethod::ClosedForm;
    const double a = 2.0 * tau * kappa * M;
    if (kind == ProbeKind::OptimalSuperposition)
    {
        s.n_opt = 1.0 / std::sqrt(a);
        s.delta_c_min = 1.0 / (2.0 * tau * s.n_opt);
    }
    else
    {
        s.n_opt = std::pow(a, -2.0 / 3.0);
        s.delta_c_min = 1.0 / (2.0 * tau * std::sqrt(s.n_opt));
    }
    s.quantum_bound = s.delta_c_min;
    s.backaction_magnitude = kappa * s.n_opt * M;
    return s;
}

int sign_of(double x)
{
    return (x > 0.0) - (x < 0.0);
}

TradeoffSolution root_find(double tau, double kappa, double M, ProbeKind kind,
                           CoherentFormula formula, double lo, double hi)
{
    auto gap = [&](double log_n) {
        const double n = std::exp(log_n);
        return std::log(qcrb({kind, n, formula}, tau)) - std::log(kappa * n * M);
    };
    double a = std::log(lo);
    double b = std::log(hi);
    const double fa = gap(a);
    const double fb = gap(b);
    if (sign_of(fa) == sign_of(fb))
        throw BracketError("crossing not bracketed on [" + std::to_string(lo) + ", "
                               + std::to_string(hi) + "]: signs " + std::to_string(sign_of(fa))
                               + " and " + std::to_string(sign_of(fb)),
                           sign_of(fa), sign_of(fb));
    // Tighter than kRootTolerance so both curves agree to it at the returned n.
    const int sa = sign_of(fa);
    while (b - a > 1e-3 * kRootTolerance)
    {
        const double m = 0.5 * (a + b);
        const double fm = gap(m);
        if (fm == 0.0)
        {
            a = b = m;
            break;
        }
        (sign_of(fm) == sa ? a : b) = m;
    }
    TradeoffSolution s;
    s.tau_used = tau;
    s.kappa_used = kappa;
    s.M_used = M;
    s.method = SolveMethod::RootFind;
    s.n_opt = std::exp(0.5 * (a + b));
    s.quantum_bound = qcrb({kind, s.n_opt, formula}, tau);
    s.backaction_magnitude = kappa * s.n_opt * M;
    s.delta_c_min = s.quantum_bound;
    return s;
}

} // namespace

TradeoffSolution optimal_tradeoff(double tau, double kappa, double M, ProbeKind kind,
                                  CoherentFormula formula, std::optional<SolveMethod> method,
                                  double bracket_lo, double bracket_hi)
{
    if (!(tau > 0.0) || !(kappa > 0.0) || !(M >= 1.0))
        throw std::invalid_argument("trade-off needs tau > 0, kappa > 0 and M >= 1");
    const bool exact_coherent = kind == ProbeKind::Coherent && formula == CoherentFormula::Exact;
    const SolveMethod chosen = method.value_or(exact_coherent ? SolveMethod::RootFind : SolveMethod::ClosedForm);
    if (chosen == SolveMethod::ClosedForm && exact_coherent)
        throw std::invalid_argument("the exact coherent bound has no closed-form trade-off");
    if (chosen == SolveMethod::ClosedForm)
        return closed_form(tau, kappa, M, kind);
    if (!(bracket_lo > 0.0) || !(bracket_hi > bracket_lo))
        throw std::invalid_argument("bad root-find bracket");
    return root_find(tau, kappa, M, kind, formula, bracket_lo, bracket_hi);
}

TradeoffSolution optimal_tradeoff(const ExperimentConfig& config, ProbeKind kind,
                                  CoherentFormula formula, std::optional<SolveMethod> method)
{
    const DimensionlessParams p = derive_params(config);
    return optimal_tradeoff(p.tau, p.kappa, static_cast<double>(p.mode_index), kind, formula, method);
}

ComparisonBounds comparison_bounds(const ExperimentConfig& config, std::optional<double> l_qg)
{
    validate(config);
    const double l_pl = config.constants.planck_length();
    const double L = config.cavity_length;
    const double cT = config.constants.c * storage_time(config);
    ComparisonBounds b;
    b.l_qg = l_qg.value_or(l_pl);
    if (!(b.l_qg > 0.0))
        throw std::invalid_argument("l_qg must be positive");
    b.time = storage_time(config);
    b.ng00 = std::cbrt((l_pl / L) * (l_pl / L));
    b.ac_eq3 = std::sqrt(b.l_qg * cT) / L;
    b.ac_eq5 = std::cbrt(b.l_qg * b.l_qg * cT) / L;
    return b;
}

ScalingLaw optimal_scaling_law(const ExperimentConfig& config)
{
    const double l_pl = config.constants.planck_length();
    const double L = config.cavity_length;
    const double cT = config.constants.c * storage_time(config);
    return {l_pl / std::sqrt(cT * L), config.wavelength / l_pl * std::sqrt(L / cT)};
}

ScalingLaw coherent_scaling_law(const ExperimentConfig& config)
{
    const double l_pl = config.constants.planck_length();
    const double L = config.cavity_length;
    const double lambda = config.wavelength;
    const double cT = config.constants.c * storage_time(config);
    return {std::cbrt(l_pl * l_pl * lambda / (L * cT * cT)),
            std::pow(L * lambda * lambda / (l_pl * l_pl * cT), 2.0 / 3.0)};
}

ScalingTable table1(const ExperimentConfig& config, std::optional<double> l_qg)
{
    validate(config);
    ScalingTable table;
    table.config = config;
    auto entry = [](const TradeoffSolution& s) { return TableEntry{s.delta_c_min, s.n_opt}; };

    const ExperimentConfig lossless = lossless_variant(config);
    table.optimal_lossless = entry(optimal_tradeoff(lossless, ProbeKind::OptimalSuperposition));
    table.coherent_lossless = entry(optimal_tradeoff(lossless, ProbeKind::Coherent));
    if (config.finesse)
    {
        table.optimal_lossy = entry(optimal_tradeoff(config, ProbeKind::OptimalSuperposition));
        table.coherent_lossy = entry(optimal_tradeoff(config, ProbeKind::Coherent));
    }
    const ComparisonBounds b = comparison_bounds(lossless, l_qg);
    table.ng00 = {b.ng00, std::nullopt};
    table.ac_eq3 = {b.ac_eq3, std::nullopt};
    table.ac_eq5 = {b.ac_eq5, std::nullopt};
    return table;
}

std::vector<TradeoffPoint> tradeoff_sweep(const DimensionlessParams& params, double n_lo,
                                          double n_hi, std::size_t count)
{
    if (!(n_lo > 0.0) || !(n_hi >= n_lo) || count == 0)
        throw std::invalid_argument("sweep needs 0 < n_lo <= n_hi and count > 0");
    std::vector<TradeoffPoint> out;
    out.reserve(count);
    const double a = std::log(n_lo);
    const double b = std::log(n_hi);
    const double M = static_cast<double>(params.mode_index);
    for (std::size_t i = 0; i < count; ++i)
    {
        const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        const double n = i + 1 == count ? n_hi : std::exp(a + t * (b - a));
        out.push_back({n, qcrb({ProbeKind::OptimalSuperposition, n}, params.tau),
                       qcrb({ProbeKind::Coherent, n, CoherentFormula::Exact}, params.tau),
                       params.kappa * n * M});
    }
    return out;
}

} // namespace lightcav
