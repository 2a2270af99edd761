#ifndef LIGHTCAV_BOUNDS_HPP
#define LIGHTCAV_BOUNDS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lightcav/setup.hpp"

namespace lightcav
{

enum class ProbeKind
{
    OptimalSuperposition,  // (|0> + |2n>) / sqrt(2)
    Coherent
};

enum class CoherentFormula
{
    Exact,
    Asymptotic  // large tau^2 n
};

std::string to_string(ProbeKind kind);

struct ProbeState
{
    ProbeKind kind = ProbeKind::OptimalSuperposition;
    double n = 1.0;
    CoherentFormula formula = CoherentFormula::Exact;  // ignored for the optimal state
};

// Quantum Cramer-Rao bound on delta c / c for one measurement of duration tau = Omega T.
// Throws std::invalid_argument for tau <= 0 or n <= 0.
double qcrb(const ProbeState& state, double tau);

// Back-action deviation -kappa n M (signed).
double backaction(double n, double M, double kappa);

enum class SolveMethod
{
    ClosedForm,
    RootFind
};

struct TradeoffSolution
{
    double n_opt = 0.0;
    double delta_c_min = 0.0;
    double tau_used = 0.0;
    double kappa_used = 0.0;
    double M_used = 0.0;
    SolveMethod method = SolveMethod::ClosedForm;
    double quantum_bound = 0.0;        // qcrb at n_opt
    double backaction_magnitude = 0.0; // kappa n_opt M
};

// The crossing of qcrb and |backaction| could not be bracketed.
struct BracketError : std::runtime_error
{
    BracketError(const std::string& what, int sign_lo, int sign_hi)
        : std::runtime_error(what), sign_lo(sign_lo), sign_hi(sign_hi)
    {
    }
    int sign_lo;
    int sign_hi;
};

inline constexpr double kBracketLo = 1.0;
inline constexpr double kBracketHi = 1e60;
inline constexpr double kRootTolerance = 1e-9;

// Closed forms for the optimal state and the asymptotic coherent bound;
// log-space bisection of qcrb(n) = kappa n M otherwise, or when RootFind is forced.
TradeoffSolution optimal_tradeoff(double tau, double kappa, double M, ProbeKind kind,
                                  CoherentFormula formula = CoherentFormula::Exact,
                                  std::optional<SolveMethod> method = std::nullopt,
                                  double bracket_lo = kBracketLo, double bracket_hi = kBracketHi);

TradeoffSolution optimal_tradeoff(const ExperimentConfig& config, ProbeKind kind,
                                  CoherentFormula formula = CoherentFormula::Exact,
                                  std::optional<SolveMethod> method = std::nullopt);

// delta L / L of the quantum-gravity models the bounds are compared with.
struct ComparisonBounds
{
    double ng00 = 0.0;    // (l_Pl / L)^{2/3}
    double ac_eq3 = 0.0;  // (l_QG c T)^{1/2} / L
    double ac_eq5 = 0.0;  // (l_QG^2 c T)^{1/3} / L
    double l_qg = 0.0;
    double time = 0.0;
};

// l_qg defaults to the Planck length; T is storage_time(config).
ComparisonBounds comparison_bounds(const ExperimentConfig& config,
                                   std::optional<double> l_qg = std::nullopt);

// Order-of-magnitude scaling laws with the order-one prefactors dropped.
struct ScalingLaw
{
    double delta_c = 0.0;
    double n_opt = 0.0;
};
// l_Pl / (c T L)^{1/2} and n ~ (lambda / l_Pl) (L / (c T))^{1/2}.
ScalingLaw optimal_scaling_law(const ExperimentConfig& config);
// (l_Pl^2 lambda / (L (c T)^2))^{1/3} and n ~ (L lambda^2 / (l_Pl^2 c T))^{2/3}.
ScalingLaw coherent_scaling_law(const ExperimentConfig& config);

struct TableEntry
{
    double delta_c = 0.0;
    std::optional<double> n_opt;
};

struct ScalingTable
{
    TableEntry optimal_lossless;
    std::optional<TableEntry> optimal_lossy;  // empty without a finesse
    TableEntry coherent_lossless;
    std::optional<TableEntry> coherent_lossy;
    TableEntry ng00;
    TableEntry ac_eq3;
    TableEntry ac_eq5;
    ExperimentConfig config;
};

// Lossless rows use T = L / c, lossy rows the finesse storage time. The
// comparison columns use the lossless time, as in the table caption.
ScalingTable table1(const ExperimentConfig& config, std::optional<double> l_qg = std::nullopt);

struct TradeoffPoint
{
    double n = 0.0;
    double optimal = 0.0;     // qcrb, optimal state
    double coherent = 0.0;    // qcrb, coherent state (exact)
    double backaction = 0.0;  // kappa n M
};

// count log-spaced photon numbers in [n_lo, n_hi].
std::vector<TradeoffPoint> tradeoff_sweep(const DimensionlessParams& params, double n_lo,
                                          double n_hi, std::size_t count);

} // namespace lightcav

#endif // LIGHTCAV_BOUNDS_HPP
