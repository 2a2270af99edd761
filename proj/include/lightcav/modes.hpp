#ifndef LIGHTCAV_MODES_HPP
#define LIGHTCAV_MODES_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lightcav
{

// Wave-vector indices of a box-cavity mode, k_i = l_i * pi / L, plus its
// polarization. At most one index may be zero.
struct ModeIndices
{
    std::int64_t lx = 0;
    std::int64_t ly = 1;
    std::int64_t lz = 1;
    Eigen::Vector3d polarization = Eigen::Vector3d::UnitX();

    // Builds the mode with a transverse unit polarization. With a zero index
    // the only allowed polarization is along that axis.
    static ModeIndices make(std::int64_t lx, std::int64_t ly, std::int64_t lz);

    // Throws std::invalid_argument when the indices or polarization are not a
    // physical cavity mode.
    void validate() const;

    Eigen::Vector3d index_vector() const
    {
        return {static_cast<double>(lx), static_cast<double>(ly), static_cast<double>(lz)};
    }
};

// Omega = c |k| = c * pi / L * sqrt(lx^2 + ly^2 + lz^2).
double mode_frequency(const ModeIndices& mode, double cavity_length, double c = 299792458.0);

// Mode function v at the dimensionless point (xi, eta, zeta) = pi * r / L.
// Normalized so that the integral of v.v over the cavity is one.
Eigen::Vector3d mode_function(const ModeIndices& mode, const Eigen::Vector3d& point,
                              double cavity_length);

enum class ModeKind
{
    Mode011,
    Mode01M
};

std::string to_string(ModeKind kind);

// Dimensionless stress components of the fundamental (011) mode, t = T / (n hbar Omega / V).
// f3_tilde(eta, zeta) = f3(zeta, eta).
template <typename Scalar>
Scalar stress_f1(Scalar eta, Scalar zeta)
{
    using std::cos;
    return Scalar(2) - cos(Scalar(2) * eta) - cos(Scalar(2) * zeta);
}

template <typename Scalar>
Scalar stress_f2(Scalar eta, Scalar zeta)
{
    using std::cos;
    const Scalar c2e = cos(Scalar(2) * eta);
    const Scalar c2z = cos(Scalar(2) * zeta);
    return c2e + c2z - Scalar(2) * c2e * c2z;
}

template <typename Scalar>
Scalar stress_f3(Scalar eta, Scalar zeta)
{
    using std::cos;
    const Scalar c2e = cos(Scalar(2) * eta);
    const Scalar c2z = cos(Scalar(2) * zeta);
    return Scalar(1) - Scalar(2) * c2z + c2z * c2e;
}

template <typename Scalar>
Scalar stress_f3_tilde(Scalar eta, Scalar zeta)
{
    return stress_f3(zeta, eta);
}

template <typename Scalar>
Scalar stress_f4(Scalar eta, Scalar zeta)
{
    using std::sin;
    return sin(Scalar(2) * eta) * sin(Scalar(2) * zeta);
}

// Large-M limit of the (01M) mode: t00 = t33 = 4 sin^2(eta).
template <typename Scalar>
Scalar stress_01M_energy(Scalar eta)
{
    using std::sin;
    const Scalar s = sin(eta);
    return Scalar(4) * s * s;
}

// All five (011) sources in the order f1, f2, f3, f3_tilde, f4, sharing the
// trig evaluations.
template <typename Scalar>
Eigen::Matrix<Scalar, 5, 1> stress_011_sources(Scalar eta, Scalar zeta)
{
    using std::cos;
    using std::sin;
    const Scalar c2e = cos(Scalar(2) * eta);
    const Scalar c2z = cos(Scalar(2) * zeta);
    const Scalar s2e = sin(Scalar(2) * eta);
    const Scalar s2z = sin(Scalar(2) * zeta);
    Eigen::Matrix<Scalar, 5, 1> f;
    f << Scalar(2) - c2e - c2z,
         c2e + c2z - Scalar(2) * c2e * c2z,
         Scalar(1) - Scalar(2) * c2z + c2z * c2e,
         Scalar(1) - Scalar(2) * c2e + c2e * c2z,
         s2e * s2z;
    return f;
}

// Quantum-expectation stress tensor t^{mu nu}(eta, zeta) of one of the two
// supported modes, in units of n hbar Omega / V. Index 0 is time, 1..3 are x, y, z.
class StressComponents
{
public:
    static StressComponents mode011();

    // Throws for M < 2. Construction records a warning below M = 64, where the
    // dropped 1/M corrections stop being small.
    static StressComponents mode01M(std::int64_t M);

    ModeKind kind() const { return kind_; }
    std::int64_t mode_index() const { return M_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    double operator()(int mu, int nu, double eta, double zeta) const;
    Eigen::Matrix4d tensor(double eta, double zeta) const;

private:
    StressComponents(ModeKind kind, std::int64_t M) : kind_(kind), M_(M) {}

    ModeKind kind_;
    std::int64_t M_;
    std::vector<std::string> warnings_;
};

// -t00 + t11 + t22 + t33.
double stress_trace(const StressComponents& t, double eta, double zeta);

// Analytic spatial divergence d_j t^{ij} in dimensionless coordinates. Inside
// the cavity nothing depends on xi, so component 0 only has the eta and zeta
// derivatives of t^{12} and t^{13}.
Eigen::Vector3d stress_divergence(const StressComponents& t, double eta, double zeta);

} // namespace lightcav

#endif // LIGHTCAV_MODES_HPP
