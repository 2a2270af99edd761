#include "lightcav/modes.hpp"

#include <stdexcept>

namespace lightcav
{

ModeIndices ModeIndices::make(std::int64_t lx, std::int64_t ly, std::int64_t lz)
{
    ModeIndices mode;
    mode.lx = lx;
    mode.ly = ly;
    mode.lz = lz;

    if (lx == 0)
        mode.polarization = Eigen::Vector3d::UnitX();
    else if (ly == 0)
        mode.polarization = Eigen::Vector3d::UnitY();
    else if (lz == 0)
        mode.polarization = Eigen::Vector3d::UnitZ();
    else
    {
        const Eigen::Vector3d k = mode.index_vector();
        Eigen::Vector3d e = k.cross(Eigen::Vector3d::UnitZ());
        if (e.norm() < 1e-12 * k.norm())
            e = k.cross(Eigen::Vector3d::UnitX());
        mode.polarization = e.normalized();
    }
    mode.validate();
    return mode;
}

void ModeIndices::validate() const
{
    if (lx < 0 || ly < 0 || lz < 0)
        throw std::invalid_argument("mode indices must be non-negative");
    const int zeros = (lx == 0) + (ly == 0) + (lz == 0);
    if (zeros > 1)
        throw std::invalid_argument("at most one mode index may be zero");
    if (std::abs(polarization.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("polarization must be a unit vector");
    const Eigen::Vector3d k = index_vector();
    if (std::abs(polarization.dot(k)) > 1e-12 * k.norm())
        throw std::invalid_argument("polarization must be transverse to k");
}

double mode_frequency(const ModeIndices& mode, double cavity_length, double c)
{
    mode.validate();
    if (!(cavity_length > 0.0))
        throw std::invalid_argument("cavity length must be positive");
    return c * std::numbers::pi / cavity_length * mode.index_vector().norm();
}

Eigen::Vector3d mode_function(const ModeIndices& mode, const Eigen::Vector3d& point,
                              double cavity_length)
{
    const double volume = cavity_length * cavity_length * cavity_length;
    // A zero index leaves one factor at cos(0) = 1, whose square averages to 1
    // instead of 1/2.
    const bool has_zero = mode.lx == 0 || mode.ly == 0 || mode.lz == 0;
    const double norm = std::sqrt((has_zero ? 4.0 : 8.0) / volume);

    const Eigen::Array3d phase = mode.index_vector().array() * point.array();
    const Eigen::Array3d c = phase.cos();
    const Eigen::Array3d s = phase.sin();
    const Eigen::Vector3d& e = mode.polarization;
    return norm * Eigen::Vector3d(e.x() * c.x() * s.y() * s.z(),
                                  e.y() * s.x() * c.y() * s.z(),
                                  e.z() * s.x() * s.y() * c.z());
}

std::string to_string(ModeKind kind)
{
    return kind == ModeKind::Mode011 ? "011" : "01M";
}

StressComponents StressComponents::mode011()
{
    return StressComponents(ModeKind::Mode011, 1);
}

StressComponents StressComponents::mode01M(std::int64_t M)
{
    if (M < 2)
        throw std::invalid_argument("large-M stress forms need M >= 2");
    StressComponents t(ModeKind::Mode01M, M);
    if (M < 64)
        t.warnings_.push_back("M = " + std::to_string(M)
                              + " < 64: dropped 1/M corrections are not small");
    return t;
}

double StressComponents::operator()(int mu, int nu, double eta, double zeta) const
{
    if (mu < 0 || mu > 3 || nu < 0 || nu > 3)
        throw std::out_of_range("stress tensor index out of range");
    if (mu > nu)
        std::swap(mu, nu);

    if (kind_ == ModeKind::Mode011)
    {
        if (mu == 0 && nu == 0)
            return stress_f1(eta, zeta);
        if (mu == 1 && nu == 1)
            return stress_f2(eta, zeta);
        if (mu == 2 && nu == 2)
            return stress_f3(eta, zeta);
        if (mu == 3 && nu == 3)
            return stress_f3_tilde(eta, zeta);
        if (mu == 2 && nu == 3)
            return stress_f4(eta, zeta);
        return 0.0;
    }

    const double energy = stress_01M_energy(eta);
    if ((mu == 0 && nu == 0) || (mu == 3 && nu == 3))
        return energy;
    const double oscillating = energy * std::cos(2.0 * static_cast<double>(M_) * zeta);
    if (mu == 1 && nu == 1)
        return oscillating;
    if (mu == 2 && nu == 2)
        return -oscillating;
    return 0.0;
}

Eigen::Matrix4d StressComponents::tensor(double eta, double zeta) const
{
    Eigen::Matrix4d t;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            t(mu, nu) = (*this)(mu, nu, eta, zeta);
    return t;
}

double stress_trace(const StressComponents& t, double eta, double zeta)
{
    return -t(0, 0, eta, zeta) + t(1, 1, eta, zeta) + t(2, 2, eta, zeta) + t(3, 3, eta, zeta);
}

Eigen::Vector3d stress_divergence(const StressComponents& t, double eta, double zeta)
{
    if (t.kind() == ModeKind::Mode011)
    {
        const double s2e = std::sin(2.0 * eta);
        const double c2e = std::cos(2.0 * eta);
        const double s2z = std::sin(2.0 * zeta);
        const double c2z = std::cos(2.0 * zeta);
        const double df3_deta = -2.0 * s2e * c2z;
        const double df4_dzeta = 2.0 * s2e * c2z;
        const double df4_deta = 2.0 * c2e * s2z;
        const double df3t_dzeta = -2.0 * c2e * s2z;
        return {0.0, df3_deta + df4_dzeta, df4_deta + df3t_dzeta};
    }

    // Only t22 = -4 sin^2(eta) cos(2 M zeta) varies along its own axis; the
    // large-M forms are not exactly conserved in y.
    const double M = static_cast<double>(t.mode_index());
    return {0.0, -4.0 * std::sin(2.0 * eta) * std::cos(2.0 * M * zeta), 0.0};
}

} // namespace lightcav
