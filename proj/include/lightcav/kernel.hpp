#ifndef LIGHTCAV_KERNEL_HPP
#define LIGHTCAV_KERNEL_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace lightcav
{

struct SingularKernel : std::domain_error
{
    using std::domain_error::domain_error;
};

// Potential of the unit line segment xi' in [0, pi] seen from (xi, eta, zeta):
//
//   I = ln[(xi + sqrt(xi^2 + rho^2)) / (xi - pi + sqrt((xi - pi)^2 + rho^2))],
//   rho^2 = eta^2 + zeta^2.
//
// Written as log1p of the positive quantity (p(xi) - p(xi - pi)) / p(xi - pi), with
// p(a) = a + sqrt(a^2 + rho^2) evaluated without cancellation for a < 0 and the
// difference formed as a sum of positive terms. Accurate both next to the segment
// and in the far field, where I ~ pi / rho. Returns +inf on the segment itself.
template <typename Scalar>
Scalar line_kernel_unchecked(Scalar xi, Scalar eta, Scalar zeta)
{
    using std::log1p;
    using std::sqrt;
    const Scalar pi = std::numbers::pi_v<Scalar>;
    const Scalar rho2 = eta * eta + zeta * zeta;

    // I(xi) = I(pi - xi); work on the half with xi >= pi/2 so that only the
    // second p needs the cancellation-free branch.
    const Scalar a = xi < pi / Scalar(2) ? pi - xi : xi;
    const Scalar b = a - pi;
    const Scalar root_a = sqrt(a * a + rho2);
    const Scalar root_b = sqrt(b * b + rho2);
    const Scalar p_a = a + root_a;
    const Scalar p_b = b >= Scalar(0) ? b + root_b : rho2 / (root_b - b);
    if (!(p_b > Scalar(0)))
        return std::numeric_limits<Scalar>::infinity();
    return log1p(pi * (p_a + p_b) / ((root_a + root_b) * p_b));
}

// Same as line_kernel_unchecked but throws SingularKernel on the segment
// rho = 0, 0 <= xi <= pi.
template <typename Scalar>
Scalar line_kernel(Scalar xi, Scalar eta, Scalar zeta)
{
    if (eta == Scalar(0) && zeta == Scalar(0) && xi >= Scalar(0) && xi <= std::numbers::pi_v<Scalar>)
        throw SingularKernel("line kernel is singular on the source segment");
    return line_kernel_unchecked(xi, eta, zeta);
}

} // namespace lightcav

#endif // LIGHTCAV_KERNEL_HPP
