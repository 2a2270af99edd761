#ifndef LIGHTCAV_TESTS_REFERENCE_VALUES_HPP
#define LIGHTCAV_TESTS_REFERENCE_VALUES_HPP

// Values fixed before the build by two independent oracles:
//   hp  - 20-digit tanh-sinh quadrature (mpmath) with the same four-panel split
//   mc  - numpy Monte-Carlo, 1e7 uniform samples on [0, pi]^2, default_rng(42)
// Order of the convolution arrays: g1, g2, g3, g3_tilde, g4, h_tilde (source
// 4 sin^2), constant source.

namespace ref
{

struct Estimate
{
    double mean;
    double standard_error;
};

// Cavity center (pi/2, pi/2, pi/2).
inline constexpr double center_hp[7] = {54.5951309243472, -11.0846553613024, 32.8398931428248,
                                        32.8398931428248, 0.0,               54.5951309243472,
                                        23.4904220264658};
inline constexpr Estimate center_mc[7] = {{54.60005481, 0.0151},   {-11.08872252, 0.0166},
                                          {32.84530328, 0.0169},   {32.84347405, 0.0169},
                                          {0.00353274698, 0.00368}, {54.59914019, 0.0164},
                                          {23.49148849, 0.00281}};

// Exterior point (10, pi/2, pi/2).
inline constexpr double xi10_hp[7] = {7.38149891753471, -0.0269688012910228, 3.70423385941287,
                                      3.70423385941287, 0.0,                 7.38149891753471,
                                      3.6774158553136};
inline constexpr Estimate xi10_mc[7] = {{7.381883629, 0.00118},      {-0.02737409473, 0.00165},
                                        {3.704829762, 0.00175},      {3.704427962, 0.00175},
                                        {0.0006760209209, 0.000583}, {7.381682729, 0.00166},
                                        {3.677419675, 8.76e-06}};

// Generic interior point (1.5, 0.7, 2.0).
inline constexpr double interior_hp[7] = {46.1731902985893, -3.20872530235735, 26.6678929379022,
                                          22.7140226630444, -1.44142850694924, 44.1962551611604,
                                          21.4878925632315};

// Generic exterior point (-1.0, 0.3, 2.5).
inline constexpr double exterior_hp[7] = {20.9120430643054, -0.340792972830605, 10.7331158439208,
                                          10.5197201932152, -0.167450287779385, 20.8053452389526,
                                          10.2910469714365};

// Far field on the axis through the center.
inline constexpr double xi20_g1 = 3.36735862276835;
inline constexpr double xi20_g2 = -0.00249869301389282;
inline constexpr double xi20_g3 = 1.68492865789112;
inline constexpr double xi20_constant = 1.68243275984304;
inline constexpr double xi100_constant = 0.315010942423515;

// h_tilde at the wall-side point (pi/2, 0, pi/2).
inline constexpr double wall_h_tilde = 32.8693242026728;

// Averages of epsilon per unit P M, from the closed-form xi integral of the kernel.
inline constexpr double epsilon_line_mean = 43.2829955417623;
inline constexpr double epsilon_cross_section_mean = 37.1553623185887;

} // namespace ref

#endif // LIGHTCAV_TESTS_REFERENCE_VALUES_HPP
