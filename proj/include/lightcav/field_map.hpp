#ifndef LIGHTCAV_FIELD_MAP_HPP
#define LIGHTCAV_FIELD_MAP_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lightcav
{

// Evenly spaced samples lo..hi. count == 1 requires lo == hi (a slice plane);
// count == 0 gives an empty grid.
struct AxisRange
{
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;

    double at(std::size_t i) const
    {
        return count < 2 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
};

// Axes are xi, eta, zeta in units of L / pi; the cavity occupies [0, pi]^3.
struct GridSpec
{
    std::array<AxisRange, 3> axes;

    // [-pi, 2pi]^3 at 48^3 nodes.
    static GridSpec standard();
    static GridSpec cube(double lo, double hi, std::size_t count);

    std::size_t size() const { return axes[0].count * axes[1].count * axes[2].count; }

    // Flat index with xi slowest and zeta fastest.
    std::size_t index(std::size_t i, std::size_t j, std::size_t k) const
    {
        return (i * axes[1].count + j) * axes[2].count + k;
    }

    Eigen::Vector3d point(std::size_t flat) const;

    // Throws std::invalid_argument for non-finite ranges or a single-node axis
    // with lo != hi.
    void validate() const;
};

// Provenance carried by every emitted map.
struct Provenance
{
    std::string tool = "lightcav";
    std::string version;
    std::string config_hash;
    std::string command;
    std::uint64_t seed = 42;
    double tolerance = 0.0;
};

// Named component arrays over a grid, in units of the perturbation scale P
// ("per-P") unless the units tag says otherwise.
struct FieldMap
{
    GridSpec grid;
    std::vector<std::string> component_names;
    std::map<std::string, Eigen::ArrayXd> components;
    Eigen::ArrayXd error;  // absolute error estimate per node
    std::string units = "per-P";
    std::string mode_kind;
    bool converged = true;
    std::size_t unconverged_points = 0;
    Provenance provenance;

    // Allocates zeroed components for the given names.
    FieldMap(GridSpec grid_spec, std::vector<std::string> names);
    FieldMap() = default;

    const Eigen::ArrayXd& operator[](const std::string& name) const;
    Eigen::ArrayXd& operator[](const std::string& name);
};

// Runs body(i) for i in [0, count) on `threads` workers (0 = hardware
// concurrency). Each index is handled exactly once, so writing results into
// per-index slots gives output independent of the worker count.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

} // namespace lightcav

#endif // LIGHTCAV_FIELD_MAP_HPP
