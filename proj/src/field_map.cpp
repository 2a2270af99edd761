#include "lightcav/field_map.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace lightcav
{

GridSpec GridSpec::standard()
{
    return cube(-std::numbers::pi, 2.0 * std::numbers::pi, 48);
}

GridSpec GridSpec::cube(double lo, double hi, std::size_t count)
{
    GridSpec grid;
    grid.axes = {AxisRange{lo, hi, count}, AxisRange{lo, hi, count}, AxisRange{lo, hi, count}};
    return grid;
}

Eigen::Vector3d GridSpec::point(std::size_t flat) const
{
    const std::size_t nz = axes[2].count;
    const std::size_t ny = axes[1].count;
    const std::size_t k = flat % nz;
    const std::size_t j = (flat / nz) % ny;
    const std::size_t i = flat / (nz * ny);
    return {axes[0].at(i), axes[1].at(j), axes[2].at(k)};
}

void GridSpec::validate() const
{
    for (const AxisRange& axis : axes)
    {
        if (!std::isfinite(axis.lo) || !std::isfinite(axis.hi))
            throw std::invalid_argument("grid ranges must be finite");
        if (axis.count == 1 && axis.lo != axis.hi)
            throw std::invalid_argument("a single-node axis needs lo == hi");
    }
}

FieldMap::FieldMap(GridSpec grid_spec, std::vector<std::string> names)
    : grid(grid_spec), component_names(std::move(names))
{
    const auto n = static_cast<Eigen::Index>(grid.size());
    for (const std::string& name : component_names)
        components[name] = Eigen::ArrayXd::Zero(n);
    error = Eigen::ArrayXd::Zero(n);
}

const Eigen::ArrayXd& FieldMap::operator[](const std::string& name) const
{
    auto it = components.find(name);
    if (it == components.end())
        throw std::out_of_range("field map has no component '" + name + "'");
    return it->second;
}

Eigen::ArrayXd& FieldMap::operator[](const std::string& name)
{
    auto it = components.find(name);
    if (it == components.end())
        throw std::out_of_range("field map has no component '" + name + "'");
    return it->second;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));

    if (threads <= 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        try
        {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                body(i);
        }
        catch (...)
        {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
            next.store(count);
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (std::thread& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace lightcav
