#ifndef CASCADE_SPECTRA_HPP
#define CASCADE_SPECTRA_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <limits>
#include <vector>

#include <cascade/parallel.hpp>
#include <cascade/steady_state.hpp>

namespace cascade {

/// Steady-state probe absorption Im rho21 against probe detuning.
struct SpectrumCurve
{
    std::vector<double> delta_p_grid;
    std::vector<double> im_rho21;
    /// delta_p is overridden by the grid
    SystemParams params;
};

struct DipMetrics
{
    double line_center_value = 0.0;
    double peak_value = 0.0;
    double dip_depth_fraction = 0.0;
};

/// Default probe detuning grid: [-4, 4] in 801 points.
inline std::vector<double> default_detuning_grid()
{
    std::vector<double> g(801);
    for (int k = 0; k < 801; ++k) g[k] = -4.0 + 0.01 * k;
    return g;
}

inline SpectrumCurve sweep_probe_detuning(const SystemParams& params,
                                          const std::vector<double>& grid,
                                          unsigned threads = 1)
{
    validate(params);
    if (grid.empty())
        throw std::invalid_argument("sweep_probe_detuning: empty grid");
    for (std::size_t k = 1; k < grid.size(); ++k)
        if (!(grid[k] > grid[k - 1]))
            throw std::invalid_argument(
                "sweep_probe_detuning: grid must be strictly increasing");

    SpectrumCurve curve;
    curve.delta_p_grid = grid;
    curve.params = params;
    curve.im_rho21.assign(grid.size(), 0.0);

    parallel_for(grid.size(), threads, [&](std::size_t k) {
        SystemParams p = params;
        p.delta_p = grid[k];
        try {
            const SteadyStateSolution sol = solve_steady_state(build_liouvillian(p));
            curve.im_rho21[k] = sol.rho_ss(1, 0).imag();
        } catch (const DegeneracyError& e) {
            throw DegeneracyError(std::string(e.what()) + " at delta_p=" +
                                      std::to_string(grid[k]),
                                  e.rank_deficiency());
        } catch (const Error& e) {
            throw Error(std::string(e.what()) + " at delta_p=" +
                        std::to_string(grid[k]));
        }
    });
    return curve;
}

/**
 * EIT dip of an absorption curve. The grid must span [-3, 3] and contain a
 * point within half a grid step of zero detuning.
 */
inline DipMetrics dip_metrics(const SpectrumCurve& curve)
{
    const auto& g = curve.delta_p_grid;
    const auto& v = curve.im_rho21;
    if (g.size() != v.size() || g.size() < 2)
        throw std::invalid_argument("dip_metrics: malformed curve");
    if (g.front() > -3.0 || g.back() < 3.0)
        throw CoverageError("dip_metrics: grid must span [-3, 3]");

    std::size_t center = 0;
    for (std::size_t k = 1; k < g.size(); ++k)
        if (std::abs(g[k]) < std::abs(g[center])) center = k;
    double step = std::numeric_limits<double>::infinity();
    if (center > 0) step = std::min(step, g[center] - g[center - 1]);
    if (center + 1 < g.size()) step = std::min(step, g[center + 1] - g[center]);
    const double half_step = 0.5 * step;
    if (std::abs(g[center]) > half_step)
        throw CoverageError("dip_metrics: no grid point near zero detuning");

    DipMetrics m;
    m.line_center_value = v[center];
    m.peak_value = *std::max_element(v.begin(), v.end());
    m.dip_depth_fraction =
        m.peak_value > 0.0 ? 1.0 - m.line_center_value / m.peak_value : 0.0;
    return m;
}

/// Trapezoidal integral of Im rho21 over the grid.
inline double integrated_absorption(const SpectrumCurve& curve)
{
    double s = 0.0;
    const auto& g = curve.delta_p_grid;
    for (std::size_t k = 1; k < g.size(); ++k)
        s += 0.5 * (curve.im_rho21[k] + curve.im_rho21[k - 1]) * (g[k] - g[k - 1]);
    return s;
}

/// Grid indices of local maxima (strictly above the left neighbour, at
/// least the right one).
inline std::vector<std::size_t> local_maxima(const SpectrumCurve& curve)
{
    std::vector<std::size_t> out;
    const auto& v = curve.im_rho21;
    for (std::size_t k = 1; k + 1 < v.size(); ++k)
        if (v[k] > v[k - 1] && v[k] >= v[k + 1]) out.push_back(k);
    return out;
}

// Sodium 3S1/2 -> 3P1/2 -> 4D3/2: 2 gamma21 = 2 pi x 10 MHz.
inline constexpr double sodium_gamma21_mhz = 5.0;

enum class QuantityKind { Rate, Frequency, Time };

inline QuantityKind parse_quantity_kind(std::string_view s)
{
    if (s == "rate") return QuantityKind::Rate;
    if (s == "frequency") return QuantityKind::Frequency;
    if (s == "time") return QuantityKind::Time;
    throw std::invalid_argument("unknown quantity kind '" + std::string(s) + "'");
}

struct PhysicalValue
{
    double value = 0.0;
    std::string_view unit;
};

/**
 * Converts a dimensionless value (units of gamma21) for the sodium ladder.
 * Rates and frequencies come back in MHz (angular value over 2 pi); times
 * given in units of 1/gamma21 come back in ns.
 */
inline PhysicalValue to_physical_units(double value, QuantityKind kind,
                                       double gamma21_mhz = sodium_gamma21_mhz)
{
    switch (kind) {
    case QuantityKind::Rate:
    case QuantityKind::Frequency:
        return {value * gamma21_mhz, "MHz"};
    case QuantityKind::Time:
        return {value / (2.0 * std::numbers::pi * gamma21_mhz * 1e6) * 1e9, "ns"};
    }
    throw std::invalid_argument("unknown quantity kind");
}

inline PhysicalValue to_physical_units(double value, std::string_view kind)
{
    return to_physical_units(value, parse_quantity_kind(kind));
}

} // namespace cascade

#endif
