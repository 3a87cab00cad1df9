#ifndef CASCADE_DYNAMICS_HPP
#define CASCADE_DYNAMICS_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <cascade/liouvillian.hpp>
#include <cascade/matrix_exponential.hpp>
#include <cascade/ode.hpp>

namespace cascade {

enum class PropagationMethod { MatrixExponential, AdaptiveOde };

inline std::string_view to_string(PropagationMethod m)
{
    return m == PropagationMethod::MatrixExponential ? "matrix-exponential"
                                                     : "adaptive-ode";
}

struct PropagationResult
{
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    PropagationMethod method = PropagationMethod::MatrixExponential;
};

/// Tolerances applied to every propagated state.
inline constexpr double max_hermiticity_drift = 1e-8;
inline constexpr double propagated_trace_tol = 1e-8;
inline constexpr double propagated_positivity_tol = 1e-7;

namespace detail {

inline void check_time_grid(const std::vector<double>& times)
{
    if (times.empty())
        throw std::invalid_argument("propagate: empty time grid");
    if (times.front() != 0.0)
        throw std::invalid_argument("propagate: time grid must start at 0");
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (!(times[k] > times[k - 1]) || !std::isfinite(times[k]))
            throw std::invalid_argument(
                "propagate: times must be finite and strictly increasing");
    }
}

// Symmetrizes a propagated state after checking that the drift away from
// Hermiticity stays within max_hermiticity_drift.
inline DensityMatrix physical_state(const Vector9c& v, double t,
                                    const Liouvillian& L)
{
    Matrix3c rho = devectorize(v);
    const double drift = hermiticity_defect(rho);
    if (!(drift <= max_hermiticity_drift))
        throw StateError("propagated state lost Hermiticity (" +
                         std::to_string(drift) + ") at t=" + std::to_string(t) +
                         " for " + describe(L.params()));
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix(rho, StateTolerance{1e-15, propagated_trace_tol,
                                             propagated_positivity_tol});
}

} // namespace detail

/**
 * rho(t) = exp(L t) rho(0) on the requested grid (which must start at 0).
 *
 * The matrix-exponential route steps the grid with exp(L dt), reusing the
 * propagator while the spacing stays equal; the adaptive route integrates
 * with Dormand-Prince 5(4) at rtol 1e-9, atol 1e-12.
 */
inline PropagationResult propagate(const Liouvillian& L, const DensityMatrix& rho0,
                                   const std::vector<double>& times,
                                   PropagationMethod method =
                                       PropagationMethod::MatrixExponential)
{
    detail::check_time_grid(times);

    PropagationResult out;
    out.method = method;
    out.times = times;
    out.states.reserve(times.size());
    out.states.push_back(rho0);

    Vector9c v = rho0.vec();
    if (method == PropagationMethod::MatrixExponential) {
        Matrix9c step_prop;
        double cached_dt = -1.0;
        for (std::size_t k = 1; k < times.size(); ++k) {
            const double dt = times[k] - times[k - 1];
            if (std::abs(dt - cached_dt) > 1e-15 * std::max(1.0, dt)) {
                step_prop = matrix_exponential(L, dt);
                cached_dt = dt;
            }
            v = step_prop * v;
            out.states.push_back(detail::physical_state(v, times[k], L));
            v = out.states.back().vec();
        }
    } else {
        const Matrix9c& m = L.matrix();
        auto rhs = [&m](double, const Vector9c& y) -> Vector9c { return m * y; };
        DormandPrince<Vector9c, decltype(rhs)> solver(rhs);
        double h = 0.0;
        const std::string context = describe(L.params());
        for (std::size_t k = 1; k < times.size(); ++k) {
            solver.integrate(v, times[k - 1], times[k], h, context);
            out.states.push_back(detail::physical_state(v, times[k], L));
            v = out.states.back().vec();
        }
    }
    return out;
}

/// points equally spaced values from t_min to t_max inclusive.
inline std::vector<double> uniform_grid(double t_min, double t_max, std::size_t points)
{
    if (points < 2 || !(t_max > t_min))
        throw std::invalid_argument("uniform_grid: need points >= 2 and max > min");
    std::vector<double> g(points);
    const double step = (t_max - t_min) / static_cast<double>(points - 1);
    for (std::size_t k = 0; k < points; ++k)
        g[k] = t_min + step * static_cast<double>(k);
    g.back() = t_max;
    return g;
}

} // namespace cascade

#endif
