#ifndef CASCADE_ODE_HPP
#define CASCADE_ODE_HPP

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Core>

#include <cascade/error.hpp>

namespace cascade {

struct OdeTolerance
{
    double rtol = 1e-9;
    double atol = 1e-12;
};

struct OdeStats
{
    long accepted = 0;
    long rejected = 0;
};

/**
 * Adaptive Dormand-Prince 5(4) integrator (FSAL) with an elementary
 * step-size controller.
 *
 * State must be an Eigen vector type; Rhs is callable as rhs(t, y) -> State.
 */
template<typename State, typename Rhs>
class DormandPrince
{
public:
    DormandPrince(Rhs rhs, OdeTolerance tol = {}) : m_rhs(std::move(rhs)), m_tol(tol)
    {
    }

    /// Advances y from t0 to t1 (t1 >= t0). h is the suggested initial step
    /// and is updated with the last accepted step size.
    void integrate(State& y, double t0, double t1, double& h,
                   const std::string& context = {})
    {
        if (t1 <= t0) return;
        static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                                c5 = 8.0 / 9;
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15,
                                a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                                a53 = 64448.0 / 6561, a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                                a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                                a65 = -5103.0 / 18656;
        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113,
                                b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                                b6 = 11.0 / 84;
        // b - b* (difference between 5th and embedded 4th order weights)
        static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                                e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                                e6 = 22.0 / 525, e7 = -1.0 / 40;

        if (!(h > 0.0)) h = initial_step(y, t0, t1);

        double t = t0;
        State k1 = m_rhs(t, y);
        while (t < t1) {
            const double remaining = t1 - t;
            bool last = false;
            double step = h;
            if (step >= remaining) {
                step = remaining;
                last = true;
            }
            if (step < 1e-14 * std::max(1.0, std::abs(t)))
                throw StiffnessError("adaptive integrator step size underflow at t=" +
                                     std::to_string(t) +
                                     (context.empty() ? "" : " for " + context));

            const State k2 = m_rhs(t + c2 * step, (y + step * a21 * k1).eval());
            const State k3 =
                m_rhs(t + c3 * step, (y + step * (a31 * k1 + a32 * k2)).eval());
            const State k4 = m_rhs(
                t + c4 * step, (y + step * (a41 * k1 + a42 * k2 + a43 * k3)).eval());
            const State k5 = m_rhs(
                t + c5 * step,
                (y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)).eval());
            const State k6 = m_rhs(
                t + step, (y + step * (a61 * k1 + a62 * k2 + a63 * k3 +
                                       a64 * k4 + a65 * k5))
                              .eval());
            const State y_new =
                y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const State k7 = m_rhs(t + step, y_new);
            const State err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 +
                                      e6 * k6 + e7 * k7);

            double err_norm = 0.0;
            for (Eigen::Index i = 0; i < y.size(); ++i) {
                const double scale =
                    m_tol.atol +
                    m_tol.rtol * std::max(std::abs(y(i)), std::abs(y_new(i)));
                err_norm = std::max(err_norm, std::abs(err(i)) / scale);
            }

            if (err_norm <= 1.0) {
                t = last ? t1 : t + step;
                y = y_new;
                k1 = k7;
                ++m_stats.accepted;
                const double factor =
                    err_norm == 0.0 ? 5.0
                                    : std::clamp(0.9 * std::pow(err_norm, -0.2),
                                                 0.2, 5.0);
                // a truncated final step says nothing about the natural size
                if (!last) h = step * factor;
            } else {
                ++m_stats.rejected;
                h = step * std::max(0.2, 0.9 * std::pow(err_norm, -0.2));
            }
        }
    }

    const OdeStats& stats() const noexcept { return m_stats; }

private:
    double initial_step(const State& y, double t0, double t1)
    {
        const State f0 = m_rhs(t0, y);
        const double d0 = y.cwiseAbs().maxCoeff();
        const double d1 = f0.cwiseAbs().maxCoeff();
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        return std::min(h0, t1 - t0);
    }

    Rhs m_rhs;
    OdeTolerance m_tol;
    OdeStats m_stats;
};

} // namespace cascade

#endif
