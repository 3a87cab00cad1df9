#ifndef CASCADE_STEADY_STATE_HPP
#define CASCADE_STEADY_STATE_HPP

#include <string>

#include <cascade/liouvillian.hpp>

namespace cascade {

struct SteadyStateSolution
{
    DensityMatrix rho_ss;
    /// max-norm of L * vec(rho_ss)
    double residual_norm = 0.0;
};

inline constexpr double max_condition_number = 1e12;
inline constexpr double max_steady_residual = 1e-10;

/**
 * Solves L vec(rho) = 0 with Tr rho = 1 by replacing the rho11 row of the
 * generator with the trace row. Rank deficiency of the constrained system
 * (condition number above 1e12) means the stationary state is not unique.
 */
inline SteadyStateSolution solve_steady_state(const Liouvillian& L)
{
    Matrix9c a = L.matrix();
    const int r11 = idx(0, 0);
    a.row(r11).setZero();
    a(r11, idx(0, 0)) = 1.0;
    a(r11, idx(1, 1)) = 1.0;
    a(r11, idx(2, 2)) = 1.0;

    Vector9c b = Vector9c::Zero();
    b(r11) = 1.0;

    Eigen::JacobiSVD<Matrix9c> svd(a);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    if (!(smin * max_condition_number > smax)) {
        int deficient = 0;
        for (int k = 0; k < sv.size(); ++k)
            if (!(sv(k) * max_condition_number > smax)) ++deficient;
        throw DegeneracyError("steady state is not unique: rank deficiency " +
                                  std::to_string(deficient) + " for " +
                                  describe(L.params()),
                              deficient);
    }

    Vector9c x = a.partialPivLu().solve(b);
    Matrix3c rho = devectorize(x);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace();

    const double residual = (L.matrix() * vectorize(rho)).cwiseAbs().maxCoeff();
    if (!(residual <= max_steady_residual))
        throw Error("steady-state residual " + std::to_string(residual) +
                    " exceeds tolerance for " + describe(L.params()));
    return SteadyStateSolution{DensityMatrix(rho), residual};
}

/// rho22 - rho11 of the stationary state.
inline double population_difference(const SteadyStateSolution& sol)
{
    return sol.rho_ss.population(1) - sol.rho_ss.population(0);
}

} // namespace cascade

#endif
