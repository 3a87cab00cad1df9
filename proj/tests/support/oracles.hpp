// Independent reference evaluations used by the tests. Nothing here calls
// into the generator or the solvers under test.
#ifndef CASCADE_TESTS_ORACLES_HPP
#define CASCADE_TESTS_ORACLES_HPP

#include <complex>
#include <random>

#include <Eigen/Dense>

#include <cascade/params.hpp>

namespace cascade::testing {

using c64 = std::complex<double>;
using M3 = Eigen::Matrix3cd;

/// The six equations of motion written out term by term (1-based symbols
/// mapped onto zero-based matrix indices), conjugates filled in after.
inline M3 equations_of_motion(const SystemParams& p, const M3& r)
{
    const c64 i{0.0, 1.0};
    auto rho = [&](int a, int b) { return r(a - 1, b - 1); };
    const double g21 = p.gamma21, g32 = p.gamma32, L12 = p.lambda12, L13 = p.lambda13;
    const double Wp = p.omega_p, Wc = p.omega_c, Dp = p.delta_p, Dc = p.delta_c;

    M3 d = M3::Zero();
    d(0, 0) = -2.0 * (L12 + L13) * rho(1, 1) + 2.0 * g21 * rho(2, 2) +
              i * Wp * (rho(2, 1) - rho(1, 2));
    d(1, 1) = 2.0 * L12 * rho(1, 1) + 2.0 * g32 * rho(3, 3) - 2.0 * g21 * rho(2, 2) -
              i * Wp * (rho(2, 1) - rho(1, 2)) - i * Wc * (rho(2, 3) - rho(3, 2));
    d(2, 2) = 2.0 * L13 * rho(1, 1) - 2.0 * g32 * rho(3, 3) +
              i * Wc * (rho(2, 3) - rho(3, 2));
    d(0, 1) = -(g21 + L12 + L13 + i * Dp) * rho(1, 2) +
              i * Wp * (rho(2, 2) - rho(1, 1)) - i * Wc * rho(1, 3);
    d(1, 2) = -(g21 + g32 + i * Dc) * rho(2, 3) + i * Wc * (rho(3, 3) - rho(2, 2)) +
              i * Wp * rho(1, 3);
    d(0, 2) = -(g32 + (L12 + L13) + i * (Dp + Dc)) * rho(1, 3) + i * Wp * rho(2, 3) -
              i * Wc * rho(1, 2);
    d(1, 0) = std::conj(d(0, 1));
    d(2, 1) = std::conj(d(1, 2));
    d(2, 0) = std::conj(d(0, 2));
    return d;
}

/// Two-level limit (omega_c = lambda = 0): stationary upper population,
/// from the hand-solved Bloch equations.
inline double two_level_rho22(double gamma21, double omega_p, double delta_p)
{
    const double w2 = omega_p * omega_p;
    return w2 / (gamma21 * gamma21 + delta_p * delta_p + 2.0 * w2);
}

/// Two-level limit: rho21 from d rho12/dt = 0 with the closed-form
/// populations above.
inline c64 two_level_rho21(double gamma21, double omega_p, double delta_p)
{
    const double p2 = two_level_rho22(gamma21, omega_p, delta_p);
    const double w = p2 - (1.0 - p2);
    const c64 rho12 = c64(0.0, omega_p * w) / c64(gamma21, delta_p);
    return std::conj(rho12);
}

/// Weak-probe (first order in omega_p) ladder response with all
/// population in |1>, no incoherent pumping:
/// rho21 = i omega_p / (gamma21 - i dp + omega_c^2 / (gamma32 - i (dp + dc))).
inline c64 weak_probe_rho21(const SystemParams& p)
{
    const c64 i{0.0, 1.0};
    const c64 d = p.gamma21 - i * p.delta_p +
                  p.omega_c * p.omega_c / (p.gamma32 - i * (p.delta_p + p.delta_c));
    return i * p.omega_p / d;
}

/// Random Hermitian, positive, unit-trace 3x3 matrix.
inline M3 random_state(std::mt19937_64& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    M3 a;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) a(r, c) = c64(n(rng), n(rng));
    M3 rho = a * a.adjoint();
    rho /= rho.trace();
    return 0.5 * (rho + rho.adjoint());
}

inline SystemParams random_params(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> rate(0.0, 2.0);
    std::uniform_real_distribution<double> field(-3.0, 3.0);
    SystemParams p;
    p.gamma21 = 0.1 + rate(rng);
    p.gamma32 = rate(rng);
    p.lambda12 = rate(rng);
    p.lambda13 = rate(rng);
    p.omega_p = field(rng);
    p.omega_c = field(rng);
    p.delta_p = field(rng);
    p.delta_c = field(rng);
    return p;
}

/// Parameters of the unequal-decay EIT figures (probe 0.01, gamma32 0.16).
inline SystemParams unequal_decay(double omega_c, double lambda12 = 0.0)
{
    SystemParams p;
    p.gamma21 = 1.0;
    p.gamma32 = 0.16;
    p.omega_p = 0.01;
    p.omega_c = omega_c;
    p.lambda12 = lambda12;
    return p;
}

inline SystemParams equal_decay(double omega_c, double lambda12 = 0.0)
{
    SystemParams p = unequal_decay(omega_c, lambda12);
    p.gamma32 = 1.0;
    return p;
}

} // namespace cascade::testing

#endif
