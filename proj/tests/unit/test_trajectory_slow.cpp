// Statistical agreement between the quantum-jump oracle and the
// master-equation path. Slow; labelled "slow" in ctest.

#include <cmath>

#include <gtest/gtest.h>

#include <cascade/correlations.hpp>
#include <cascade/dynamics.hpp>
#include <cascade/trajectory.hpp>

#include "oracles.hpp"

using namespace cascade;

namespace {

::testing::AssertionResult agrees(double master, const TrajectoryEstimate& e)
{
    const double d = std::abs(master - e.mean);
    if (d <= 3.0 * e.std_error + 1e-14) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure()
           << e.quantity << ": master " << master << " oracle " << e.mean << " +- "
           << e.std_error << " (" << d / e.std_error << " sigma)";
}

} // namespace

TEST(TrajectoryOracleSlow, StationaryPopulationsMatchSolver)
{
    const SystemParams p = cascade::testing::unequal_decay(0.5);
    const auto ss = solve_steady_state(build_liouvillian(p));
    const auto est = stationary_populations(p, 4000, 7);
    for (int level = 0; level < 3; ++level)
        EXPECT_TRUE(agrees(ss.rho_ss.population(level), est.populations[level]));
}

TEST(TrajectoryOracleSlow, JumpRateBookkeeping)
{
    SystemParams p = cascade::testing::unequal_decay(1.0, 0.3);
    p.omega_p = 0.5;
    p.lambda13 = 0.1;
    const auto est = stationary_populations(p, 2000, 3);
    for (std::size_t c = 0; c < est.channels.size(); ++c) {
        const auto& ch = est.channels[c];
        const double observed = static_cast<double>(est.jump_counts[c]);
        const double expected =
            ch.rate * est.populations[ch.from].mean * est.observation_time;
        // Poisson counting noise plus the uncertainty of the population
        const double sigma = std::sqrt(expected) +
                             ch.rate * est.populations[ch.from].std_error *
                                 est.observation_time;
        EXPECT_LE(std::abs(observed - expected), 3.0 * sigma)
            << "channel " << c << " observed " << observed << " expected " << expected;
    }
}

TEST(TrajectoryOracleSlow, UnravelingReproducesMasterEquation)
{
    SystemParams p = cascade::testing::unequal_decay(1.0, 0.5);
    p.omega_p = 0.4;
    p.lambda13 = 0.1;
    const std::vector<double> times{0.5, 1.0, 2.0, 5.0, 10.0};
    std::vector<double> grid{0.0};
    grid.insert(grid.end(), times.begin(), times.end());
    const auto me = propagate(build_liouvillian(p), DensityMatrix::level(0), grid);
    const auto est = run_trajectories(p, DensityMatrix::level(0), times, 20000, 11);
    for (int level = 0; level < 3; ++level)
        for (std::size_t k = 0; k < times.size(); ++k)
            EXPECT_TRUE(agrees(me.states[k + 1].population(level), est.populations[level][k]));
}

TEST(TrajectoryOracleSlow, CorrelationRelaxesToOne)
{
    SystemParams p = cascade::testing::unequal_decay(1.0, 0.5);
    p.omega_p = 0.4;
    TrajectoryOptions opts;
    opts.equilibration = 30.0;
    opts.averaging_window = 10.0;
    const auto est = g2_from_trajectories(p, Transition::Probe, {0.0, 50.0}, 2000, 5, opts);
    EXPECT_EQ(est.values[0].mean, 0.0);
    EXPECT_LE(std::abs(est.values[1].mean - 1.0), 3.0 * est.values[1].std_error)
        << est.values[1].mean << " +- " << est.values[1].std_error;
}
