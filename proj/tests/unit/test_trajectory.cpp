#include <cmath>

#include <gtest/gtest.h>

#include <cascade/trajectory.hpp>

#include "oracles.hpp"

using namespace cascade;

namespace {

TrajectoryOptions quick()
{
    TrajectoryOptions o;
    o.equilibration = 5.0;
    o.averaging_window = 1.0;
    return o;
}

bool within_sigma(double a, double b, double se, double k = 3.0)
{
    return std::abs(a - b) <= k * se + 1e-15;
}

} // namespace

TEST(TrajectoryOracle, JumpChannelsCarryFullRates)
{
    SystemParams p;
    p.gamma21 = 1.0;
    p.gamma32 = 0.16;
    p.lambda12 = 0.1;
    p.lambda13 = 0.2;
    const auto ch = jump_channels(p);
    ASSERT_EQ(ch.size(), 4u);
    EXPECT_EQ(ch[0].from, 1);
    EXPECT_EQ(ch[0].to, 0);
    EXPECT_DOUBLE_EQ(ch[0].rate, 2.0);
    EXPECT_DOUBLE_EQ(ch[1].rate, 0.32);
    EXPECT_EQ(ch[2].from, 0);
    EXPECT_EQ(ch[2].to, 1);
    EXPECT_DOUBLE_EQ(ch[2].rate, 0.2);
    EXPECT_EQ(ch[3].to, 2);
    EXPECT_DOUBLE_EQ(ch[3].rate, 0.4);
    for (const auto& c : ch) EXPECT_NE(c.from, c.to);
}

TEST(TrajectoryOracle, EffectiveHamiltonianDampsDepartureLevels)
{
    SystemParams p = cascade::testing::unequal_decay(0.5, 0.1);
    p.lambda13 = 0.05;
    const auto h = mcwf::effective_hamiltonian(p);
    EXPECT_DOUBLE_EQ(h[0][0].imag(), -(0.1 + 0.05));
    EXPECT_DOUBLE_EQ(h[1][1].imag(), -1.0);
    EXPECT_DOUBLE_EQ(h[2][2].imag(), -0.16);
    EXPECT_DOUBLE_EQ(h[0][1].real(), -0.01);
    EXPECT_DOUBLE_EQ(h[1][2].real(), -0.5);
}

TEST(TrajectoryOracle, EvolutionOperatorComposes)
{
    const auto h = mcwf::effective_hamiltonian(cascade::testing::unequal_decay(1.0, 0.3));
    const auto a = mcwf::evolution_operator(h, 0.7);
    const auto b = mcwf::evolution_operator(h, 0.3);
    const auto ab = mcwf::multiply(a, b);
    const auto direct = mcwf::evolution_operator(h, 1.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(ab[i][j] - direct[i][j]), 0.0, 1e-14);
}

TEST(TrajectoryOracle, PureDecayLaw)
{
    SystemParams p;
    p.gamma21 = 1.0;
    const auto est = run_trajectories(p, DensityMatrix::level(1), {0.5, 1.0}, 10000, 42);
    const auto& r = est.populations[1][1];
    EXPECT_EQ(r.n_trajectories, 10000u);
    EXPECT_TRUE(within_sigma(r.mean, std::exp(-2.0), r.std_error))
        << r.mean << " +- " << r.std_error;
    EXPECT_GT(r.std_error, 0.0);
}

TEST(TrajectoryOracle, DeterministicReplay)
{
    const SystemParams p = cascade::testing::unequal_decay(1.0, 0.5);
    TrajectoryOptions one, many;
    one.threads = 1;
    many.threads = 4;
    const auto a = run_trajectories(p, DensityMatrix::diagonal(0.5, 0.5, 0.0), 3.0, 300, 9, one);
    const auto b = run_trajectories(p, DensityMatrix::diagonal(0.5, 0.5, 0.0), 3.0, 300, 9, many);
    const auto c = run_trajectories(p, DensityMatrix::diagonal(0.5, 0.5, 0.0), 3.0, 300, 10, one);
    bool differs = false;
    for (int level = 0; level < 3; ++level) {
        for (std::size_t k = 0; k < a.times.size(); ++k) {
            EXPECT_EQ(a.populations[level][k].mean, b.populations[level][k].mean);
            EXPECT_EQ(a.populations[level][k].std_error, b.populations[level][k].std_error);
            differs |= a.populations[level][k].mean != c.populations[level][k].mean;
        }
    }
    EXPECT_TRUE(differs);
}

TEST(TrajectoryOracle, ProbeCorrelationVanishesAtZeroDelay)
{
    const auto est = g2_from_trajectories(cascade::testing::unequal_decay(0.5, 0.1),
                                          Transition::Probe, {0.0, 1.0}, 200, 1, quick());
    EXPECT_EQ(est.values[0].mean, 0.0);
    EXPECT_EQ(est.values[0].std_error, 0.0);
    EXPECT_GT(est.values[1].mean, 0.0);
}

TEST(TrajectoryOracle, RejectsUnsupportedInputs)
{
    const SystemParams p = cascade::testing::unequal_decay(0.5);
    Matrix3c coherent = Matrix3c::Zero();
    coherent(0, 0) = coherent(1, 1) = coherent(0, 1) = coherent(1, 0) = 0.5;
    EXPECT_THROW(run_trajectories(p, DensityMatrix(coherent), 1.0, 200, 1),
                 std::invalid_argument);
    EXPECT_THROW(run_trajectories(p, DensityMatrix::level(0), 1.0, 99, 1),
                 std::invalid_argument);
    SystemParams bad = p;
    bad.lambda13 = -1.0;
    EXPECT_THROW(run_trajectories(bad, DensityMatrix::level(0), 1.0, 200, 1), ParameterError);
}

TEST(TrajectoryOracle, VanishingEmitterIsAnError)
{
    EXPECT_THROW(g2_from_trajectories(cascade::testing::unequal_decay(0.0), Transition::Pump,
                                      {0.0, 1.0}, 100, 1, quick()),
                 NormalizationError);
}

TEST(TrajectoryOracle, EstimateStatistics)
{
    const auto e = mcwf::estimate({1.0, 2.0, 3.0, 4.0}, "x");
    EXPECT_DOUBLE_EQ(e.mean, 2.5);
    // sample sd sqrt(5/3), over sqrt(4)
    EXPECT_NEAR(e.std_error, std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
    EXPECT_EQ(e.quantity, "x");
}
