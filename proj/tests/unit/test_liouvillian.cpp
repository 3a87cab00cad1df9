#include <random>

#include <gtest/gtest.h>

#include <cascade/liouvillian.hpp>

#include "oracles.hpp"

using namespace cascade;
using cascade::testing::equations_of_motion;
using cascade::testing::random_params;
using cascade::testing::random_state;

namespace {

SystemParams pure_decay()
{
    SystemParams p;
    p.gamma21 = 1.0;
    return p;
}

} // namespace

TEST(Liouvillian, PureDecayGenerator)
{
    const Liouvillian L = build_liouvillian(pure_decay());
    std::mt19937_64 rng(7);
    const Matrix3c rho = random_state(rng);
    const Matrix3c d = apply_generator(L, rho);
    EXPECT_NEAR(std::abs(d(0, 0) - 2.0 * rho(1, 1)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(d(1, 1) + 2.0 * rho(1, 1)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(d(0, 1) + rho(0, 1)), 0.0, 1e-15);
}

TEST(Liouvillian, ProbeCoherenceRowOfUnequalDecaySet)
{
    const Liouvillian L = build_liouvillian(cascade::testing::unequal_decay(0.5));
    const int r13 = idx(0, 2);
    EXPECT_DOUBLE_EQ(L(r13, r13).real(), -0.16);
    EXPECT_DOUBLE_EQ(L(r13, r13).imag(), 0.0);
    EXPECT_EQ(L(r13, idx(1, 2)), cplx(0.0, 0.01));
    EXPECT_EQ(L(r13, idx(0, 1)), cplx(0.0, -0.5));
}

TEST(Liouvillian, PopulationRowsSumToZero)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Liouvillian L = build_liouvillian(random_params(rng));
        const auto sum = L.matrix().row(idx(0, 0)) + L.matrix().row(idx(1, 1)) +
                         L.matrix().row(idx(2, 2));
        EXPECT_LE(sum.cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Liouvillian, ConjugateRowsArePairedConjugates)
{
    std::mt19937_64 rng(13);
    const Liouvillian L = build_liouvillian(random_params(rng));
    for (int row = 0; row < 9; ++row) {
        const int partner = conjugate_slot[row];
        for (int col = 0; col < 9; ++col)
            EXPECT_EQ(L(partner, conjugate_slot[col]), std::conj(L(row, col)))
                << "row " << row << " col " << col;
    }
}

TEST(Liouvillian, MatchesEquationsOfMotionOnRandomStates)
{
    std::mt19937_64 rng(17);
    for (int set = 0; set < 20; ++set) {
        const SystemParams p = random_params(rng);
        const Liouvillian L = build_liouvillian(p);
        for (int k = 0; k < 100; ++k) {
            const Matrix3c rho = random_state(rng);
            const Matrix3c d = apply_generator(L, rho);
            EXPECT_LE((d - equations_of_motion(p, rho)).cwiseAbs().maxCoeff(), 1e-13);
            EXPECT_LE(hermiticity_defect(d), 1e-12);
            EXPECT_LE(std::abs(d.trace()), 1e-12);
        }
    }
}

TEST(Liouvillian, AffineLinearity)
{
    std::mt19937_64 rng(19);
    const Liouvillian L = build_liouvillian(random_params(rng));
    std::uniform_real_distribution<double> u(-2.0, 3.0);
    for (int k = 0; k < 50; ++k) {
        const Matrix3c r1 = random_state(rng), r2 = random_state(rng);
        const double a = u(rng), b = 1.0 - a;
        const Matrix3c lhs = apply_generator(L, Matrix3c(a * r1 + b * r2));
        const Matrix3c rhs = a * apply_generator(L, r1) + b * apply_generator(L, r2);
        EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Liouvillian, DecayOfExcitedLevel)
{
    const Liouvillian L = build_liouvillian(pure_decay());
    const Matrix3c d = apply_generator(L, DensityMatrix::level(1));
    EXPECT_EQ(d(0, 0), cplx(2.0, 0.0));
    EXPECT_EQ(d(1, 1), cplx(-2.0, 0.0));
    EXPECT_EQ(d(0, 1), cplx(0.0, 0.0));
    EXPECT_EQ(d(1, 2), cplx(0.0, 0.0));
    EXPECT_EQ(d(0, 2), cplx(0.0, 0.0));
}

TEST(Liouvillian, ProbeDrivenGroundState)
{
    SystemParams p;
    p.omega_p = 0.01;
    const Matrix3c d = apply_generator(build_liouvillian(p), DensityMatrix::level(0));
    // i * omega_p * (rho22 - rho11)
    EXPECT_NEAR(std::abs(d(0, 1) - cplx(0.0, -0.01)), 0.0, 1e-18);
}

TEST(Liouvillian, RejectsInvalidParameters)
{
    SystemParams p;
    p.lambda12 = -0.1;
    EXPECT_THROW(build_liouvillian(p), ParameterError);
    p = SystemParams{};
    p.gamma21 = 0.0;
    EXPECT_THROW(build_liouvillian(p), ParameterError);
    p = SystemParams{};
    p.omega_c = std::numeric_limits<double>::infinity();
    EXPECT_THROW(build_liouvillian(p), ParameterError);
    p = SystemParams{};
    p.delta_p = std::nan("");
    EXPECT_THROW(build_liouvillian(p), ParameterError);
}

TEST(Liouvillian, ApplyGeneratorRejectsNonHermitianInput)
{
    Matrix3c m = Matrix3c::Zero();
    m(0, 1) = 1.0;
    EXPECT_THROW(apply_generator(build_liouvillian(pure_decay()), m), StateError);
}

TEST(DensityMatrix, Invariants)
{
    EXPECT_NO_THROW(DensityMatrix::diagonal(0.5, 0.25, 0.25));
    EXPECT_THROW(DensityMatrix::diagonal(0.5, 0.25, 0.3), StateError);
    EXPECT_THROW(DensityMatrix::diagonal(1.5, -0.25, -0.25), StateError);
    Matrix3c m = Matrix3c::Zero();
    m(0, 0) = 1.0;
    m(0, 1) = cplx(0.0, 0.1);
    EXPECT_THROW(DensityMatrix{m}, StateError);
}

TEST(DensityMatrix, VectorizationOrdering)
{
    Matrix3c m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = cplx(10 * (i + 1) + (j + 1), 0);
    const Vector9c v = vectorize(m);
    const double expected[9] = {11, 22, 33, 12, 21, 13, 31, 23, 32};
    for (int k = 0; k < 9; ++k) EXPECT_EQ(v(k).real(), expected[k]);
    EXPECT_EQ(devectorize(v), m);
}
