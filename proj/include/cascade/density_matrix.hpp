#ifndef CASCADE_DENSITY_MATRIX_HPP
#define CASCADE_DENSITY_MATRIX_HPP

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include <cascade/error.hpp>

namespace cascade {

using cplx = std::complex<double>;
using Matrix3c = Eigen::Matrix3cd;
using Vector9c = Eigen::Matrix<cplx, 9, 1>;
using Matrix9c = Eigen::Matrix<cplx, 9, 9>;

inline constexpr cplx I{0.0, 1.0};

/*
 * Vectorized state ordering:
 *   0: rho11  1: rho22  2: rho33
 *   3: rho12  4: rho21  5: rho13  6: rho31  7: rho23  8: rho32
 * Level indices below are zero based (|1> -> 0).
 */
inline constexpr std::array<std::array<int, 3>, 3> vec_index = {{
    {0, 3, 5},
    {4, 1, 7},
    {6, 8, 2},
}};

/// Partner of each vector slot under rho_ij <-> rho_ji.
inline constexpr std::array<int, 9> conjugate_slot = {0, 1, 2, 4, 3, 6, 5, 8, 7};

inline constexpr int idx(int i, int j) { return vec_index[i][j]; }

inline Vector9c vectorize(const Matrix3c& m)
{
    Vector9c v;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            v(idx(i, j)) = m(i, j);
    return v;
}

inline Matrix3c devectorize(const Vector9c& v)
{
    Matrix3c m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m(i, j) = v(idx(i, j));
    return m;
}

inline double hermiticity_defect(const Matrix3c& m)
{
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline double min_eigenvalue(const Matrix3c& m)
{
    const Matrix3c h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix3c> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

struct StateTolerance
{
    double hermiticity = 1e-12;
    double trace = 1e-10;
    double positivity = 1e-9;
};

/**
 * A validated 3x3 density matrix: Hermitian, unit trace and positive
 * semidefinite within the supplied tolerances.
 */
class DensityMatrix
{
public:
    DensityMatrix() : m_rho(Matrix3c::Zero()) { m_rho(0, 0) = 1.0; }

    explicit DensityMatrix(const Matrix3c& rho, StateTolerance tol = {})
        : m_rho(rho)
    {
        const double herm = hermiticity_defect(rho);
        if (!(herm <= tol.hermiticity))
            throw StateError("density matrix is not Hermitian (defect " +
                             std::to_string(herm) + ")");
        const double tr_err = std::abs(rho.trace() - 1.0);
        if (!(tr_err <= tol.trace))
            throw StateError("density matrix trace differs from 1 by " +
                             std::to_string(tr_err));
        const double lmin = min_eigenvalue(rho);
        if (!(lmin >= -tol.positivity))
            throw StateError("density matrix has negative eigenvalue " +
                             std::to_string(lmin));
    }

    /// Projector onto the bare level |level+1>.
    static DensityMatrix level(int level)
    {
        Matrix3c m = Matrix3c::Zero();
        m(level, level) = 1.0;
        return DensityMatrix(m);
    }

    static DensityMatrix diagonal(double p1, double p2, double p3)
    {
        Matrix3c m = Matrix3c::Zero();
        m(0, 0) = p1;
        m(1, 1) = p2;
        m(2, 2) = p3;
        return DensityMatrix(m);
    }

    const Matrix3c& matrix() const noexcept { return m_rho; }
    cplx operator()(int i, int j) const { return m_rho(i, j); }
    double population(int level) const { return m_rho(level, level).real(); }
    Vector9c vec() const { return vectorize(m_rho); }

private:
    Matrix3c m_rho;
};

} // namespace cascade

#endif
