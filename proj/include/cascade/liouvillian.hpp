#ifndef CASCADE_LIOUVILLIAN_HPP
#define CASCADE_LIOUVILLIAN_HPP

#include <cascade/density_matrix.hpp>
#include <cascade/params.hpp>

namespace cascade {

/**
 * Generator of the optical Bloch equations of the pumped ladder atom,
 * acting on the vectorized density matrix (see vec_index for ordering).
 */
class Liouvillian
{
public:
    Liouvillian() : m_matrix(Matrix9c::Zero()) {}

    /// Wraps a raw generator; no physical checks are applied.
    Liouvillian(const Matrix9c& matrix, const SystemParams& params)
        : m_matrix(matrix), m_params(params)
    {
    }

    const Matrix9c& matrix() const noexcept { return m_matrix; }
    const SystemParams& params() const noexcept { return m_params; }

    cplx operator()(int row, int col) const { return m_matrix(row, col); }

private:
    Matrix9c m_matrix;
    SystemParams m_params;
};

/**
 * Builds the generator row by row from the equations of motion in the
 * rotating frame. Population rows carry the doubled rates 2*gamma and
 * 2*lambda, coherence rows the bare sums. Each rho_ji row is the complex
 * conjugate of the rho_ij row with columns paired by conjugate_slot.
 */
inline Liouvillian build_liouvillian(const SystemParams& params)
{
    const SystemParams& p = validate(params);
    const double g21 = p.gamma21, g32 = p.gamma32;
    const double l12 = p.lambda12, l13 = p.lambda13;
    const double wp = p.omega_p, wc = p.omega_c;
    const double dp = p.delta_p, dc = p.delta_c;

    Matrix9c m = Matrix9c::Zero();
    const int r11 = idx(0, 0), r22 = idx(1, 1), r33 = idx(2, 2);
    const int r12 = idx(0, 1), r21 = idx(1, 0);
    const int r13 = idx(0, 2), r31 = idx(2, 0);
    const int r23 = idx(1, 2), r32 = idx(2, 1);

    // d rho11/dt
    m(r11, r11) = -2.0 * (l12 + l13);
    m(r11, r22) = 2.0 * g21;
    m(r11, r21) = I * wp;
    m(r11, r12) = -I * wp;

    // d rho22/dt
    m(r22, r11) = 2.0 * l12;
    m(r22, r33) = 2.0 * g32;
    m(r22, r22) = -2.0 * g21;
    m(r22, r21) = -I * wp;
    m(r22, r12) = I * wp;
    m(r22, r23) = -I * wc;
    m(r22, r32) = I * wc;

    // d rho33/dt
    m(r33, r11) = 2.0 * l13;
    m(r33, r33) = -2.0 * g32;
    m(r33, r23) = I * wc;
    m(r33, r32) = -I * wc;

    // d rho12/dt
    m(r12, r12) = -cplx(g21 + l12 + l13, dp);
    m(r12, r22) = I * wp;
    m(r12, r11) = -I * wp;
    m(r12, r13) = -I * wc;

    // d rho23/dt; the coherent drive couples rho33 - rho22
    m(r23, r23) = -cplx(g21 + g32, dc);
    m(r23, r33) = I * wc;
    m(r23, r22) = -I * wc;
    m(r23, r13) = I * wp;

    // d rho13/dt
    m(r13, r13) = -cplx(g32 + l12 + l13, dp + dc);
    m(r13, r23) = I * wp;
    m(r13, r12) = -I * wc;

    for (auto [src, dst] : {std::pair{r12, r21}, {r13, r31}, {r23, r32}}) {
        for (int col = 0; col < 9; ++col)
            m(dst, conjugate_slot[col]) = std::conj(m(src, col));
    }

    return Liouvillian(m, p);
}

/// d rho/dt for the given state. rho must be Hermitian.
inline Matrix3c apply_generator(const Liouvillian& L, const Matrix3c& rho)
{
    if (!(hermiticity_defect(rho) <= 1e-12))
        throw StateError("apply_generator: input is not Hermitian");
    return devectorize(L.matrix() * vectorize(rho));
}

inline Matrix3c apply_generator(const Liouvillian& L, const DensityMatrix& rho)
{
    return apply_generator(L, rho.matrix());
}

} // namespace cascade

#endif
