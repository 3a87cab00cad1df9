#ifndef CASCADE_MATRIX_EXPONENTIAL_HPP
#define CASCADE_MATRIX_EXPONENTIAL_HPP

#include <array>
#include <cmath>
#include <string>

#include <cascade/liouvillian.hpp>

namespace cascade {

namespace detail {

// Higham (2005), "The scaling and squaring method for the matrix
// exponential revisited": degree-m Pade approximants are accurate to unit
// roundoff when ||A||_1 <= theta_m.
inline constexpr std::array<int, 5> pade_degrees = {3, 5, 7, 9, 13};
inline constexpr std::array<double, 5> pade_theta = {
    1.495585217958292e-2, 2.539398330063230e-1, 9.504178996162932e-1,
    2.097847961257068e0, 5.371920351148152e0};

inline constexpr std::array<double, 14> pade13_coeffs = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};

inline double norm1(const Matrix9c& a)
{
    return a.cwiseAbs().colwise().sum().maxCoeff();
}

inline void pade_low(const Matrix9c& a, int degree, Matrix9c& u, Matrix9c& v)
{
    static constexpr std::array<double, 4> b3 = {120.0, 60.0, 12.0, 1.0};
    static constexpr std::array<double, 6> b5 = {30240.0, 15120.0, 3360.0,
                                                 420.0,   30.0,    1.0};
    static constexpr std::array<double, 8> b7 = {
        17297280.0, 8648640.0, 1995840.0, 277200.0,
        25200.0,    1512.0,    56.0,      1.0};
    static constexpr std::array<double, 10> b9 = {
        17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
        2162160.0,     110880.0,     3960.0,       90.0,        1.0};

    const double* b = nullptr;
    switch (degree) {
    case 3: b = b3.data(); break;
    case 5: b = b5.data(); break;
    case 7: b = b7.data(); break;
    default: b = b9.data(); break;
    }

    const Matrix9c id = Matrix9c::Identity();
    const Matrix9c a2 = a * a;
    Matrix9c power = id;
    Matrix9c odd = Matrix9c::Zero();
    Matrix9c even = Matrix9c::Zero();
    for (int k = 0; k <= degree; k += 2) {
        even += b[k] * power;
        odd += b[k + 1] * power;
        power = (power * a2).eval();
    }
    u = a * odd;
    v = even;
}

inline void pade13(const Matrix9c& a, Matrix9c& u, Matrix9c& v)
{
    const auto& b = pade13_coeffs;
    const Matrix9c id = Matrix9c::Identity();
    const Matrix9c a2 = a * a;
    const Matrix9c a4 = a2 * a2;
    const Matrix9c a6 = a4 * a2;
    const Matrix9c tu = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                        b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
    u = a * tu;
    v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
        b[2] * a2 + b[0] * id;
}

} // namespace detail

/// Largest number of squarings tolerated before giving up.
inline constexpr int max_squarings = 1000;

/// exp(A) by scaling and squaring with a diagonal Pade approximant.
inline Matrix9c expm(const Matrix9c& a)
{
    using namespace detail;
    const double norm = norm1(a);
    if (!std::isfinite(norm))
        throw ScalingError("matrix exponential: non-finite generator norm");

    Matrix9c u, v;
    for (std::size_t k = 0; k + 1 < pade_degrees.size(); ++k) {
        if (norm <= pade_theta[k]) {
            pade_low(a, pade_degrees[k], u, v);
            return (v - u).partialPivLu().solve(v + u);
        }
    }

    int squarings = 0;
    if (norm > pade_theta.back())
        squarings = static_cast<int>(
            std::ceil(std::log2(norm / pade_theta.back())));
    if (squarings > max_squarings)
        throw ScalingError("matrix exponential: t*||L|| = " +
                           std::to_string(norm) + " is out of range");

    const Matrix9c scaled = a * std::ldexp(1.0, -squarings);
    pade13(scaled, u, v);
    Matrix9c r = (v - u).partialPivLu().solve(v + u);
    for (int s = 0; s < squarings; ++s)
        r = (r * r).eval();
    if (!r.allFinite())
        throw ScalingError("matrix exponential overflowed");
    return r;
}

/// Propagator exp(L t) of the vectorized density matrix.
inline Matrix9c matrix_exponential(const Liouvillian& L, double t)
{
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::invalid_argument("matrix_exponential: t must be finite and >= 0");
    if (t == 0.0) return Matrix9c::Identity();
    return expm(L.matrix() * t);
}

} // namespace cascade

#endif
