#ifndef CASCADE_ERROR_HPP
#define CASCADE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cascade {

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Invalid physical parameters (negative rates, non-finite values).
class ParameterError : public Error
{
public:
    using Error::Error;
};

/// The trace-constrained steady-state system is rank deficient.
class DegeneracyError : public Error
{
public:
    DegeneracyError(const std::string& what, int rank_deficiency)
        : Error(what), m_rank_deficiency(rank_deficiency)
    {
    }

    int rank_deficiency() const noexcept { return m_rank_deficiency; }

private:
    int m_rank_deficiency;
};

/// Adaptive integration could not proceed (step size underflow).
class StiffnessError : public Error
{
public:
    using Error::Error;
};

/// Scaling-and-squaring could not bring t*|L| into range.
class ScalingError : public Error
{
public:
    using Error::Error;
};

/// G(tau) normalization is undefined or produced negative probabilities.
class NormalizationError : public Error
{
public:
    using Error::Error;
};

/// A detuning grid does not cover the region needed by a metric.
class CoverageError : public Error
{
public:
    using Error::Error;
};

/// A state violates the density-matrix invariants.
class StateError : public Error
{
public:
    using Error::Error;
};

} // namespace cascade

#endif
