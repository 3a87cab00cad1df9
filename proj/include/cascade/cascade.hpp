#ifndef CASCADE_CASCADE_HPP
#define CASCADE_CASCADE_HPP

#include <cascade/correlations.hpp>
#include <cascade/density_matrix.hpp>
#include <cascade/dynamics.hpp>
#include <cascade/liouvillian.hpp>
#include <cascade/matrix_exponential.hpp>
#include <cascade/params.hpp>
#include <cascade/spectra.hpp>
#include <cascade/steady_state.hpp>
#include <cascade/trajectory.hpp>
#include <cascade/version.hpp>

#endif
