#ifndef CASCADE_CORRELATIONS_HPP
#define CASCADE_CORRELATIONS_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <cascade/dynamics.hpp>
#include <cascade/steady_state.hpp>

namespace cascade {

/// Emitting transition: probe is |2> -> |1>, pump is |3> -> |2>.
enum class Transition { Probe, Pump };

inline std::string_view to_string(Transition t)
{
    return t == Transition::Probe ? "probe" : "pump";
}

/// Zero-based index of the upper (emitting) level of the transition.
inline int emitting_level(Transition t) { return t == Transition::Probe ? 1 : 2; }

/// Zero-based index of the level the atom is left in after emission.
inline int lower_level(Transition t) { return t == Transition::Probe ? 0 : 1; }

struct CorrelationCurve
{
    Transition transition = Transition::Probe;
    std::vector<double> taus;
    std::vector<double> values;
    SystemParams params;
};

/// Atom state right after a photon is emitted on the transition.
inline DensityMatrix reset_state(Transition t)
{
    return DensityMatrix::level(lower_level(t));
}

inline constexpr double min_emitting_population = 1e-14;
inline constexpr double negative_g2_tolerance = 1e-10;

/**
 * Normalized intensity correlation of the light emitted on one transition,
 * by the quantum regression theorem: the atom is reset to the lower level
 * of the transition, propagated for tau and the conditional population of
 * the emitting level is divided by its stationary value.
 */
inline CorrelationCurve g2(const Liouvillian& L, const SteadyStateSolution& sol,
                           Transition transition, const std::vector<double>& taus,
                           PropagationMethod method =
                               PropagationMethod::MatrixExponential)
{
    const int level = emitting_level(transition);
    const double p_ss = sol.rho_ss.population(level);
    if (!(p_ss > min_emitting_population))
        throw NormalizationError(
            "g2: stationary population of the emitting level vanishes for the " +
            std::string(to_string(transition)) + " transition (" +
            std::to_string(p_ss) + ")");
    if (taus.empty())
        throw std::invalid_argument("g2: empty tau grid");
    if (taus.front() < 0.0)
        throw std::invalid_argument("g2: taus must be non-negative");

    std::vector<double> grid;
    grid.reserve(taus.size() + 1);
    const bool prepend_zero = taus.front() != 0.0;
    if (prepend_zero) grid.push_back(0.0);
    grid.insert(grid.end(), taus.begin(), taus.end());

    const PropagationResult traj = propagate(L, reset_state(transition), grid, method);

    CorrelationCurve curve;
    curve.transition = transition;
    curve.taus = taus;
    curve.params = L.params();
    curve.values.reserve(taus.size());
    for (std::size_t k = prepend_zero ? 1 : 0; k < traj.states.size(); ++k) {
        double g = traj.states[k].population(level) / p_ss;
        if (g < 0.0) {
            if (g < -negative_g2_tolerance)
                throw NormalizationError("g2: negative correlation " +
                                         std::to_string(g) + " at tau=" +
                                         std::to_string(traj.times[k]));
            g = 0.0;
        }
        curve.values.push_back(g);
    }
    return curve;
}

/// Convenience overload that builds the generator and steady state.
inline CorrelationCurve g2(const SystemParams& params, Transition transition,
                           const std::vector<double>& taus,
                           PropagationMethod method =
                               PropagationMethod::MatrixExponential)
{
    const Liouvillian L = build_liouvillian(params);
    return g2(L, solve_steady_state(L), transition, taus, method);
}

enum class Regime { Nonclassical, Classical };

inline std::string_view to_string(Regime r)
{
    return r == Regime::Nonclassical ? "nonclassical" : "classical";
}

struct RegimeInterval
{
    double begin = 0.0;
    double end = 0.0;
    Regime label = Regime::Classical;
};

/// |G - 1| at or below this is treated as neither classical nor nonclassical.
inline constexpr double regime_deadband = 1e-9;

/**
 * Splits a correlation curve into maximal tau intervals with G < 1
 * (nonclassical) or G > 1 (classical). Boundaries are located by linear
 * interpolation of G - 1 between grid points; intervals narrower than two
 * grid steps are absorbed into their neighbours.
 */
inline std::vector<RegimeInterval> classify_regions(const CorrelationCurve& curve)
{
    const auto& t = curve.taus;
    const auto& g = curve.values;
    std::vector<RegimeInterval> out;
    if (t.size() != g.size())
        throw std::invalid_argument("classify_regions: size mismatch");
    if (t.size() < 2) return out;

    auto sign_of = [](double v) {
        const double d = v - 1.0;
        return d > regime_deadband ? 1 : (d < -regime_deadband ? -1 : 0);
    };
    auto label_of = [](int s) { return s > 0 ? Regime::Classical : Regime::Nonclassical; };

    int current = 0;
    std::size_t last_signed = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        const int s = sign_of(g[k]);
        if (s == 0) continue;
        if (current == 0) {
            out.push_back({t.front(), t[k], label_of(s)});
        } else if (s != current) {
            const std::size_t a = last_signed, b = k;
            const double da = g[a] - 1.0, db = g[b] - 1.0;
            const double crossing = t[a] + (t[b] - t[a]) * da / (da - db);
            out.back().end = crossing;
            out.push_back({crossing, t[k], label_of(s)});
        }
        current = s;
        last_signed = k;
        out.back().end = t[k];
    }
    if (out.empty()) return out;
    out.front().begin = t.front();
    out.back().end = t.back();

    std::vector<double> steps;
    for (std::size_t k = 1; k < t.size(); ++k) steps.push_back(t[k] - t[k - 1]);
    std::nth_element(steps.begin(), steps.begin() + steps.size() / 2, steps.end());
    const double min_width = 2.0 * steps[steps.size() / 2];

    bool changed = true;
    while (changed && out.size() > 1) {
        changed = false;
        for (std::size_t k = 0; k < out.size(); ++k) {
            if (out[k].end - out[k].begin >= min_width) continue;
            if (k == 0) {
                out[1].begin = out[0].begin;
            } else {
                out[k - 1].end = out[k].end;
            }
            out.erase(out.begin() + static_cast<std::ptrdiff_t>(k));
            changed = true;
            break;
        }
        // coalesce neighbours that now carry the same label
        for (std::size_t k = 1; k < out.size();) {
            if (out[k].label == out[k - 1].label) {
                out[k - 1].end = out[k].end;
                out.erase(out.begin() + static_cast<std::ptrdiff_t>(k));
                changed = true;
            } else {
                ++k;
            }
        }
    }
    return out;
}

} // namespace cascade

#endif
