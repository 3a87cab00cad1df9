#ifndef CASCADE_PARAMS_HPP
#define CASCADE_PARAMS_HPP

#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include <cascade/error.hpp>

namespace cascade {

/**
 * Rates, Rabi frequencies and detunings of the pumped cascade atom.
 *
 * Every quantity is expressed in units of gamma21. Rates are the
 * un-doubled symbols: the level |2> decays at the full rate 2*gamma21,
 * level |3> at 2*gamma32, and the incoherent pumps move population out of
 * |1> at 2*lambda12 and 2*lambda13.
 */
struct SystemParams
{
    double gamma21 = 1.0;
    double gamma32 = 0.0;
    double lambda12 = 0.0;
    double lambda13 = 0.0;
    double omega_p = 0.0;
    double omega_c = 0.0;
    double delta_p = 0.0;
    double delta_c = 0.0;

    bool operator==(const SystemParams&) const = default;
};

/// Field names in declaration order, as used by configs and CSV headers.
inline constexpr std::array<std::string_view, 8> param_names = {
    "gamma21", "gamma32", "lambda12", "lambda13",
    "omega_p", "omega_c", "delta_p",  "delta_c"};

inline double* param_field(SystemParams& p, std::string_view name)
{
    if (name == "gamma21") return &p.gamma21;
    if (name == "gamma32") return &p.gamma32;
    if (name == "lambda12") return &p.lambda12;
    if (name == "lambda13") return &p.lambda13;
    if (name == "omega_p") return &p.omega_p;
    if (name == "omega_c") return &p.omega_c;
    if (name == "delta_p") return &p.delta_p;
    if (name == "delta_c") return &p.delta_c;
    return nullptr;
}

inline double param_value(const SystemParams& p, std::string_view name)
{
    SystemParams copy = p;
    const double* field = param_field(copy, name);
    if (field == nullptr)
        throw ParameterError("unknown parameter '" + std::string(name) + "'");
    return *field;
}

inline SystemParams with_param(SystemParams p, std::string_view name,
                               double value)
{
    double* field = param_field(p, name);
    if (field == nullptr)
        throw ParameterError("unknown parameter '" + std::string(name) + "'");
    *field = value;
    return p;
}

inline std::string describe(const SystemParams& p)
{
    std::ostringstream os;
    os.precision(17);
    os << "{gamma21=" << p.gamma21 << ", gamma32=" << p.gamma32
       << ", lambda12=" << p.lambda12 << ", lambda13=" << p.lambda13
       << ", omega_p=" << p.omega_p << ", omega_c=" << p.omega_c
       << ", delta_p=" << p.delta_p << ", delta_c=" << p.delta_c << "}";
    return os.str();
}

/// Returns a message describing the first violated invariant, if any.
inline std::optional<std::string> check(const SystemParams& p)
{
    SystemParams copy = p;
    for (auto name : param_names) {
        if (!std::isfinite(*param_field(copy, name)))
            return std::string(name) + " is not finite";
    }
    if (!(p.gamma21 > 0.0)) return std::string("gamma21 must be positive");
    if (p.gamma32 < 0.0) return std::string("gamma32 must be non-negative");
    if (p.lambda12 < 0.0) return std::string("lambda12 must be non-negative");
    if (p.lambda13 < 0.0) return std::string("lambda13 must be non-negative");
    return std::nullopt;
}

inline const SystemParams& validate(const SystemParams& p)
{
    if (auto problem = check(p))
        throw ParameterError("invalid parameters: " + *problem + " in " +
                             describe(p));
    return p;
}

} // namespace cascade

#endif
