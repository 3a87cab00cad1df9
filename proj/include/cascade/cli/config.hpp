#ifndef CASCADE_CLI_CONFIG_HPP
#define CASCADE_CLI_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <cascade/correlations.hpp>
#include <cascade/params.hpp>

namespace cascade::cli {

class ConfigError : public Error
{
public:
    using Error::Error;
};

enum class Mode { Steady, Spectrum, G2, Validate };

inline std::string_view to_string(Mode m)
{
    switch (m) {
    case Mode::Steady: return "steady";
    case Mode::Spectrum: return "spectrum";
    case Mode::G2: return "g2";
    case Mode::Validate: return "validate";
    }
    return "?";
}

struct GridSpec
{
    double min = 0.0;
    double max = 0.0;
    std::size_t points = 0;

    bool operator==(const GridSpec&) const = default;
};

struct SweepSpec
{
    std::string param;
    std::vector<double> values;

    bool operator==(const SweepSpec&) const = default;
};

struct RunConfig
{
    Mode mode = Mode::Steady;
    SystemParams params;
    /// detuning grid (spectrum) or tau grid (g2); absent in other modes
    std::optional<GridSpec> grid;
    std::optional<SweepSpec> sweep;
    Transition transition = Transition::Probe;
    /// output stem, relative to the --output directory
    std::string output;
    std::uint64_t seed = 42;
    std::size_t ntraj = 20000;
    /// delays checked by validate mode
    std::vector<double> validate_taus{0.5, 1.0, 2.0, 5.0, 10.0};

    bool operator==(const RunConfig&) const = default;
};

inline GridSpec default_grid(Mode mode)
{
    if (mode == Mode::Spectrum) return {-4.0, 4.0, 801};
    return {0.0, 50.0, 5001};
}

namespace detail {

using json = nlohmann::json;

inline void reject_unknown(const json& obj, std::string_view where,
                           std::initializer_list<std::string_view> allowed)
{
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok)
            throw ConfigError("unknown key '" + key + "' in " + std::string(where));
    }
}

inline double finite_number(const json& v, const std::string& what)
{
    if (!v.is_number()) throw ConfigError(what + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(what + " must be finite");
    return d;
}

inline std::uint64_t count(const json& v, const std::string& what)
{
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw ConfigError(what + " must be a non-negative integer");
    return v.get<std::uint64_t>();
}

inline const json& required(const json& obj, const std::string& key,
                            std::string_view where)
{
    auto it = obj.find(key);
    if (it == obj.end())
        throw ConfigError("missing required field '" + key + "' in " +
                          std::string(where));
    return *it;
}

} // namespace detail

/**
 * Parses and validates a run configuration. Unknown keys at any level are
 * errors, as are non-finite numbers and parameters violating their
 * physical constraints.
 */
inline RunConfig parse_config(std::string_view text)
{
    using detail::json;
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    detail::reject_unknown(doc, "config",
                           {"mode", "params", "grid", "sweep", "transition", "output",
                            "seed", "ntraj", "validate_taus"});

    RunConfig cfg;
    const json& mode = detail::required(doc, "mode", "config");
    if (!mode.is_string()) throw ConfigError("mode must be a string");
    const auto m = mode.get<std::string>();
    if (m == "steady") cfg.mode = Mode::Steady;
    else if (m == "spectrum") cfg.mode = Mode::Spectrum;
    else if (m == "g2") cfg.mode = Mode::G2;
    else if (m == "validate") cfg.mode = Mode::Validate;
    else throw ConfigError("unknown mode '" + m + "'");

    const json& params = detail::required(doc, "params", "config");
    if (!params.is_object()) throw ConfigError("params must be an object");
    for (const auto& [key, value] : params.items()) {
        double* field = param_field(cfg.params, key);
        if (field == nullptr) throw ConfigError("unknown key '" + key + "' in params");
        *field = detail::finite_number(value, "params." + key);
    }
    if (auto problem = check(cfg.params))
        throw ConfigError("invalid params: " + *problem);

    if (auto it = doc.find("grid"); it != doc.end()) {
        if (cfg.mode == Mode::Steady || cfg.mode == Mode::Validate)
            throw ConfigError("grid is not used in " + std::string(to_string(cfg.mode)) +
                              " mode");
        if (!it->is_object()) throw ConfigError("grid must be an object");
        detail::reject_unknown(*it, "grid", {"min", "max", "points"});
        GridSpec g;
        g.min = detail::finite_number(detail::required(*it, "min", "grid"), "grid.min");
        g.max = detail::finite_number(detail::required(*it, "max", "grid"), "grid.max");
        g.points = detail::count(detail::required(*it, "points", "grid"), "grid.points");
        if (g.points < 2 || !(g.max > g.min))
            throw ConfigError("grid needs points >= 2 and max > min");
        if (cfg.mode == Mode::G2 && g.min < 0.0)
            throw ConfigError("tau grid must be non-negative");
        cfg.grid = g;
    } else if (cfg.mode == Mode::Spectrum || cfg.mode == Mode::G2) {
        cfg.grid = default_grid(cfg.mode);
    }

    if (auto it = doc.find("sweep"); it != doc.end()) {
        if (cfg.mode == Mode::Validate)
            throw ConfigError("sweep is not supported in validate mode");
        if (!it->is_object()) throw ConfigError("sweep must be an object");
        detail::reject_unknown(*it, "sweep", {"param", "values"});
        SweepSpec s;
        const json& name = detail::required(*it, "param", "sweep");
        if (!name.is_string()) throw ConfigError("sweep.param must be a string");
        s.param = name.get<std::string>();
        if (param_field(cfg.params, s.param) == nullptr)
            throw ConfigError("sweep.param '" + s.param + "' is not a parameter name");
        if (cfg.mode == Mode::Spectrum && s.param == "delta_p")
            throw ConfigError("delta_p cannot be swept in spectrum mode");
        const json& values = detail::required(*it, "values", "sweep");
        if (!values.is_array() || values.empty())
            throw ConfigError("sweep.values must be a non-empty array");
        for (const auto& v : values) {
            const double d = detail::finite_number(v, "sweep.values entry");
            if (auto problem = check(with_param(cfg.params, s.param, d)))
                throw ConfigError("invalid sweep value: " + *problem);
            s.values.push_back(d);
        }
        cfg.sweep = std::move(s);
    }

    if (auto it = doc.find("transition"); it != doc.end()) {
        if (!it->is_string()) throw ConfigError("transition must be a string");
        const auto t = it->get<std::string>();
        if (t == "probe") cfg.transition = Transition::Probe;
        else if (t == "pump") cfg.transition = Transition::Pump;
        else throw ConfigError("unknown transition '" + t + "'");
    }

    if (auto it = doc.find("output"); it != doc.end()) {
        if (!it->is_string() || it->get<std::string>().empty())
            throw ConfigError("output must be a non-empty string");
        cfg.output = it->get<std::string>();
    } else {
        cfg.output = std::string(to_string(cfg.mode));
    }

    if (auto it = doc.find("seed"); it != doc.end())
        cfg.seed = detail::count(*it, "seed");
    if (auto it = doc.find("ntraj"); it != doc.end()) {
        cfg.ntraj = detail::count(*it, "ntraj");
        if (cfg.ntraj < 100) throw ConfigError("ntraj must be at least 100");
    }
    if (auto it = doc.find("validate_taus"); it != doc.end()) {
        if (!it->is_array() || it->empty())
            throw ConfigError("validate_taus must be a non-empty array");
        cfg.validate_taus.clear();
        for (const auto& v : *it) {
            const double d = detail::finite_number(v, "validate_taus entry");
            if (d < 0.0 || (!cfg.validate_taus.empty() && !(d > cfg.validate_taus.back())))
                throw ConfigError("validate_taus must be non-negative and increasing");
            cfg.validate_taus.push_back(d);
        }
    }
    return cfg;
}

/// Fully resolved config; parse_config(to_json(c).dump()) == c.
inline nlohmann::ordered_json to_json(const RunConfig& cfg)
{
    nlohmann::ordered_json j;
    j["mode"] = to_string(cfg.mode);
    nlohmann::ordered_json p;
    for (auto name : param_names) p[std::string(name)] = param_value(cfg.params, name);
    j["params"] = p;
    if (cfg.grid)
        j["grid"] = {{"min", cfg.grid->min}, {"max", cfg.grid->max},
                     {"points", cfg.grid->points}};
    if (cfg.sweep) j["sweep"] = {{"param", cfg.sweep->param}, {"values", cfg.sweep->values}};
    j["transition"] = to_string(cfg.transition);
    j["output"] = cfg.output;
    j["seed"] = cfg.seed;
    j["ntraj"] = cfg.ntraj;
    j["validate_taus"] = cfg.validate_taus;
    return j;
}

} // namespace cascade::cli

#endif
