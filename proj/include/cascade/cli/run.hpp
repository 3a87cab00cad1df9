#ifndef CASCADE_CLI_RUN_HPP
#define CASCADE_CLI_RUN_HPP

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <cascade/cli/config.hpp>
#include <cascade/correlations.hpp>
#include <cascade/csv.hpp>
#include <cascade/dynamics.hpp>
#include <cascade/parallel.hpp>
#include <cascade/spectra.hpp>
#include <cascade/steady_state.hpp>
#include <cascade/trajectory.hpp>
#include <cascade/version.hpp>

namespace cascade::cli {

class IoError : public Error
{
public:
    using Error::Error;
};

enum ExitCode : int {
    exit_ok = 0,
    exit_config = 1,
    exit_solver = 2,
    exit_io = 3,
    exit_validation_failed = 4,
};

struct RunOptions
{
    std::filesystem::path output_dir = ".";
    unsigned threads = 0;
};

struct RunResult
{
    int exit_code = exit_ok;
    std::vector<std::filesystem::path> files;
    std::string message;
};

namespace detail {

inline std::vector<double> grid_values(const GridSpec& g)
{
    return uniform_grid(g.min, g.max, g.points);
}

/// Parameter sets of a run: one per sweep value, or the base params alone.
inline std::vector<SystemParams> members(const RunConfig& cfg)
{
    if (!cfg.sweep) return {cfg.params};
    std::vector<SystemParams> out;
    for (double v : cfg.sweep->values)
        out.push_back(with_param(cfg.params, cfg.sweep->param, v));
    return out;
}

inline std::vector<std::string> value_columns(const RunConfig& cfg,
                                              const std::string& base)
{
    if (!cfg.sweep) return {base};
    std::vector<std::string> cols;
    for (double v : cfg.sweep->values)
        cols.push_back(base + "_" + cfg.sweep->param + "=" + format_double(v));
    return cols;
}

inline std::string steady_csv(const RunConfig& cfg, unsigned threads)
{
    const auto sets = members(cfg);
    std::vector<std::vector<double>> rows(sets.size());
    parallel_for(sets.size(), threads, [&](std::size_t k) {
        const auto sol = solve_steady_state(build_liouvillian(sets[k]));
        const auto& r = sol.rho_ss;
        rows[k] = {r.population(0), r.population(1), r.population(2),
                   r(0, 1).real(),  r(0, 1).imag(),  r(0, 2).real(),
                   r(0, 2).imag(),  r(1, 2).real(),  r(1, 2).imag(),
                   population_difference(sol)};
        if (cfg.sweep) rows[k].insert(rows[k].begin(), cfg.sweep->values[k]);
    });

    std::ostringstream os;
    CsvWriter csv(os);
    std::vector<std::string> header{"rho11",    "rho22",    "rho33",    "re_rho12",
                                    "im_rho12", "re_rho13", "im_rho13", "re_rho23",
                                    "im_rho23", "pop_diff_21"};
    if (cfg.sweep) header.insert(header.begin(), cfg.sweep->param);
    csv.header(header);
    for (const auto& row : rows) csv.row(row);
    return os.str();
}

inline std::string spectrum_csv(const RunConfig& cfg, unsigned threads)
{
    const auto grid = grid_values(*cfg.grid);
    const auto sets = members(cfg);
    std::vector<SpectrumCurve> curves;
    for (const auto& p : sets) curves.push_back(sweep_probe_detuning(p, grid, threads));

    std::ostringstream os;
    CsvWriter csv(os);
    std::vector<std::string> header{"delta_p"};
    for (auto& c : value_columns(cfg, "im_rho21")) header.push_back(c);
    csv.header(header);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        std::vector<double> row{grid[k]};
        for (const auto& c : curves) row.push_back(c.im_rho21[k]);
        csv.row(row);
    }
    return os.str();
}

inline std::string g2_column(Transition t) { return t == Transition::Probe ? "g22" : "g33"; }

inline std::string g2_csv(const RunConfig& cfg, unsigned threads)
{
    const auto taus = grid_values(*cfg.grid);
    const auto sets = members(cfg);
    std::vector<CorrelationCurve> curves(sets.size());
    parallel_for(sets.size(), threads, [&](std::size_t k) {
        curves[k] = g2(sets[k], cfg.transition, taus);
    });

    std::ostringstream os;
    CsvWriter csv(os);
    std::vector<std::string> header{"tau"};
    for (auto& c : value_columns(cfg, g2_column(cfg.transition))) header.push_back(c);
    csv.header(header);
    for (std::size_t k = 0; k < taus.size(); ++k) {
        std::vector<double> row{taus[k]};
        for (const auto& c : curves) row.push_back(c.values[k]);
        csv.row(row);
    }
    return os.str();
}

struct OracleCheck
{
    std::string name;
    double master = 0.0;
    double oracle = 0.0;
    double std_error = 0.0;

    double sigma() const
    {
        const double d = std::abs(master - oracle);
        if (std_error > 0.0) return d / std_error;
        return d <= 1e-12 ? 0.0 : INFINITY;
    }
    bool pass() const { return sigma() <= 3.0; }
};

/**
 * Cross-checks the master-equation steady state and G(tau) against the
 * quantum-jump oracle: every estimate must agree within three standard
 * errors.
 */
inline std::vector<OracleCheck> oracle_checks(const RunConfig& cfg, unsigned threads)
{
    const Liouvillian L = build_liouvillian(cfg.params);
    const SteadyStateSolution sol = solve_steady_state(L);

    TrajectoryOptions opts;
    opts.threads = threads;
    const G2Estimates est = g2_from_trajectories(cfg.params, cfg.transition,
                                                 cfg.validate_taus, cfg.ntraj, cfg.seed,
                                                 opts);
    const StationaryEstimates& stat = est.equilibrium;
    const CorrelationCurve me = g2(L, sol, cfg.transition, cfg.validate_taus);

    std::vector<OracleCheck> checks;
    for (int level = 0; level < 3; ++level) {
        const std::string label = "rho" + std::to_string(level + 1) +
                                  std::to_string(level + 1) + "_ss";
        checks.push_back({label, sol.rho_ss.population(level),
                          stat.populations[level].mean,
                          stat.populations[level].std_error});
    }
    for (std::size_t k = 0; k < cfg.validate_taus.size(); ++k) {
        checks.push_back({g2_column(cfg.transition) + "_tau=" +
                              format_double(cfg.validate_taus[k]),
                          me.values[k], est.values[k].mean, est.values[k].std_error});
    }
    return checks;
}

inline std::string validate_csv(const std::vector<OracleCheck>& checks)
{
    std::ostringstream os;
    CsvWriter csv(os);
    csv.header({"check", "master_equation", "oracle", "std_error", "deviation_sigma",
                "pass"});
    for (const auto& c : checks) {
        csv.raw_row({c.name, format_double(c.master), format_double(c.oracle),
                     format_double(c.std_error), format_double(c.sigma()),
                     c.pass() ? "true" : "false"});
    }
    return os.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& data)
{
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    os << data;
    os.close();
    if (!os) throw IoError("failed writing '" + path.string() + "'");
}

} // namespace detail

/**
 * Executes a configuration: computes every curve first, then writes
 * <output>.csv and <output>.manifest.json. Module errors are mapped to exit
 * codes (1 config, 2 solver, 3 I/O, 4 failed oracle checks).
 */
inline RunResult run(const RunConfig& cfg, const RunOptions& opts = {})
{
    const auto start = std::chrono::steady_clock::now();
    RunResult result;

    std::string csv;
    bool validation_failed = false;
    try {
        switch (cfg.mode) {
        case Mode::Steady: csv = detail::steady_csv(cfg, opts.threads); break;
        case Mode::Spectrum: csv = detail::spectrum_csv(cfg, opts.threads); break;
        case Mode::G2: csv = detail::g2_csv(cfg, opts.threads); break;
        case Mode::Validate: {
            const auto checks = detail::oracle_checks(cfg, opts.threads);
            for (const auto& c : checks) validation_failed |= !c.pass();
            csv = detail::validate_csv(checks);
            break;
        }
        }
    } catch (const ConfigError& e) {
        return {exit_config, {}, e.what()};
    } catch (const ParameterError& e) {
        return {exit_config, {}, e.what()};
    } catch (const Error& e) {
        return {exit_solver, {}, e.what()};
    } catch (const std::invalid_argument& e) {
        return {exit_config, {}, e.what()};
    }

    const auto base = opts.output_dir / cfg.output;
    const std::filesystem::path csv_path = base.string() + ".csv";
    const std::filesystem::path manifest_path = base.string() + ".manifest.json";
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);

    nlohmann::ordered_json manifest;
    manifest["config"] = to_json(cfg);
    manifest["version"] = version_string;
    manifest["outputs"] = {csv_path.filename().string()};
    manifest["duration_ms"] = elapsed.count();

    try {
        if (!opts.output_dir.empty()) std::filesystem::create_directories(opts.output_dir);
        detail::write_file(csv_path, csv);
        detail::write_file(manifest_path, manifest.dump(2) + "\n");
    } catch (const std::filesystem::filesystem_error& e) {
        return {exit_io, {}, e.what()};
    } catch (const IoError& e) {
        return {exit_io, {}, e.what()};
    }

    result.files = {csv_path, manifest_path};
    if (validation_failed) {
        result.exit_code = exit_validation_failed;
        result.message = "one or more oracle checks failed; see " + csv_path.string();
    }
    return result;
}

} // namespace cascade::cli

#endif
