#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <cascade/cli/config.hpp>
#include <cascade/cli/run.hpp>

int main(int argc, char** argv)
{
    using namespace cascade::cli;

    CLI::App app{"Steady states, probe spectra and photon correlations of a pumped "
                 "three-level ladder atom"};
    app.set_version_flag("--version", std::string(cascade::version_string));

    std::string config_path;
    std::string output_dir = ".";
    unsigned threads = 0;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> ntraj;

    app.add_option("config", config_path, "JSON run configuration")->required();
    app.add_option("--output", output_dir, "output directory");
    app.add_option("--threads", threads, "worker threads (0 = auto)");
    app.add_option("--seed", seed, "random seed (validate mode)");
    app.add_option("--ntraj", ntraj, "number of trajectories (validate mode)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read config '" << config_path << "'\n";
        return exit_io;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    RunConfig cfg;
    try {
        cfg = parse_config(buf.str());
        if (seed) cfg.seed = *seed;
        if (ntraj) {
            if (*ntraj < 100) throw ConfigError("--ntraj must be at least 100");
            cfg.ntraj = *ntraj;
        }
    } catch (const cascade::Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    }

    const RunResult result = run(cfg, RunOptions{output_dir, threads});
    if (!result.message.empty())
        std::cerr << (result.exit_code == exit_ok ? "" : "error: ") << result.message << '\n';
    for (const auto& f : result.files) std::cout << f.string() << '\n';
    return result.exit_code;
}
