// Batch front-end: assemble a run configuration from a preset and/or a JSON
// config file plus flag overrides, execute it, and report the files written.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "adbr/adbr.hpp"

namespace
{

void fail(const std::string& kind, const std::string& message, int code)
{
    nlohmann::json err{{"error", {{"kind", kind}, {"message", message}}}};
    std::cerr << err.dump() << '\n';
    std::exit(code);
}

// "fmin:fmax:points"
adbr::GridSpec parse_grid(const std::string& s)
{
    adbr::GridSpec g;
    char c1, c2;
    std::istringstream is(s);
    if (!(is >> g.f_min_thz >> c1 >> g.f_max_thz >> c2 >> g.points) || c1 != ':' || c2 != ':')
        throw std::invalid_argument("--grid expects fmin:fmax:points");
    return g;
}

// "deg" or "min:max:steps"
adbr::AoiSpec parse_aoi(const std::string& s)
{
    adbr::AoiSpec a;
    if (s.find(':') == std::string::npos) {
        a.min_deg = a.max_deg = std::stod(s);
        a.steps = 1;
        return a;
    }
    char c1, c2;
    std::istringstream is(s);
    if (!(is >> a.min_deg >> c1 >> a.max_deg >> c2 >> a.steps) || c1 != ':' || c2 != ':')
        throw std::invalid_argument("--aoi expects deg or min:max:steps");
    return a;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"adbr - adiabatic distributed-Bragg-reflector toolkit"};
    std::string preset_name, config_path, out_dir, engine, pol, aoi, grid;
    app.add_option("--preset", preset_name,
                   "named run: normal-n39, normal-n21, cdbr-d10, cdbr-d5, cdbr-d2.5, "
                   "ict-n21, fig6-anglemaps");
    app.add_option("--config", config_path, "JSON run configuration file");
    app.add_option("--out", out_dir, "output directory (default: out)");
    app.add_option("--engine", engine, "tmm | coupled_mode | both");
    app.add_option("--pol", pol, "TE | TM | both");
    app.add_option("--aoi", aoi, "angle of incidence: deg or min:max:steps");
    app.add_option("--grid", grid, "frequency grid: fmin:fmax:points (THz)");
    CLI11_PARSE(app, argc, argv);

    try {
        adbr::RunConfig config;
        bool have_config = false;
        if (!preset_name.empty()) {
            config = adbr::preset(preset_name);
            have_config = true;
        }
        if (!config_path.empty()) {
            std::ifstream is(config_path);
            if (!is) fail("io", "cannot read config file " + config_path, 2);
            nlohmann::json j;
            is >> j;
            config = j.get<adbr::RunConfig>();
            have_config = true;
        }
        if (!have_config)
            fail("usage", "one of --preset or --config is required", 1);

        // flags win over the file/preset where given
        if (!out_dir.empty()) config.output_dir = out_dir;
        if (!engine.empty()) {
            if (engine == "tmm")
                config.engine = adbr::Engine::Tmm;
            else if (engine == "coupled_mode")
                config.engine = adbr::Engine::CoupledMode;
            else if (engine == "both")
                config.engine = adbr::Engine::Both;
            else
                throw std::invalid_argument("--engine must be tmm|coupled_mode|both");
        }
        if (!pol.empty()) {
            if (pol == "TE")
                config.pol = adbr::PolChoice::TE;
            else if (pol == "TM")
                config.pol = adbr::PolChoice::TM;
            else if (pol == "both")
                config.pol = adbr::PolChoice::Both;
            else
                throw std::invalid_argument("--pol must be TE|TM|both");
        }
        if (!aoi.empty()) config.aoi = parse_aoi(aoi);
        if (!grid.empty()) config.grid = parse_grid(grid);

        const auto files = adbr::run(config);
        for (const auto& f : files) std::cout << config.output_dir << '/' << f << '\n';
        return 0;
    } catch (const std::invalid_argument& e) {
        fail("config", e.what(), 1);
    } catch (const std::exception& e) {
        fail("io", e.what(), 2);
    }
}
