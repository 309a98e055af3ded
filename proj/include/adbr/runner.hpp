#ifndef ADBR_RUNNER_HPP
#define ADBR_RUNNER_HPP

#include <algorithm>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "adbr/serialization.hpp"

namespace adbr
{

enum class Engine { Tmm, CoupledMode, Both };
enum class PolChoice { TE, TM, Both };
enum class Task { Spectrum, AngleMap, Diagnose, Bloch, Pbg, Compare };

struct GridSpec
{
    double f_min_thz = 100.0;
    double f_max_thz = 800.0;
    int points = 2000;
};

// A single angle when steps == 1, otherwise a uniform sweep.
struct AoiSpec
{
    double min_deg = 0.0;
    double max_deg = 0.0;
    int steps = 1;

    std::vector<double> angles() const
    {
        if (steps <= 1) return {min_deg};
        std::vector<double> out(steps);
        for (int i = 0; i < steps; ++i)
            out[i] = min_deg + (max_deg - min_deg) * i / (steps - 1);
        return out;
    }
};

struct RunConfig
{
    DbrSpec spec;
    GridSpec grid;
    AoiSpec aoi;
    PolChoice pol = PolChoice::TE;
    Engine engine = Engine::Tmm;
    std::set<Task> tasks = {Task::Spectrum};
    std::optional<DbrSpec> baseline;
    std::string output_dir = "out";

    void validate() const
    {
        spec.validate();
        if (grid.points < 2) throw std::invalid_argument("config.grid.points must be >= 2");
        if (grid.f_min_thz >= grid.f_max_thz)
            throw std::invalid_argument("config.grid: f_min_THz must be below f_max_THz");
        if (aoi.steps < 1) throw std::invalid_argument("config.aoi.steps must be >= 1");
        if (aoi.min_deg < 0 || aoi.min_deg >= 90 ||
            (aoi.steps > 1 && (aoi.max_deg < aoi.min_deg || aoi.max_deg >= 90)))
            throw std::invalid_argument("config.aoi: angles must lie in [0, 90)");
        if (tasks.empty()) throw std::invalid_argument("config.tasks must not be empty");
        if (tasks.count(Task::Compare) && !baseline)
            throw std::invalid_argument("config.baseline is required by the compare task");
        if (baseline) baseline->validate();
    }
};

// --------------------------------------------------------------- json I/O

inline const char* task_name(Task t)
{
    switch (t) {
        case Task::Spectrum: return "spectrum";
        case Task::AngleMap: return "angle_map";
        case Task::Diagnose: return "diagnose";
        case Task::Bloch: return "bloch";
        case Task::Pbg: return "pbg";
        default: return "compare";
    }
}

inline Task task_from_name(const std::string& s)
{
    if (s == "spectrum") return Task::Spectrum;
    if (s == "angle_map") return Task::AngleMap;
    if (s == "diagnose") return Task::Diagnose;
    if (s == "bloch") return Task::Bloch;
    if (s == "pbg") return Task::Pbg;
    if (s == "compare") return Task::Compare;
    throw std::invalid_argument("config.tasks: unknown task '" + s + "'");
}

inline void to_json(nlohmann::json& j, const RunConfig& c)
{
    j = nlohmann::json{};
    j["spec"] = c.spec;
    j["grid"] = {{"f_min_THz", c.grid.f_min_thz},
                 {"f_max_THz", c.grid.f_max_thz},
                 {"points", c.grid.points}};
    if (c.aoi.steps <= 1)
        j["aoi"] = c.aoi.min_deg;
    else
        j["aoi"] = {{"min", c.aoi.min_deg}, {"max", c.aoi.max_deg}, {"steps", c.aoi.steps}};
    j["pol"] = c.pol == PolChoice::TE ? "TE" : (c.pol == PolChoice::TM ? "TM" : "both");
    j["engine"] = c.engine == Engine::Tmm
                      ? "tmm"
                      : (c.engine == Engine::CoupledMode ? "coupled_mode" : "both");
    nlohmann::json tasks = nlohmann::json::array();
    for (Task t : c.tasks) tasks.push_back(task_name(t));
    j["tasks"] = tasks;
    if (c.baseline) j["baseline"] = *c.baseline;
    j["output_dir"] = c.output_dir;
}

inline void from_json(const nlohmann::json& j, RunConfig& c)
{
    c.spec = j.at("spec").get<DbrSpec>();
    if (j.contains("grid")) {
        c.grid.f_min_thz = j["grid"].value("f_min_THz", 100.0);
        c.grid.f_max_thz = j["grid"].value("f_max_THz", 800.0);
        c.grid.points = j["grid"].value("points", 2000);
    }
    if (j.contains("aoi")) {
        if (j["aoi"].is_number()) {
            c.aoi = {j["aoi"].get<double>(), j["aoi"].get<double>(), 1};
        } else {
            c.aoi.min_deg = j["aoi"].at("min").get<double>();
            c.aoi.max_deg = j["aoi"].at("max").get<double>();
            c.aoi.steps = j["aoi"].at("steps").get<int>();
        }
    }
    const std::string pol = j.value("pol", "TE");
    if (pol == "TE")
        c.pol = PolChoice::TE;
    else if (pol == "TM")
        c.pol = PolChoice::TM;
    else if (pol == "both")
        c.pol = PolChoice::Both;
    else
        throw std::invalid_argument("config.pol must be TE|TM|both");
    const std::string eng = j.value("engine", "tmm");
    if (eng == "tmm")
        c.engine = Engine::Tmm;
    else if (eng == "coupled_mode")
        c.engine = Engine::CoupledMode;
    else if (eng == "both")
        c.engine = Engine::Both;
    else
        throw std::invalid_argument("config.engine must be tmm|coupled_mode|both");
    if (j.contains("tasks")) {
        c.tasks.clear();
        for (const auto& t : j["tasks"]) c.tasks.insert(task_from_name(t.get<std::string>()));
    }
    if (j.contains("baseline") && !j["baseline"].is_null())
        c.baseline = j["baseline"].get<DbrSpec>();
    c.output_dir = j.value("output_dir", "out");
}

// ----------------------------------------------------------------- presets

// The parameter sets used throughout the study, by name.
inline RunConfig preset(const std::string& name)
{
    auto normal = [](int n) {
        DbrSpec s;
        s.variant = DbrVariant::Normal;
        s.period_nm = 400.0;
        s.d1_nm = 200.0;
        s.cell_count = n;
        return s;
    };
    auto chirped = [](double d1, double delta) {
        DbrSpec s;
        s.variant = DbrVariant::Chirped;
        s.period_nm = 400.0;
        s.d1_nm = d1;
        s.chirp_nm = delta;
        s.cell_count = 39;
        return s;
    };

    RunConfig c;
    if (name == "normal-n39") {
        c.spec = normal(39);
        c.tasks = {Task::Spectrum, Task::Pbg};
    } else if (name == "normal-n21") {
        c.spec = normal(21);
        c.tasks = {Task::Spectrum, Task::Pbg};
    } else if (name == "cdbr-d10") {
        c.spec = chirped(10.0, 10.0);
        c.baseline = normal(39);
        c.tasks = {Task::Spectrum, Task::Pbg, Task::Compare, Task::Diagnose};
    } else if (name == "cdbr-d5") {
        c.spec = chirped(100.0, 5.0);
        c.baseline = normal(39);
        c.tasks = {Task::Spectrum, Task::Pbg, Task::Compare, Task::Diagnose};
    } else if (name == "cdbr-d2.5") {
        c.spec = chirped(150.0, 2.5);
        c.baseline = normal(39);
        c.tasks = {Task::Spectrum, Task::Pbg, Task::Compare, Task::Diagnose};
    } else if (name == "ict-n21") {
        DbrSpec s;
        s.variant = DbrVariant::Ict;
        s.period_nm = 400.0;
        s.d1_nm = 200.0;
        s.cell_count = 21;
        s.theta_max_deg = 0.05;
        s.slice_count = 32;
        s.h_eff_nm = 4000.0;
        c.spec = s;
        c.baseline = normal(21);
        c.tasks = {Task::Spectrum, Task::Pbg, Task::Compare};
    } else if (name == "fig6-anglemaps") {
        c.spec = chirped(10.0, 10.0);
        c.baseline = normal(39);
        c.tasks = {Task::AngleMap};
        c.pol = PolChoice::Both;
        c.aoi = {0.0, 80.0, 17};
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    return c;
}

// ------------------------------------------------------------------- run

namespace detail
{
inline std::vector<Pol> pols_of(PolChoice p)
{
    if (p == PolChoice::TE) return {Pol::TE};
    if (p == PolChoice::TM) return {Pol::TM};
    return {Pol::TE, Pol::TM};
}

inline std::vector<std::string> engines_of(Engine e)
{
    if (e == Engine::Tmm) return {"tmm"};
    if (e == Engine::CoupledMode) return {"cm"};
    return {"tmm", "cm"};
}

inline std::string angle_token(double a)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", a);
    return buf;
}

inline Spectrum compute_spectrum(const DbrSpec& spec, const std::string& engine,
                                 const SpectralGrid& grid, double aoi, Pol pol)
{
    if (engine == "cm") return cm_spectrum(spec, grid, aoi, pol);
    if (spec.variant == DbrVariant::Ict) return ict_averaged_spectrum(spec, grid, aoi, pol);
    return spectrum(build_stack(spec), grid, aoi, pol);
}

// Wavelength the diagnostics are evaluated at: the Bragg wavelength of the
// middle cell, 2 * n_bar(mid) * period.
inline double diagnostics_wavelength(const DbrSpec& spec)
{
    double d1_mid = spec.d1_nm;
    if (spec.variant == DbrVariant::Chirped)
        d1_mid = spec.d1_nm + spec.chirp_nm * (spec.cell_count - 1) / 2.0;
    return 2.0 * cell_average_index(d1_mid, spec.period_nm, spec.n1, spec.n2) * spec.period_nm;
}
}  // namespace detail

// Executes every requested task and returns the list of files written
// (paths relative to output_dir), in a deterministic order.
inline std::vector<std::string> run(const RunConfig& config)
{
    config.validate();
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) throw std::runtime_error("cannot create output dir " + config.output_dir);

    const SpectralGrid grid =
        SpectralGrid::uniform(config.grid.f_min_thz, config.grid.f_max_thz, config.grid.points);
    const auto pols = detail::pols_of(config.pol);
    const auto engines = detail::engines_of(config.engine);
    const auto angles = config.aoi.angles();
    std::vector<std::string> files;
    auto out = [&](const std::string& name) {
        files.push_back(name);
        return (fs::path(config.output_dir) / name).string();
    };

    if (config.tasks.count(Task::Spectrum)) {
        for (const auto& eng : engines)
            for (Pol pol : pols)
                for (double a : angles) {
                    const auto sp = detail::compute_spectrum(config.spec, eng, grid, a, pol);
                    write_spectrum_csv(out("spectrum_" + eng + "_" + pol_name(pol) + "_aoi" +
                                           detail::angle_token(a) + ".csv"),
                                       sp);
                }
        if (config.spec.variant != DbrVariant::Ict)
            write_stack_csv(out("stack.csv"), build_stack(config.spec));
    }

    if (config.tasks.count(Task::AngleMap)) {
        auto build_map = [&](const DbrSpec& ds, const std::string& eng, Pol pol) {
            AngleMap map;
            map.aoi_deg = angles;
            map.grid = grid;
            map.meta.engine = eng;
            map.meta.pol = pol;
            for (double a : angles)
                map.R.push_back(detail::compute_spectrum(ds, eng, grid, a, pol).R);
            return map;
        };
        for (const auto& eng : engines)
            for (Pol pol : pols) {
                write_anglemap_csv(out("anglemap_" + eng + "_" + pol_name(pol) + ".csv"),
                                   build_map(config.spec, eng, pol));
                if (config.baseline)
                    write_anglemap_csv(
                        out("anglemap_baseline_" + eng + "_" + pol_name(pol) + ".csv"),
                        build_map(*config.baseline, eng, pol));
            }
    }

    const double lam_diag = detail::diagnostics_wavelength(config.spec);
    if (config.tasks.count(Task::Diagnose)) {
        const auto cells = cell_profiles(config.spec, lam_diag, angles.front(), pols.front());
        write_cell_profiles_csv(out("cell_profiles.csv"), cells);
        const auto profile =
            profile_from_spec(config.spec, lam_diag, angles.front(), pols.front());
        const auto rep = rap_margin(profile);
        write_rap_csv(out("rap_report.csv"), rep);
        auto js = rap_summary_json(rep);
        js["lambda_nm"] = lam_diag;
        auto os = open_out(out("rap_summary.json"));
        os << js.dump(2) << '\n';
    }

    if (config.tasks.count(Task::Bloch)) {
        const auto profile =
            profile_from_spec(config.spec, lam_diag, angles.front(), pols.front());
        const auto traj = precess({0.0, 0.0, 1.0}, profile, 100);
        write_trajectory_csv(out("bloch_trajectory.csv"), traj);
    }

    if (config.tasks.count(Task::Pbg) || config.tasks.count(Task::Compare)) {
        nlohmann::json report;
        const auto sp =
            detail::compute_spectrum(config.spec, engines.front(), grid, angles.front(),
                                     pols.front());
        const auto bands = extract_pbg(sp);
        report["engine"] = engines.front();
        report["pol"] = pol_name(pols.front());
        report["aoi_deg"] = angles.front();
        report["bands"] = bands;
        if (const BandGap* p = principal_band(bands)) {
            report["principal_width_nm"] = p->width_nm;
            report["principal_center_nm"] = band_center_nm(*p);
        }
        if (config.baseline && config.tasks.count(Task::Compare)) {
            const auto bsp = detail::compute_spectrum(*config.baseline, engines.front(), grid,
                                                      angles.front(), pols.front());
            const auto bbands = extract_pbg(bsp);
            report["baseline_bands"] = bbands;
            const BandGap* bp = principal_band(bbands);
            if (bp && !bands.empty()) {
                report["baseline_width_nm"] = bp->width_nm;
                report["broadening_nm"] = pbg_broadening(sp, bsp);
                // transmission maxima on the bands bordering the baseline gap
                const FreqInterval upper{bp->f_high + 1.0, bp->f_high + 11.0};
                const FreqInterval lower{bp->f_low - 11.0, bp->f_low - 1.0};
                report["suppression"] = {
                    {"upper_band_THz", {upper.f_low, upper.f_high}},
                    {"upper", resonance_suppression(sp, bsp, upper)},
                    {"lower_band_THz", {lower.f_low, lower.f_high}},
                    {"lower", resonance_suppression(sp, bsp, lower)}};
            }
        }
        auto os = open_out(out("pbg_report.json"));
        os << report.dump(2) << '\n';
    }

    std::sort(files.begin(), files.end());
    return files;
}

}  // namespace adbr

#endif  // ADBR_RUNNER_HPP
