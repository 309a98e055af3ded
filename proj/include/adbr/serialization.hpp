#ifndef ADBR_SERIALIZATION_HPP
#define ADBR_SERIALIZATION_HPP

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "adbr/analysis.hpp"
#include "adbr/bloch.hpp"
#include "adbr/diagnostics.hpp"
#include "adbr/geometry.hpp"
#include "adbr/tmm.hpp"

namespace adbr
{

// Fixed float formatting (12 significant digits) so re-runs are byte-identical.
inline std::string g12(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::ofstream open_out(const std::string& path)
{
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    return os;
}

// ------------------------------------------------------------------ JSON

inline void to_json(nlohmann::json& j, const DbrSpec& s)
{
    j = nlohmann::json{{"variant", variant_name(s.variant)},
                       {"period_nm", s.period_nm},
                       {"d1_nm", s.d1_nm},
                       {"N", s.cell_count},
                       {"delta_nm", s.chirp_nm},
                       {"theta_max_deg", s.theta_max_deg},
                       {"slice_count", s.slice_count},
                       {"h_eff_nm", s.h_eff_nm},
                       {"tilt_mode", s.tilt_mode == TiltMode::LinearRamp ? "linear" : "geometric"},
                       {"tilt_h_nm", s.tilt_h_nm},
                       {"tilt_l_nm", s.tilt_l_nm},
                       {"n1", s.n1},
                       {"n2", s.n2},
                       {"ambient_n", s.ambient_n},
                       {"substrate_n", s.substrate_n}};
}

inline void from_json(const nlohmann::json& j, DbrSpec& s)
{
    const std::string v = j.at("variant").get<std::string>();
    if (v == "normal")
        s.variant = DbrVariant::Normal;
    else if (v == "chirped")
        s.variant = DbrVariant::Chirped;
    else if (v == "ict")
        s.variant = DbrVariant::Ict;
    else
        throw std::invalid_argument("DbrSpec.variant must be normal|chirped|ict");
    s.period_nm = j.at("period_nm").get<double>();
    s.d1_nm = j.at("d1_nm").get<double>();
    s.cell_count = j.at("N").get<int>();
    s.chirp_nm = j.value("delta_nm", 0.0);
    s.theta_max_deg = j.value("theta_max_deg", 0.05);
    s.slice_count = j.value("slice_count", 32);
    s.h_eff_nm = j.value("h_eff_nm", 4000.0);
    s.tilt_mode = j.value("tilt_mode", std::string("linear")) == "geometric"
                      ? TiltMode::Geometric
                      : TiltMode::LinearRamp;
    s.tilt_h_nm = j.value("tilt_h_nm", 4000.0);
    s.tilt_l_nm = j.value("tilt_l_nm", 0.0);
    s.n1 = j.value("n1", 2.5);
    s.n2 = j.value("n2", 1.5);
    s.ambient_n = j.value("ambient_n", 1.0);
    s.substrate_n = j.value("substrate_n", 1.5);
}

inline void to_json(nlohmann::json& j, const LayerStack& s)
{
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& l : s.layers)
        layers.push_back({{"n", l.n}, {"thickness_nm", l.thickness_nm}});
    j = nlohmann::json{
        {"ambient_n", s.ambient_n}, {"substrate_n", s.substrate_n}, {"layers", layers}};
}

inline void from_json(const nlohmann::json& j, LayerStack& s)
{
    s.ambient_n = j.at("ambient_n").get<double>();
    s.substrate_n = j.at("substrate_n").get<double>();
    s.layers.clear();
    for (const auto& l : j.at("layers"))
        s.layers.push_back({l.at("n").get<double>(), l.at("thickness_nm").get<double>()});
}

inline void to_json(nlohmann::json& j, const BandGap& b)
{
    j = nlohmann::json{{"f_low_THz", b.f_low},        {"f_high_THz", b.f_high},
                       {"lambda_low_nm", b.lambda_low}, {"lambda_high_nm", b.lambda_high},
                       {"width_THz", b.width_thz},     {"width_nm", b.width_nm},
                       {"R_max", b.r_max},             {"center_nm", band_center_nm(b)}};
}

inline nlohmann::json rap_summary_json(const RapReport& rep)
{
    return nlohmann::json{{"max_ratio", rep.summary.max_ratio},
                          {"autoresonant_span", {rep.summary.span_begin, rep.summary.span_end}},
                          {"end_decoupling",
                           {rep.summary.end_ratio_first, rep.summary.end_ratio_last}}};
}

// ------------------------------------------------------------------- CSV

inline void write_spectrum_csv(const std::string& path, const Spectrum& sp)
{
    auto os = open_out(path);
    os << "freq_THz,wavelength_nm,R,T\n";
    for (std::size_t i = 0; i < sp.grid.size(); ++i)
        os << g12(sp.grid.freq_thz[i]) << ',' << g12(sp.grid.wavelength_nm[i]) << ','
           << g12(sp.R[i]) << ',' << g12(sp.T[i]) << '\n';
}

inline void write_anglemap_csv(const std::string& path, const AngleMap& map)
{
    auto os = open_out(path);
    os << "aoi_deg,freq_THz,R\n";
    for (std::size_t row = 0; row < map.aoi_deg.size(); ++row)
        for (std::size_t i = 0; i < map.grid.size(); ++i)
            os << g12(map.aoi_deg[row]) << ',' << g12(map.grid.freq_thz[i]) << ','
               << g12(map.R[row][i]) << '\n';
}

inline void write_stack_csv(const std::string& path, const LayerStack& st)
{
    auto os = open_out(path);
    os << "n,thickness_nm\n";
    for (const auto& l : st.layers) os << g12(l.n) << ',' << g12(l.thickness_nm) << '\n';
}

inline void write_cell_profiles_csv(const std::string& path,
                                    const std::vector<CellParams>& cells)
{
    auto os = open_out(path);
    os << "M,d1M_nm,n_bar,kappa_abs_per_nm,delta_beta_per_nm\n";
    for (const auto& c : cells)
        os << c.M << ',' << g12(c.d1M_nm) << ',' << g12(c.n_bar) << ','
           << g12(std::abs(c.kappa)) << ',' << g12(c.delta_beta) << '\n';
}

inline void write_rap_csv(const std::string& path, const RapReport& rep)
{
    auto os = open_out(path);
    os << "M,lhs,rhs,ratio,autoresonance_ratio\n";
    for (const auto& c : rep.cells)
        os << c.M << ',' << g12(c.lhs) << ',' << g12(c.rhs) << ',' << g12(c.ratio) << ','
           << g12(c.autoresonance_ratio) << '\n';
}

inline void write_trajectory_csv(const std::string& path,
                                 const std::vector<TrajectoryPoint>& traj)
{
    auto os = open_out(path);
    os << "z_nm,Sx,Sy,Sz,eta\n";
    for (const auto& p : traj)
        os << g12(p.z_nm) << ',' << g12(p.s.x) << ',' << g12(p.s.y) << ',' << g12(p.s.z)
           << ',' << g12(conversion_fraction(p.s)) << '\n';
}

}  // namespace adbr

#endif  // ADBR_SERIALIZATION_HPP
