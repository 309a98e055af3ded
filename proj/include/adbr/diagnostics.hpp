#ifndef ADBR_DIAGNOSTICS_HPP
#define ADBR_DIAGNOSTICS_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "adbr/coupled_mode.hpp"

namespace adbr
{

struct RapCell
{
    int M = 0;
    double lhs = 0.0;    // |kappa d(dk)/dz - dk d(kappa)/dz|, nm^-2
    double rhs = 0.0;    // (|kappa|^2 + dk^2)^(3/2), nm^-2; the sweep-rate bound
    double ratio = 0.0;  // lhs / rhs
    double autoresonance_ratio = 0.0;  // |delta_beta| / |kappa| = 2|dk| / |kappa|
};

struct RapSummary
{
    double max_ratio = 0.0;
    int span_begin = -1;  // longest contiguous run with autoresonance_ratio < 2
    int span_end = -1;    // inclusive; -1/-1 when no cell qualifies
    double end_ratio_first = 0.0;
    double end_ratio_last = 0.0;
};

struct RapReport
{
    std::vector<RapCell> cells;
    RapSummary summary;
};

// Per-cell |delta_beta| / |kappa|; cells with negligible kappa report +inf.
inline std::vector<double> autoresonance_profile(const CmProfile& profile)
{
    std::vector<double> out;
    out.reserve(profile.cells.size());
    for (const auto& c : profile.cells) {
        const double k = std::abs(c.kappa);
        out.push_back(k < 1e-15 ? std::numeric_limits<double>::infinity()
                                : 2.0 * std::abs(c.delta_k) / k);
    }
    return out;
}

// Adiabaticity margin along the profile. Derivatives are central differences
// on cell-center values, one-sided at the ends, with dz = cell length.
inline RapReport rap_margin(const CmProfile& profile)
{
    const std::size_t n = profile.cells.size();
    if (n < 3) throw std::invalid_argument("rap_margin: needs >= 3 cells");
    std::vector<double> k(n), dk(n);
    for (std::size_t i = 0; i < n; ++i) {
        k[i] = std::abs(profile.cells[i].kappa);
        dk[i] = profile.cells[i].delta_k;
    }
    const auto ar = autoresonance_profile(profile);

    RapReport rep;
    rep.cells.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double dz = profile.cells[i].length_nm;
        double dkd, kd;
        if (i == 0) {
            dkd = (dk[1] - dk[0]) / dz;
            kd = (k[1] - k[0]) / dz;
        } else if (i == n - 1) {
            dkd = (dk[n - 1] - dk[n - 2]) / dz;
            kd = (k[n - 1] - k[n - 2]) / dz;
        } else {
            dkd = (dk[i + 1] - dk[i - 1]) / (2.0 * dz);
            kd = (k[i + 1] - k[i - 1]) / (2.0 * dz);
        }
        RapCell cell;
        cell.M = static_cast<int>(i);
        cell.lhs = std::abs(k[i] * dkd - dk[i] * kd);
        cell.rhs = std::pow(k[i] * k[i] + dk[i] * dk[i], 1.5);
        cell.ratio = cell.rhs > 0.0 ? cell.lhs / cell.rhs
                                    : std::numeric_limits<double>::infinity();
        cell.autoresonance_ratio = ar[i];
        rep.cells.push_back(cell);
        rep.summary.max_ratio = std::max(rep.summary.max_ratio, cell.ratio);
    }

    // longest contiguous autoresonant run
    int best_len = 0, cur_begin = -1, cur_len = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (ar[i] < 2.0) {
            if (cur_len == 0) cur_begin = static_cast<int>(i);
            ++cur_len;
            if (cur_len > best_len) {
                best_len = cur_len;
                rep.summary.span_begin = cur_begin;
                rep.summary.span_end = static_cast<int>(i);
            }
        } else {
            cur_len = 0;
        }
    }
    rep.summary.end_ratio_first = ar.front();
    rep.summary.end_ratio_last = ar.back();
    return rep;
}

// Whether the modes are decoupled (|delta_beta / kappa| above threshold) at
// the entry and exit faces.
inline std::pair<bool, bool> end_decoupling(const CmProfile& profile, double threshold = 10.0)
{
    if (profile.cells.empty())
        throw std::invalid_argument("end_decoupling: needs >= 1 cell");
    const auto ar = autoresonance_profile(profile);
    return {ar.front() > threshold, ar.back() > threshold};
}

}  // namespace adbr

#endif  // ADBR_DIAGNOSTICS_HPP
