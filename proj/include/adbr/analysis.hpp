#ifndef ADBR_ANALYSIS_HPP
#define ADBR_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "adbr/common.hpp"
#include "adbr/tmm.hpp"

namespace adbr
{

struct BandGap
{
    double f_low = 0.0;       // THz
    double f_high = 0.0;      // THz
    double lambda_low = 0.0;  // nm (short-wavelength edge = high-frequency edge)
    double lambda_high = 0.0; // nm
    double width_thz = 0.0;
    double width_nm = 0.0;
    double r_max = 0.0;
};

inline double band_center_nm(const BandGap& b) { return 0.5 * (b.lambda_low + b.lambda_high); }

// Photonic bandgaps located by the reflectivity-drop rule: a band is a
// maximal contiguous run with R >= drop_fraction * max(R) ("R has dropped by
// 90%" marks the edge at 90% of the in-band maximum). Edges are refined by
// linear interpolation between grid points; runs shorter than 3 grid points
// are discarded as noise.
inline std::vector<BandGap> extract_pbg(const Spectrum& sp, double drop_fraction = 0.9)
{
    if (sp.grid.size() < 10)
        throw std::invalid_argument("extract_pbg: grid needs >= 10 points");
    if (drop_fraction <= 0.0 || drop_fraction >= 1.0)
        throw std::invalid_argument("extract_pbg: drop_fraction must be in (0, 1)");
    const auto& f = sp.grid.freq_thz;
    const auto& R = sp.R;
    const double rmax = *std::max_element(R.begin(), R.end());
    std::vector<BandGap> bands;
    if (rmax <= 0.0) return bands;
    const double thr = drop_fraction * rmax;

    const std::size_t n = R.size();
    std::size_t i = 0;
    while (i < n) {
        if (R[i] < thr) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && R[j + 1] >= thr) ++j;
        if (j - i + 1 >= 3) {
            BandGap b;
            b.f_low = i == 0 ? f.front()
                             : f[i - 1] + (thr - R[i - 1]) / (R[i] - R[i - 1]) * (f[i] - f[i - 1]);
            b.f_high = j == n - 1
                           ? f.back()
                           : f[j] + (thr - R[j]) / (R[j + 1] - R[j]) * (f[j + 1] - f[j]);
            b.lambda_low = freq_to_wavelength(b.f_high);
            b.lambda_high = freq_to_wavelength(b.f_low);
            b.width_thz = b.f_high - b.f_low;
            b.width_nm = b.lambda_high - b.lambda_low;
            b.r_max = *std::max_element(R.begin() + i, R.begin() + j + 1);
            bands.push_back(b);
        }
        i = j + 1;
    }
    return bands;
}

// The dominant gap: widest in wavelength. Null when the list is empty.
// The pointer aims into the argument, so temporaries are rejected.
inline const BandGap* principal_band(const std::vector<BandGap>& bands)
{
    const BandGap* best = nullptr;
    for (const auto& b : bands)
        if (!best || b.width_nm > best->width_nm) best = &b;
    return best;
}
const BandGap* principal_band(std::vector<BandGap>&&) = delete;

// Width change (nm) of the principal band of candidate relative to baseline.
inline double pbg_broadening(const Spectrum& candidate, const Spectrum& baseline,
                             double drop_fraction = 0.9)
{
    const auto cb = extract_pbg(candidate, drop_fraction);
    const auto bb = extract_pbg(baseline, drop_fraction);
    const BandGap* c = principal_band(cb);
    const BandGap* b = principal_band(bb);
    if (!c || !b)
        throw std::invalid_argument("pbg_broadening: spectrum has no band");
    return c->width_nm - b->width_nm;
}

struct FreqInterval
{
    double f_low = 0.0;
    double f_high = 0.0;
};

// max T of candidate minus max T of baseline over the band; negative means
// the candidate suppresses transmission resonances there.
inline double resonance_suppression(const Spectrum& candidate, const Spectrum& baseline,
                                    FreqInterval band)
{
    if (candidate.grid.size() != baseline.grid.size())
        throw std::invalid_argument("resonance_suppression: spectra must share a grid");
    double tc = -1.0, tb = -1.0;
    for (std::size_t i = 0; i < candidate.grid.size(); ++i) {
        const double fi = candidate.grid.freq_thz[i];
        if (fi < band.f_low || fi > band.f_high) continue;
        tc = std::max(tc, candidate.T[i]);
        tb = std::max(tb, baseline.T[i]);
    }
    if (tc < 0.0 || tb < 0.0)
        throw std::invalid_argument("resonance_suppression: band contains no grid point");
    return tc - tb;
}

namespace detail
{
inline std::vector<FreqInterval> intersect_interval_lists(const std::vector<FreqInterval>& a,
                                                          const std::vector<FreqInterval>& b)
{
    std::vector<FreqInterval> out;
    for (const auto& x : a)
        for (const auto& y : b) {
            const double lo = std::max(x.f_low, y.f_low);
            const double hi = std::min(x.f_high, y.f_high);
            if (hi > lo) out.push_back({lo, hi});
        }
    return out;
}
}  // namespace detail

// Frequency intervals that stay inside a PBG for every angle of incidence up
// to aoi_limit and for both polarizations.
inline std::vector<FreqInterval> omnidirectional_bands(const AngleMap& te, const AngleMap& tm,
                                                       double drop_fraction = 0.9,
                                                       double aoi_limit_deg = 90.0)
{
    if (te.grid.size() != tm.grid.size() || te.aoi_deg != tm.aoi_deg)
        throw std::invalid_argument("omnidirectional_bands: maps must share grids");
    bool first = true;
    std::vector<FreqInterval> common;
    auto fold_row = [&](const AngleMap& map, std::size_t row) {
        Spectrum sp;
        sp.grid = map.grid;
        sp.R = map.R[row];
        sp.T.assign(map.grid.size(), 0.0);
        std::vector<FreqInterval> bands;
        for (const auto& b : extract_pbg(sp, drop_fraction))
            bands.push_back({b.f_low, b.f_high});
        if (first) {
            common = std::move(bands);
            first = false;
        } else {
            common = detail::intersect_interval_lists(common, bands);
        }
    };
    for (std::size_t row = 0; row < te.aoi_deg.size(); ++row) {
        if (te.aoi_deg[row] > aoi_limit_deg) continue;
        fold_row(te, row);
        fold_row(tm, row);
    }
    return common;
}

}  // namespace adbr

#endif  // ADBR_ANALYSIS_HPP
