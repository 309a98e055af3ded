#ifndef ADBR_TMM_HPP
#define ADBR_TMM_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "adbr/common.hpp"
#include "adbr/geometry.hpp"

namespace adbr
{

// Frequency grid; wavelengths are carried alongside, linked by c.
struct SpectralGrid
{
    std::vector<double> freq_thz;
    std::vector<double> wavelength_nm;

    static SpectralGrid from_frequencies(std::vector<double> f)
    {
        if (f.empty()) throw std::invalid_argument("SpectralGrid: needs >= 1 point");
        for (std::size_t i = 1; i < f.size(); ++i)
            if (f[i] <= f[i - 1])
                throw std::invalid_argument("SpectralGrid: frequencies must be strictly increasing");
        SpectralGrid g;
        g.wavelength_nm.reserve(f.size());
        for (double fi : f) {
            if (fi <= 0) throw std::invalid_argument("SpectralGrid: frequencies must be positive");
            g.wavelength_nm.push_back(freq_to_wavelength(fi));
        }
        g.freq_thz = std::move(f);
        return g;
    }

    static SpectralGrid uniform(double f_min_thz, double f_max_thz, int points)
    {
        if (points < 2) throw std::invalid_argument("SpectralGrid: uniform grid needs >= 2 points");
        if (f_min_thz >= f_max_thz)
            throw std::invalid_argument("SpectralGrid: f_min must be below f_max");
        std::vector<double> f(points);
        for (int i = 0; i < points; ++i)
            f[i] = f_min_thz + (f_max_thz - f_min_thz) * i / (points - 1);
        return from_frequencies(std::move(f));
    }

    std::size_t size() const { return freq_thz.size(); }
};

inline SpectralGrid default_grid() { return SpectralGrid::uniform(100.0, 800.0, 2000); }

struct SpectrumMeta
{
    std::string stack_id;
    std::string engine;  // "tmm" or "cm"
    double aoi_deg = 0.0;
    Pol pol = Pol::TE;
};

struct Spectrum
{
    SpectralGrid grid;
    std::vector<double> R;
    std::vector<double> T;
    SpectrumMeta meta;
};

struct AngleMap
{
    std::vector<double> aoi_deg;
    SpectralGrid grid;
    std::vector<std::vector<double>> R;  // one row per angle of incidence
    SpectrumMeta meta;                   // aoi_deg field unused here
};

// Characteristic matrix of a single homogeneous layer. The cosine of the
// internal angle is taken on the principal branch with Im >= 0, which fixes
// evanescent decay.
inline Mat2c layer_matrix(double n, double d_nm, double lambda_nm, double aoi_deg,
                          double ambient_n, Pol pol)
{
    const double s = ambient_n * std::sin(deg2rad(aoi_deg));
    cplx ct = std::sqrt(cplx(1.0 - (s / n) * (s / n), 0.0));
    if (ct.imag() < 0.0) ct = -ct;
    if (ct == cplx(0.0, 0.0)) {
        // exactly at the layer's critical angle: sin(phi)/q has a finite limit
        const double f = 2.0 * pi / lambda_nm * d_nm * (pol == Pol::TE ? 1.0 : n * n);
        return {1.0, cplx(0.0, f), 0.0, 1.0};
    }
    const cplx q = pol == Pol::TE ? n * ct : ct / n;
    const cplx phi = 2.0 * pi / lambda_nm * n * d_nm * ct;
    const cplx c = std::cos(phi);
    const cplx si = std::sin(phi);
    const cplx i(0.0, 1.0);
    return {c, i * si / q, i * q * si, c};
}

struct StackResponse
{
    cplx r{0.0, 0.0};
    double R = 0.0;
    double T = 0.0;
};

// Exact plane-wave reflection/transmission of a stratified stack via the
// characteristic-matrix closure with ambient/substrate admittances.
// Transmittance is computed independently from the transmission coefficient;
// R + T = 1 is left to hold (and be checked) rather than enforced.
inline StackResponse stack_response(const LayerStack& stack, double lambda_nm,
                                    double aoi_deg, Pol pol)
{
    if (lambda_nm <= 0) throw std::invalid_argument("stack_response: lambda must be positive");
    if (aoi_deg < 0.0 || aoi_deg >= 90.0)
        throw std::invalid_argument("stack_response: aoi must be in [0, 90)");
    Mat2c m;
    for (const auto& l : stack.layers)
        m = m * layer_matrix(l.n, l.thickness_nm, lambda_nm, aoi_deg, stack.ambient_n, pol);

    const double s = stack.ambient_n * std::sin(deg2rad(aoi_deg));
    const double ct_a = std::cos(deg2rad(aoi_deg));
    cplx ct_s = std::sqrt(cplx(1.0 - (s / stack.substrate_n) * (s / stack.substrate_n), 0.0));
    if (ct_s.imag() < 0.0) ct_s = -ct_s;
    const cplx qa = pol == Pol::TE ? cplx(stack.ambient_n * ct_a) : cplx(ct_a / stack.ambient_n);
    const cplx qs = pol == Pol::TE ? stack.substrate_n * ct_s : ct_s / stack.substrate_n;

    const cplx B = m.m11 + m.m12 * qs;
    const cplx C = m.m21 + m.m22 * qs;
    StackResponse out;
    out.r = (qa * B - C) / (qa * B + C);
    out.R = std::norm(out.r);
    const cplx t = 2.0 * qa / (qa * B + C);
    out.T = qs.real() / qa.real() * std::norm(t);  // zero beyond the substrate critical angle
    return out;
}

inline Spectrum spectrum(const LayerStack& stack, const SpectralGrid& grid, double aoi_deg,
                         Pol pol)
{
    Spectrum sp;
    sp.grid = grid;
    sp.R.resize(grid.size());
    sp.T.resize(grid.size());
    sp.meta.engine = "tmm";
    sp.meta.aoi_deg = aoi_deg;
    sp.meta.pol = pol;
    detail::parallel_for_n(grid.size(), [&](std::size_t i) {
        const auto resp = stack_response(stack, grid.wavelength_nm[i], aoi_deg, pol);
        sp.R[i] = resp.R;
        sp.T[i] = resp.T;
    });
    return sp;
}

inline AngleMap angle_map(const LayerStack& stack, const SpectralGrid& grid,
                          const std::vector<double>& aois, Pol pol)
{
    AngleMap map;
    map.aoi_deg = aois;
    map.grid = grid;
    map.meta.engine = "tmm";
    map.meta.pol = pol;
    map.R.reserve(aois.size());
    for (double a : aois) map.R.push_back(spectrum(stack, grid, a, pol).R);
    return map;
}

// Reflection spectrum of an ICT DBR approximated by a coherent average of the
// reflection amplitudes of slice_count transverse slices (a plane wave samples
// all transverse offsets; intensity averaging would erase the interference).
inline Spectrum ict_averaged_spectrum(const DbrSpec& spec, const SpectralGrid& grid,
                                      double aoi_deg, Pol pol)
{
    spec.validate();
    if (spec.variant != DbrVariant::Ict)
        throw std::invalid_argument("ict_averaged_spectrum: spec is not an Ict variant");
    std::vector<LayerStack> slices;
    slices.reserve(spec.slice_count);
    for (int k = 0; k < spec.slice_count; ++k)
        slices.push_back(build_ict_slice(spec, (k + 0.5) / spec.slice_count).stack);
    std::vector<cplx> acc(grid.size(), cplx(0.0, 0.0));
    detail::parallel_for_n(grid.size(), [&](std::size_t i) {
        for (const auto& slice : slices)
            acc[i] += stack_response(slice, grid.wavelength_nm[i], aoi_deg, pol).r;
    });
    Spectrum sp;
    sp.grid = grid;
    sp.R.resize(grid.size());
    sp.T.resize(grid.size());
    sp.meta.engine = "tmm";
    sp.meta.aoi_deg = aoi_deg;
    sp.meta.pol = pol;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        sp.R[i] = std::norm(acc[i] / static_cast<double>(spec.slice_count));
        sp.T[i] = 1.0 - sp.R[i];
    }
    return sp;
}

}  // namespace adbr

#endif  // ADBR_TMM_HPP
