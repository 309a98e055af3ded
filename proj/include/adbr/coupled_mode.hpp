#ifndef ADBR_COUPLED_MODE_HPP
#define ADBR_COUPLED_MODE_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "adbr/common.hpp"
#include "adbr/geometry.hpp"
#include "adbr/tmm.hpp"

namespace adbr
{

// Rotating-frame forward/backward amplitude pair. For the lossless
// contradirectional problem |a_i|^2 - |a_r|^2 is the conserved flux.
struct ModeAmplitudes
{
    cplx a_i{1.0, 0.0};
    cplx a_r{0.0, 0.0};
};

struct CmCell
{
    double length_nm = 0.0;
    cplx kappa{0.0, 0.0};  // nm^-1
    double delta_k = 0.0;  // nm^-1
};

struct CmProfile
{
    std::vector<CmCell> cells;

    double total_length() const
    {
        double L = 0.0;
        for (const auto& c : cells) L += c.length_nm;
        return L;
    }
};

inline CmProfile profile_from_spec(const DbrSpec& spec, double lambda_nm, double aoi_deg,
                                   Pol pol)
{
    CmProfile p;
    for (const auto& c : cell_profiles(spec, lambda_nm, aoi_deg, pol))
        p.cells.push_back({spec.period_nm, c.kappa, c.delta_k});
    return p;
}

// Exact transfer matrix exp(-i H d) of the constant-coefficient two-wave
// system with H = [[-dk, kappa], [-conj(kappa), dk]]. H^2 = (dk^2 - |k|^2) I,
// so the exponential closes in cos/cosh form; |kappa| = |dk| degenerates to
// the linear term.
inline Mat2c cell_propagator(cplx kappa, double delta_k, double d_nm)
{
    const double k2 = std::norm(kappa);
    const double disc = delta_k * delta_k - k2;
    double cosl, f;
    if (disc > 0.0) {
        const double s = std::sqrt(disc);
        cosl = std::cos(s * d_nm);
        f = std::sin(s * d_nm) / s;
    } else if (disc < 0.0) {
        const double g = std::sqrt(-disc);
        cosl = std::cosh(g * d_nm);
        f = std::sinh(g * d_nm) / g;
    } else {
        cosl = 1.0;
        f = d_nm;
    }
    const cplx i(0.0, 1.0);
    // exp(-iHd) = cos(s d) I - i f(d) H
    return {cosl + i * delta_k * f, -i * kappa * f, i * std::conj(kappa) * f,
            cosl - i * delta_k * f};
}

// Ordered product of cell propagators from the entry face to the exit face.
inline Mat2c propagate(const CmProfile& profile)
{
    if (profile.cells.empty())
        throw std::invalid_argument("propagate: profile needs >= 1 cell");
    Mat2c total;
    for (const auto& c : profile.cells)
        total = cell_propagator(c.kappa, c.delta_k, c.length_nm) * total;
    return total;
}

struct CmReflectivity
{
    double R = 0.0;
    cplx r{0.0, 0.0};  // rotating-frame backscattered amplitude
};

// Contradirectional boundary-value closure: unit forward input, no backward
// input at the exit face.
inline CmReflectivity reflectivity(const CmProfile& profile)
{
    const Mat2c T = propagate(profile);
    if (std::abs(T.m22) < 1e-14)
        throw std::runtime_error("reflectivity: singular boundary problem (|T22| ~ 0)");
    CmReflectivity out;
    out.r = -T.m21 / T.m22;
    out.R = std::norm(out.r);
    return out;
}

inline Spectrum cm_spectrum(const DbrSpec& spec, const SpectralGrid& grid, double aoi_deg,
                            Pol pol)
{
    Spectrum sp;
    sp.grid = grid;
    sp.R.resize(grid.size());
    sp.T.resize(grid.size());
    sp.meta.engine = "cm";
    sp.meta.aoi_deg = aoi_deg;
    sp.meta.pol = pol;
    detail::parallel_for_n(grid.size(), [&](std::size_t i) {
        const auto profile = profile_from_spec(spec, grid.wavelength_nm[i], aoi_deg, pol);
        sp.R[i] = reflectivity(profile).R;
        sp.T[i] = 1.0 - sp.R[i];
    });
    return sp;
}

}  // namespace adbr

#endif  // ADBR_COUPLED_MODE_HPP
