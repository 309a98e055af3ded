#ifndef ADBR_GEOMETRY_HPP
#define ADBR_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "adbr/common.hpp"

namespace adbr
{

// A dispersionless dielectric; n is held constant across the whole grid.
struct Material
{
    std::string name;
    double n = 1.0;

    void validate() const
    {
        if (n < 1.0)
            throw std::invalid_argument("Material " + name +
                                        ": stack media need n >= 1");
    }
};

struct Layer
{
    double n = 1.0;
    double thickness_nm = 0.0;
};

// Finite 1-D stack between two half-spaces. Layers are listed in the order
// the incident wave meets them (ambient side first).
struct LayerStack
{
    double ambient_n = 1.0;
    double substrate_n = 1.5;
    std::vector<Layer> layers;

    double total_thickness() const
    {
        double t = 0.0;
        for (const auto& l : layers) t += l.thickness_nm;
        return t;
    }
};

enum class DbrVariant { Normal, Chirped, Ict };

// How the per-cell boundary tilt angle of an ICT stack is parameterized:
// LinearRamp sweeps -theta_max..+theta_max; Geometric evaluates
// cot(theta_M) = h / ((d1/2) - M*l) from the declared h and l.
enum class TiltMode { LinearRamp, Geometric };

inline const char* variant_name(DbrVariant v)
{
    switch (v) {
        case DbrVariant::Normal: return "normal";
        case DbrVariant::Chirped: return "chirped";
        default: return "ict";
    }
}

struct DbrSpec
{
    DbrVariant variant = DbrVariant::Normal;
    double period_nm = 400.0;     // unit-cell period Lambda
    double d1_nm = 200.0;         // first-layer base thickness
    int cell_count = 1;           // N
    double chirp_nm = 0.0;        // per-cell chirp delta (Chirped)
    double theta_max_deg = 0.05;  // tilt ramp amplitude (Ict, LinearRamp)
    int slice_count = 32;         // transverse slices for the Ict average
    double h_eff_nm = 4000.0;     // declared transverse extent (Ict)
    TiltMode tilt_mode = TiltMode::LinearRamp;
    double tilt_h_nm = 4000.0;    // h of the geometric tilt relation
    double tilt_l_nm = 0.0;       // per-cell thickness change at y = h
    double n1 = 2.5;
    double n2 = 1.5;
    double ambient_n = 1.0;
    double substrate_n = 1.5;

    void set_materials(const Material& a, const Material& b)
    {
        a.validate();
        b.validate();
        n1 = a.n;
        n2 = b.n;
    }

    void validate() const;
};

inline void DbrSpec::validate() const
{
    if (cell_count < 1) throw std::invalid_argument("DbrSpec: N must be >= 1");
    if (period_nm <= 0) throw std::invalid_argument("DbrSpec: period must be positive");
    if (n1 < 1.0 || n2 < 1.0)
        throw std::invalid_argument("DbrSpec: refractive indices must be >= 1");
    if (ambient_n <= 0 || substrate_n <= 0)
        throw std::invalid_argument("DbrSpec: bounding media indices must be positive");
    switch (variant) {
        case DbrVariant::Normal:
            if (d1_nm < 0 || d1_nm > period_nm)
                throw std::invalid_argument("DbrSpec: Normal requires 0 <= d1 <= period");
            break;
        case DbrVariant::Chirped:
            for (int M = 0; M < cell_count; ++M) {
                const double d1M = d1_nm + M * chirp_nm;
                if (d1M <= 0 || d1M >= period_nm)
                    throw std::invalid_argument(
                        "DbrSpec: chirped cell " + std::to_string(M) +
                        " has layer thickness outside (0, period): d1M = " +
                        std::to_string(d1M) + " nm");
            }
            break;
        case DbrVariant::Ict:
            if (std::abs(theta_max_deg) >= 90.0)
                throw std::invalid_argument("DbrSpec: |theta_max| must be < 90 deg");
            if (slice_count < 1)
                throw std::invalid_argument("DbrSpec: slice_count must be >= 1");
            if (tilt_mode == TiltMode::Geometric && tilt_h_nm == 0.0)
                throw std::invalid_argument(
                    "DbrSpec: geometric tilt with h = 0 is degenerate (theta = 90 deg)");
            break;
    }
}

// Per-cell coupled-mode quantities at one wavelength/angle/polarization.
struct CellParams
{
    int M = 0;
    double d1M_nm = 0.0;
    double d2M_nm = 0.0;
    double n_bar = 1.0;
    cplx kappa{0.0, 0.0};     // nm^-1, purely imaginary for real dielectrics
    double delta_beta = 0.0;  // nm^-1
    double delta_k = 0.0;     // nm^-1, = delta_beta / 2
};

// Duty-cycle-weighted RMS average index of one unit cell.
inline double cell_average_index(double d1M, double period, double n1, double n2)
{
    const double d2M = period - d1M;
    return std::sqrt((d1M * n1 * n1 + d2M * n2 * n2) / period);
}

// Uniform-grating coupling coefficient, valid for d1 = d2. theta is the
// propagation angle against the stack axis.
inline cplx kappa_uniform(double n1, double n2, double lambda_nm, double theta_deg, Pol pol)
{
    if (lambda_nm <= 0) throw std::invalid_argument("kappa_uniform: lambda must be positive");
    if (std::abs(theta_deg) >= 90.0)
        throw std::invalid_argument("kappa_uniform: theta = 90 deg divides by zero");
    const double th = deg2rad(theta_deg);
    const double ct = std::cos(th);
    double mag = std::sqrt(2.0) * (n1 * n1 - n2 * n2) /
                 (lambda_nm * ct * std::sqrt(n1 * n1 + n2 * n2));
    if (pol == Pol::TM) mag *= std::cos(2.0 * th);
    return cplx(0.0, mag);
}

// Duty-cycle-dependent coupling of one cell; contrast = n1^2 - n2^2.
inline cplx kappa_cell(double d1M, double period, double lambda_nm, double contrast,
                       double n_bar)
{
    const double mag = (1.0 - std::cos(2.0 * pi * d1M / period)) * contrast /
                       (2.0 * lambda_nm * n_bar);
    return cplx(0.0, mag);
}

// Tilt angle of cell M in degrees. LinearRamp: -theta_max at M=0 up to
// +theta_max at M=N-1. Geometric: theta = atan(((d1/2) - M*l) / h).
inline double tilt_profile(const DbrSpec& spec, int M)
{
    if (M < 0 || M >= spec.cell_count)
        throw std::invalid_argument("tilt_profile: cell index out of range");
    if (spec.tilt_mode == TiltMode::LinearRamp) {
        if (spec.cell_count == 1) return 0.0;
        const double t = static_cast<double>(M) / (spec.cell_count - 1);
        return -spec.theta_max_deg + 2.0 * spec.theta_max_deg * t;
    }
    const double offset = spec.d1_nm / 2.0 - M * spec.tilt_l_nm;
    return rad2deg(std::atan2(offset, spec.tilt_h_nm));
}

// Assembles the finite stack for the Normal and Chirped variants. Ict stacks
// exist only slice-by-slice; use build_ict_slice.
inline LayerStack build_stack(const DbrSpec& spec)
{
    spec.validate();
    if (spec.variant == DbrVariant::Ict)
        throw std::invalid_argument("build_stack: Ict stacks are built per slice");
    LayerStack st;
    st.ambient_n = spec.ambient_n;
    st.substrate_n = spec.substrate_n;
    st.layers.reserve(2 * spec.cell_count);
    for (int M = 0; M < spec.cell_count; ++M) {
        const double d1M =
            spec.variant == DbrVariant::Chirped ? spec.d1_nm + M * spec.chirp_nm : spec.d1_nm;
        const double d2M = spec.period_nm - d1M;
        if (d1M < 0 || d2M < 0)
            throw std::invalid_argument("build_stack: cell " + std::to_string(M) +
                                        " has a negative layer thickness");
        st.layers.push_back({spec.n1, d1M});
        st.layers.push_back({spec.n2, d2M});
    }
    return st;
}

struct IctSlice
{
    LayerStack stack;
    std::vector<int> clamped_cells;  // cells whose thickness hit [0, period]
};

// 1-D cut of the tilted-boundary geometry at transverse position y_frac in
// [0,1]. The boundary pivots about the cell's mid-height, so the mid-plane
// slice (y_frac = 0.5) is the untilted stack; cell boundaries stay flat.
inline IctSlice build_ict_slice(const DbrSpec& spec, double y_frac)
{
    spec.validate();
    if (spec.variant != DbrVariant::Ict)
        throw std::invalid_argument("build_ict_slice: spec is not an Ict variant");
    if (y_frac < 0.0 || y_frac > 1.0)
        throw std::invalid_argument("build_ict_slice: y_frac must be in [0, 1]");
    IctSlice out;
    out.stack.ambient_n = spec.ambient_n;
    out.stack.substrate_n = spec.substrate_n;
    out.stack.layers.reserve(2 * spec.cell_count);
    for (int M = 0; M < spec.cell_count; ++M) {
        const double th = deg2rad(tilt_profile(spec, M));
        double d1M = spec.d1_nm + (y_frac - 0.5) * spec.h_eff_nm * std::tan(th);
        if (d1M < 0.0 || d1M > spec.period_nm) {
            d1M = std::clamp(d1M, 0.0, spec.period_nm);
            out.clamped_cells.push_back(M);
        }
        out.stack.layers.push_back({spec.n1, d1M});
        out.stack.layers.push_back({spec.n2, spec.period_nm - d1M});
    }
    return out;
}

// Per-cell (n_bar, kappa, delta_beta, delta_k) profile of a DBR at one
// wavelength, angle of incidence, and polarization. At normal incidence this
// is the verbatim closed form; obliquely the detuning and coupling pick up
// the internal angle in the cell-average medium.
inline std::vector<CellParams> cell_profiles(const DbrSpec& spec, double lambda_nm,
                                             double aoi_deg, Pol pol)
{
    spec.validate();
    if (lambda_nm <= 0) throw std::invalid_argument("cell_profiles: lambda must be positive");
    const double contrast = spec.n1 * spec.n1 - spec.n2 * spec.n2;
    const double s = spec.ambient_n * std::sin(deg2rad(aoi_deg));
    std::vector<CellParams> out;
    out.reserve(spec.cell_count);
    for (int M = 0; M < spec.cell_count; ++M) {
        CellParams p;
        p.M = M;
        if (spec.variant == DbrVariant::Chirped)
            p.d1M_nm = spec.d1_nm + M * spec.chirp_nm;
        else
            p.d1M_nm = spec.d1_nm;
        p.d2M_nm = spec.period_nm - p.d1M_nm;
        p.n_bar = cell_average_index(p.d1M_nm, spec.period_nm, spec.n1, spec.n2);

        const double sin_int = s / p.n_bar;
        if (sin_int >= 1.0)
            throw std::invalid_argument(
                "cell_profiles: incidence beyond the cell-average critical angle");
        const double cos_int = std::sqrt(1.0 - sin_int * sin_int);
        const double theta_int = std::asin(sin_int);
        const double beta = 2.0 * pi * p.n_bar / lambda_nm;

        if (spec.variant == DbrVariant::Ict) {
            // kappa stays (nearly) constant along z; the tilt sweeps the detuning
            const double th_tilt = deg2rad(tilt_profile(spec, M));
            p.kappa = kappa_uniform(spec.n1, spec.n2, lambda_nm, rad2deg(theta_int), pol);
            p.delta_beta =
                2.0 * beta * cos_int * std::cos(th_tilt) - 2.0 * pi / spec.period_nm;
        } else {
            cplx k = kappa_cell(p.d1M_nm, spec.period_nm, lambda_nm, contrast, p.n_bar);
            double polfac = 1.0 / cos_int;
            if (pol == Pol::TM) polfac *= std::cos(2.0 * theta_int);
            p.kappa = k * polfac;
            p.delta_beta = 2.0 * beta * cos_int - 2.0 * pi / spec.period_nm;
        }
        p.delta_k = p.delta_beta / 2.0;
        out.push_back(p);
    }
    return out;
}

}  // namespace adbr

#endif  // ADBR_GEOMETRY_HPP
