#ifndef ADBR_BLOCH_HPP
#define ADBR_BLOCH_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "adbr/common.hpp"
#include "adbr/coupled_mode.hpp"

namespace adbr
{

struct StokesVector
{
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

// The fictitious field the state precesses about. A global phase of kappa
// only rotates the field inside the x-y plane and leaves the z dynamics
// unchanged, so the magnitude |kappa| is used and the picture stays planar.
struct FictitiousField
{
    double bx = 0.0;
    double by = 0.0;
    double bz = 0.0;

    double magnitude() const { return std::sqrt(bx * bx + by * by + bz * bz); }
};

inline FictitiousField field_for(const CmCell& cell)
{
    return {std::abs(cell.kappa), 0.0, -cell.delta_k};
}

// S_x = a_i a_r* + a_r a_i*, S_y = -i [a_i a_r* - a_r a_i*],
// S_z = |a_i|^2 - |a_r|^2, on power-normalized amplitudes.
inline StokesVector stokes_from_amplitudes(const ModeAmplitudes& a)
{
    const double power = std::norm(a.a_i) + std::norm(a.a_r);
    if (power <= 0.0)
        throw std::invalid_argument("stokes_from_amplitudes: zero-power state");
    const cplx w = a.a_i * std::conj(a.a_r);
    StokesVector s;
    s.x = 2.0 * w.real() / power;
    s.y = 2.0 * w.imag() / power;
    s.z = (std::norm(a.a_i) - std::norm(a.a_r)) / power;
    return s;
}

// Reflected-power fraction |a_r|^2 / (|a_i|^2 + |a_r|^2) = (1 - S_z) / 2.
inline double conversion_fraction(const StokesVector& s) { return (1.0 - s.z) / 2.0; }

// Forward-power fraction (1 + S_z) / 2, the complementary quantity.
inline double forward_fraction(const StokesVector& s) { return (1.0 + s.z) / 2.0; }

namespace detail
{
// Exact axis-angle (Rodrigues) rotation of s about axis b by angle
// |b| * dz; preserves |s| by construction.
inline StokesVector rotate_about(const StokesVector& s, const FictitiousField& b, double dz)
{
    const double mag = b.magnitude();
    if (mag == 0.0) return s;
    const double ang = mag * dz;
    const double ux = b.bx / mag, uy = b.by / mag, uz = b.bz / mag;
    const double c = std::cos(ang), si = std::sin(ang);
    const double dot = ux * s.x + uy * s.y + uz * s.z;
    // u x s
    const double cx = uy * s.z - uz * s.y;
    const double cy = uz * s.x - ux * s.z;
    const double cz = ux * s.y - uy * s.x;
    StokesVector out;
    out.x = s.x * c + cx * si + ux * dot * (1.0 - c);
    out.y = s.y * c + cy * si + uy * dot * (1.0 - c);
    out.z = s.z * c + cz * si + uz * dot * (1.0 - c);
    return out;
}
}  // namespace detail

struct TrajectoryPoint
{
    double z_nm = 0.0;
    StokesVector s;
};

// Integrates dS/dz = B(z) x S through the profile with exact per-substep
// rotations; returns the sampled trajectory including the start point.
inline std::vector<TrajectoryPoint> precess(const StokesVector& s0, const CmProfile& profile,
                                            int steps_per_cell)
{
    if (steps_per_cell < 1)
        throw std::invalid_argument("precess: steps_per_cell must be >= 1");
    std::vector<TrajectoryPoint> traj;
    traj.reserve(profile.cells.size() * steps_per_cell + 1);
    double z = 0.0;
    StokesVector s = s0;
    traj.push_back({z, s});
    for (const auto& cell : profile.cells) {
        const FictitiousField b = field_for(cell);
        const double dz = cell.length_nm / steps_per_cell;
        for (int k = 0; k < steps_per_cell; ++k) {
            s = detail::rotate_about(s, b, dz);
            z += dz;
            traj.push_back({z, s});
        }
    }
    return traj;
}

// Amplitude-level form of the same dynamics: U(dz) = exp(+i (sigma.B) dz/2)
// with B = (|kappa|, 0, -delta_k). Its image under stokes_from_amplitudes is
// exactly the precession dS/dz = B x S, which makes the two routes mutually
// checkable. (The contradirectional propagator of coupled_mode conserves
// |a_i|^2 - |a_r|^2 instead and follows a different, hyperbolic path.)
inline ModeAmplitudes evolve_amplitudes(const ModeAmplitudes& a, cplx kappa, double delta_k,
                                        double dz_nm)
{
    const double bx = std::abs(kappa);
    const double bz = -delta_k;
    const double mag = std::sqrt(bx * bx + bz * bz);
    if (mag == 0.0) return a;
    const double phi = mag * dz_nm / 2.0;
    const double c = std::cos(phi), si = std::sin(phi);
    const cplx i(0.0, 1.0);
    const cplx u11 = c + i * (bz / mag) * si;
    const cplx u12 = i * (bx / mag) * si;
    const cplx u22 = c - i * (bz / mag) * si;
    return {u11 * a.a_i + u12 * a.a_r, u12 * a.a_i + u22 * a.a_r};
}

}  // namespace adbr

#endif  // ADBR_BLOCH_HPP
