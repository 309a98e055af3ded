#ifndef ADBR_COMMON_HPP
#define ADBR_COMMON_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <thread>
#include <vector>

namespace adbr
{

using cplx = std::complex<double>;

// speed of light in nm*THz; ties the frequency and wavelength axes together
inline constexpr double c_nm_thz = 299792.458;

inline constexpr double pi = 3.141592653589793238462643383279502884;

enum class Pol { TE, TM };

inline const char* pol_name(Pol p) { return p == Pol::TE ? "TE" : "TM"; }

inline double deg2rad(double d) { return d * pi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / pi; }

inline double freq_to_wavelength(double f_thz) { return c_nm_thz / f_thz; }
inline double wavelength_to_freq(double lam_nm) { return c_nm_thz / lam_nm; }

// 2x2 complex matrix, row-major; the workhorse of both transfer formalisms
struct Mat2c
{
    cplx m11{1.0}, m12{0.0}, m21{0.0}, m22{1.0};

    static Mat2c identity() { return {}; }

    Mat2c operator*(const Mat2c& o) const
    {
        return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
                m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
    }

    cplx det() const { return m11 * m22 - m12 * m21; }
};

namespace detail
{
// Strided worker pool for pure per-index work. Each index writes its own
// slot, so the result is identical to the sequential loop regardless of
// scheduling. Small jobs stay on the calling thread.
template <typename Fn>
inline void parallel_for_n(std::size_t n, Fn&& fn)
{
    const std::size_t hw = std::thread::hardware_concurrency();
    if (n < 512 || hw < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t workers = hw < 8 ? hw : 8;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&fn, w, workers, n] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    for (auto& t : pool) t.join();
}
}  // namespace detail

}  // namespace adbr

#endif  // ADBR_COMMON_HPP
