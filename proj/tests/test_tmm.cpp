#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "adbr/tmm.hpp"

using namespace adbr;
using Catch::Approx;

namespace
{
LayerStack quarter_wave_mirror(int pairs, double lam0)
{
    LayerStack st;
    for (int i = 0; i < pairs; ++i) {
        st.layers.push_back({2.5, lam0 / (4.0 * 2.5)});
        st.layers.push_back({1.5, lam0 / (4.0 * 1.5)});
    }
    return st;
}

// Independent closed form: at the design wavelength each quarter-wave layer
// inverts the admittance, Y -> q^2 / Y, so the whole mirror reduces to a
// recursion from the substrate up.
double quarter_wave_oracle(const LayerStack& st)
{
    double y = st.substrate_n;
    for (auto it = st.layers.rbegin(); it != st.layers.rend(); ++it) y = it->n * it->n / y;
    const double r = (st.ambient_n - y) / (st.ambient_n + y);
    return r * r;
}

LayerStack normal_dbr(int n)
{
    LayerStack st;
    for (int i = 0; i < n; ++i) {
        st.layers.push_back({2.5, 200.0});
        st.layers.push_back({1.5, 200.0});
    }
    return st;
}
}  // namespace

TEST_CASE("layer_matrix: zero thickness is the identity")
{
    const auto m = layer_matrix(2.5, 0.0, 1500.0, 17.0, 1.0, Pol::TM);
    CHECK(std::abs(m.m11 - 1.0) < 1e-15);
    CHECK(std::abs(m.m12) < 1e-15);
    CHECK(std::abs(m.m21) < 1e-15);
    CHECK(std::abs(m.m22 - 1.0) < 1e-15);
}

TEST_CASE("layer_matrix: half-wave layer is minus the identity")
{
    // phi = pi: n d = lambda / 2 at normal incidence
    const auto m = layer_matrix(2.0, 500.0, 2000.0, 0.0, 1.0, Pol::TE);
    CHECK(std::abs(m.m11 + 1.0) < 1e-12);
    CHECK(std::abs(m.m22 + 1.0) < 1e-12);
    CHECK(std::abs(m.m12) < 1e-12);
    CHECK(std::abs(m.m21) < 1e-12);
}

TEST_CASE("layer_matrix: quarter-wave reference matrix")
{
    // n=2.5, d=200, lambda=2000 -> phi = pi/2
    const auto m = layer_matrix(2.5, 200.0, 2000.0, 0.0, 1.0, Pol::TE);
    CHECK(std::abs(m.m11) < 1e-12);
    CHECK(std::abs(m.m22) < 1e-12);
    CHECK(std::abs(m.m12 - cplx(0.0, 1.0 / 2.5)) < 1e-12);
    CHECK(std::abs(m.m21 - cplx(0.0, 2.5)) < 1e-12);
}

TEST_CASE("layer_matrix: finite at exactly the layer critical angle")
{
    // ambient 2.0 at 30 deg puts the transverse index at exactly 1.0
    for (Pol pol : {Pol::TE, Pol::TM}) {
        const auto m = layer_matrix(1.0, 250.0, 1000.0, 30.0, 2.0, pol);
        CHECK(std::isfinite(m.m12.imag()));
        CHECK(std::abs(m.det() - 1.0) < 1e-12);
        // consistent with the limit of a slightly detuned angle
        const auto near = layer_matrix(1.0, 250.0, 1000.0, 29.9999, 2.0, pol);
        CHECK(std::abs(m.m12 - near.m12) < 1e-3);
    }
}

TEST_CASE("layer_matrix: unit determinant, including the evanescent branch")
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> un(1.0, 3.0), ud(5.0, 400.0), ua(0.0, 89.0);
    for (int i = 0; i < 200; ++i) {
        const double n = un(rng);
        // ambient denser than the layer now and then -> complex cos(theta)
        const double n0 = i % 3 == 0 ? n + 0.5 : 1.0;
        const auto m =
            layer_matrix(n, ud(rng), 1200.0, ua(rng), n0, i % 2 ? Pol::TE : Pol::TM);
        CHECK(std::abs(m.det() - 1.0) < 1e-12);
    }
}

TEST_CASE("stack_response: bare interface gives the Fresnel value")
{
    LayerStack st;  // ambient 1.0, substrate 1.5
    for (double lam : {400.0, 1550.0, 3000.0}) {
        const auto r = stack_response(st, lam, 0.0, Pol::TE);
        CHECK(r.R == Approx(0.04).margin(1e-12));
        CHECK(r.R + r.T == Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("stack_response: index-matched layer is invisible")
{
    LayerStack st;
    st.layers.push_back({1.5, 333.0});
    for (double lam : {500.0, 1234.5, 2800.0}) {
        const auto r = stack_response(st, lam, 0.0, Pol::TE);
        CHECK(r.R == Approx(0.04).margin(1e-12));
    }
}

TEST_CASE("stack_response: quarter-wave mirror matches the analytic oracle")
{
    const auto st = quarter_wave_mirror(10, 2000.0);
    const auto resp = stack_response(st, 2000.0, 0.0, Pol::TE);
    CHECK(std::abs(resp.R - quarter_wave_oracle(st)) < 1e-8);
    CHECK(resp.R > 0.9999);
}

TEST_CASE("stack_response: energy conservation across random lossless stacks")
{
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> un(1.0, 3.0), ud(10.0, 500.0), ua(0.0, 89.0);
    for (int trial = 0; trial < 50; ++trial) {
        LayerStack st;
        st.substrate_n = un(rng);
        const int nl = 1 + trial % 7;
        for (int i = 0; i < nl; ++i) st.layers.push_back({un(rng), ud(rng)});
        const double aoi = ua(rng);
        for (Pol pol : {Pol::TE, Pol::TM}) {
            const auto r = stack_response(st, 1100.0, aoi, pol);
            CHECK(r.R + r.T == Approx(1.0).margin(1e-10));
            CHECK(r.R >= 0.0);
            CHECK(r.R <= 1.0);
        }
    }
}

TEST_CASE("stack_response: total internal reflection beyond the substrate critical angle")
{
    LayerStack st;
    st.ambient_n = 1.5;
    st.substrate_n = 1.0;
    st.layers.push_back({2.0, 150.0});
    // critical angle asin(1/1.5) = 41.8 deg
    const auto r = stack_response(st, 900.0, 60.0, Pol::TE);
    CHECK(r.R == Approx(1.0).margin(1e-12));
    CHECK(r.T == Approx(0.0).margin(1e-12));
}

TEST_CASE("stack_response: reciprocity under layer reversal")
{
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> un(1.0, 3.0), ud(10.0, 500.0);
    for (int trial = 0; trial < 20; ++trial) {
        LayerStack st;
        st.ambient_n = 1.0;
        st.substrate_n = 1.7;
        for (int i = 0; i < 5; ++i) st.layers.push_back({un(rng), ud(rng)});
        LayerStack rev;
        rev.ambient_n = st.substrate_n;
        rev.substrate_n = st.ambient_n;
        rev.layers.assign(st.layers.rbegin(), st.layers.rend());
        for (Pol pol : {Pol::TE, Pol::TM}) {
            const double Ra = stack_response(st, 1300.0, 20.0, pol).R;
            // the transverse wavevector must match: n0 sin(a0) = n0' sin(a0')
            const double aoi_rev =
                rad2deg(std::asin(st.ambient_n * std::sin(deg2rad(20.0)) / rev.ambient_n));
            const double Rb = stack_response(rev, 1300.0, aoi_rev, pol).R;
            CHECK(Ra == Approx(Rb).margin(1e-10));
        }
    }
}

TEST_CASE("stack_response: scale invariance of Maxwell's equations")
{
    const auto st = normal_dbr(8);
    const double R1 = stack_response(st, 1650.0, 33.0, Pol::TM).R;
    for (double s : {0.5, 2.0, 7.25}) {
        LayerStack scaled = st;
        for (auto& l : scaled.layers) l.thickness_nm *= s;
        CHECK(stack_response(scaled, 1650.0 * s, 33.0, Pol::TM).R == Approx(R1).margin(1e-10));
    }
}

TEST_CASE("spectrum: TE and TM coincide at normal incidence")
{
    const auto st = normal_dbr(39);
    const auto grid = SpectralGrid::uniform(100.0, 800.0, 500);
    const auto te = spectrum(st, grid, 0.0, Pol::TE);
    const auto tm = spectrum(st, grid, 0.0, Pol::TM);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(std::abs(te.R[i] - tm.R[i]) < 1e-12);
}

TEST_CASE("spectrum: single-point grid equals stack_response; empty stack is flat Fresnel")
{
    const auto st = normal_dbr(5);
    const auto g1 = SpectralGrid::from_frequencies({181.776});
    const auto sp = spectrum(st, g1, 0.0, Pol::TE);
    REQUIRE(sp.R.size() == 1);
    CHECK(sp.R[0] ==
          Approx(stack_response(st, freq_to_wavelength(181.776), 0.0, Pol::TE).R));

    LayerStack empty;
    const auto flat = spectrum(empty, SpectralGrid::uniform(100, 800, 64), 0.0, Pol::TE);
    for (double r : flat.R) CHECK(r == Approx(0.04).margin(1e-12));
}

TEST_CASE("spectrum: normal DBR reflects maximally near the Bragg frequency")
{
    const auto st = normal_dbr(39);
    const auto sp = spectrum(st, default_grid(), 0.0, Pol::TE);
    // R at 181.8 THz (lambda = 2 n_bar period = 1649 nm) saturates
    std::size_t i_bragg = 0;
    for (std::size_t i = 0; i < sp.grid.size(); ++i)
        if (std::abs(sp.grid.freq_thz[i] - 181.776) <
            std::abs(sp.grid.freq_thz[i_bragg] - 181.776))
            i_bragg = i;
    CHECK(sp.R[i_bragg] > 0.99999);
}

TEST_CASE("angle_map: single row equals the spectrum")
{
    const auto st = normal_dbr(9);
    const auto grid = SpectralGrid::uniform(120, 400, 200);
    const auto map = angle_map(st, grid, {25.0}, Pol::TM);
    REQUIRE(map.R.size() == 1);
    const auto sp = spectrum(st, grid, 25.0, Pol::TM);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(map.R[0][i] == sp.R[i]);
}

TEST_CASE("ict_averaged_spectrum: degenerate cases reduce to the normal DBR")
{
    DbrSpec ict;
    ict.variant = DbrVariant::Ict;
    ict.cell_count = 21;
    ict.theta_max_deg = 0.05;
    const auto grid = SpectralGrid::uniform(150, 250, 300);

    DbrSpec normal;
    normal.variant = DbrVariant::Normal;
    normal.cell_count = 21;
    const auto ref = spectrum(build_stack(normal), grid, 0.0, Pol::TE);

    SECTION("slice_count = 1 samples the untilted mid-plane")
    {
        ict.slice_count = 1;
        const auto sp = ict_averaged_spectrum(ict, grid, 0.0, Pol::TE);
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(sp.R[i] == Approx(ref.R[i]).margin(1e-13));
    }
    SECTION("zero tilt is the normal DBR for any slice count")
    {
        ict.theta_max_deg = 0.0;
        ict.slice_count = 16;
        const auto sp = ict_averaged_spectrum(ict, grid, 0.0, Pol::TE);
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(sp.R[i] == Approx(ref.R[i]).margin(1e-13));
    }
}
