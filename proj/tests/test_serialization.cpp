#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "adbr/runner.hpp"
#include "adbr/serialization.hpp"

using namespace adbr;
using Catch::Approx;

namespace
{
std::string slurp(const std::filesystem::path& p)
{
    std::ifstream is(p);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}
}  // namespace

TEST_CASE("DbrSpec JSON round trip is the identity for every variant")
{
    std::vector<DbrSpec> specs;
    {
        DbrSpec s;
        s.variant = DbrVariant::Normal;
        s.cell_count = 21;
        specs.push_back(s);
        s.variant = DbrVariant::Chirped;
        s.d1_nm = 10;
        s.chirp_nm = 10;
        s.cell_count = 39;
        specs.push_back(s);
        DbrSpec i;
        i.variant = DbrVariant::Ict;
        i.cell_count = 21;
        i.theta_max_deg = 0.05;
        i.slice_count = 48;
        i.h_eff_nm = 5000;
        i.tilt_mode = TiltMode::Geometric;
        i.tilt_h_nm = 4000;
        i.tilt_l_nm = 10;
        specs.push_back(i);
    }
    for (const auto& s : specs) {
        nlohmann::json j = s;
        const auto back = j.get<DbrSpec>();
        nlohmann::json j2 = back;
        CHECK(j == j2);
    }
}

TEST_CASE("RunConfig JSON round trip is the identity")
{
    RunConfig c = preset("cdbr-d10");
    c.aoi = {0.0, 80.0, 17};
    c.pol = PolChoice::Both;
    c.engine = Engine::Both;
    c.output_dir = "some/dir";
    nlohmann::json j = c;
    const auto back = j.get<RunConfig>();
    nlohmann::json j2 = back;
    CHECK(j == j2);

    // single-angle form serializes as a bare number
    RunConfig c2 = preset("normal-n39");
    nlohmann::json j3 = c2;
    CHECK(j3["aoi"].is_number());
    CHECK(j3.get<RunConfig>().aoi.steps == 1);
}

TEST_CASE("LayerStack JSON and CSV exports")
{
    DbrSpec s;
    s.variant = DbrVariant::Chirped;
    s.d1_nm = 10;
    s.chirp_nm = 10;
    s.cell_count = 3;
    const auto st = build_stack(s);
    nlohmann::json j = st;
    const auto back = j.get<LayerStack>();
    REQUIRE(back.layers.size() == st.layers.size());
    CHECK(back.ambient_n == st.ambient_n);
    CHECK(back.layers[4].thickness_nm == st.layers[4].thickness_nm);

    const auto dir = std::filesystem::temp_directory_path() / "adbr_ser_test";
    std::filesystem::create_directories(dir);
    write_stack_csv((dir / "stack.csv").string(), st);
    const auto text = slurp(dir / "stack.csv");
    CHECK(text.rfind("n,thickness_nm\n", 0) == 0);
    CHECK(text.find("2.5,10\n") != std::string::npos);
    CHECK(text.find("1.5,390\n") != std::string::npos);
}

TEST_CASE("spectrum CSV carries the pinned header and 12-significant-digit values")
{
    Spectrum sp;
    sp.grid = SpectralGrid::from_frequencies({100.0, 200.0, 400.0});
    sp.R = {0.123456789012345, 1.0 / 3.0, 1.0};
    sp.T = {1 - 0.123456789012345, 2.0 / 3.0, 0.0};
    const auto dir = std::filesystem::temp_directory_path() / "adbr_ser_test";
    std::filesystem::create_directories(dir);
    write_spectrum_csv((dir / "spec.csv").string(), sp);
    const auto text = slurp(dir / "spec.csv");
    CHECK(text.rfind("freq_THz,wavelength_nm,R,T\n", 0) == 0);
    CHECK(text.find("0.123456789012") != std::string::npos);   // 12 significant digits
    CHECK(text.find("0.333333333333") != std::string::npos);
    CHECK(text.find("2997.92458") != std::string::npos);        // c/100
}

TEST_CASE("g12 formatting is stable and deterministic")
{
    CHECK(g12(0.04) == "0.04");
    CHECK(g12(1.0 / 3.0) == "0.333333333333");
    CHECK(g12(299792.458) == "299792.458");
    CHECK(g12(1e-12) == "1e-12");
}
