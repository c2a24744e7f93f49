#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rtxva/errors.hpp"
#include "rtxva/scenario.hpp"

using namespace rtxva;

namespace {

const char* kMinimalIrs = R"(
scale.k = 4
p1 = 0.9 0.08 0.017 0.003 ; 0.05 0.85 0.09 0.01 ; 0.01 0.09 0.8 0.1 ; 0 0 0 1
p2 = 0.8 0.1 0.05 0.05 ; 0.04 0.9 0.03 0.03 ; 0.015 0.1 0.7 0.185 ; 0 0 0 1
triggers = B:B D:D
instrument.type = irs
irs.tenor = 10
irs.freq = 4
rates.r0 = 0.05
rates.theta = 0.005
rates.alpha = 0.1
rates.sigma = 0.01
)";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("defaults are applied and echoed") {
    const Scenario sc = load_scenario(kMinimalIrs);
    CHECK(sc.n_paths == 200000);  // documented default
    CHECK(sc.seed == 20120512ULL);
    CHECK(sc.recovery.r1 == 0.4);
    CHECK(sc.recovery.rh1 == 1.0);
    CHECK(sc.measure.alpha1 == 0.0);
    CHECK(sc.mta == 0.0);
    CHECK(sc.margin_period == 0.0);
    CHECK(sc.call_freq == 4);  // quarterly for the IRS
    CHECK(sc.alphas == std::vector<double>{0.0});
    CHECK(sc.schemes.size() == 1);
    CHECK(sc.schemes[0] == CollateralScheme::None);
    CHECK(sc.x1_0 == 1);
    REQUIRE(sc.triggers.size() == 2);
    CHECK(sc.triggers[0].k1 == 2);
    CHECK(sc.triggers[1].k2 == 4);
}

TEST_CASE("the shipped configs parse and match the documented setup") {
    const Scenario irs = load_scenario_file(std::string(TEST_CONFIG_DIR) + "/irs_paper.cfg");
    CHECK(irs.instrument == Scenario::Instrument::Irs);
    CHECK(irs.irs.tenor == 10.0);
    CHECK(irs.irs.freq == 4);
    CHECK_FALSE(irs.irs.fixed_rate.has_value());  // par by default
    CHECK(irs.rates.r0 == 0.05);
    CHECK(irs.rates.sigma == 0.01);
    CHECK(irs.rates.long_run_mean() == doctest::Approx(0.05));
    CHECK(irs.alphas == std::vector<double>{0.0, 1.0});
    CHECK(irs.triggers.size() == 9);
    CHECK(irs.schemes.size() == 3);
    CHECK(irs.n_paths == 200000);

    const Scenario cds = load_scenario_file(std::string(TEST_CONFIG_DIR) + "/cds_paper.cfg");
    CHECK(cds.instrument == Scenario::Instrument::Cds);
    CHECK(cds.p3.has_value());
    CHECK(cds.call_freq == 12);  // monthly margining
    CHECK(cds.cds.reference_recovery == 0.4);
    CHECK_FALSE(cds.cds.spread.has_value());
}

TEST_CASE("parse errors carry line diagnostics") {
    CHECK_THROWS_WITH_AS(load_scenario("scale.k = 4\nbogus line\n"),
                         doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_WITH_AS(load_scenario("scale.k = 4\nscale.k = 4\n"),
                         doctest::Contains("duplicate"), ParseError);
    std::string cfg = kMinimalIrs;
    cfg += "\nunknown.key = 1\n";
    CHECK_THROWS_WITH_AS(load_scenario(cfg), doctest::Contains("unknown config key"), ParseError);
    std::string bad_number = kMinimalIrs;
    bad_number += "\nmc.paths = many\n";
    CHECK_THROWS_AS(load_scenario(bad_number), ParseError);
}

TEST_CASE("validation errors name the violated invariant") {
    // Trigger at the initial rating.
    std::string cfg(kMinimalIrs);
    const auto pos = cfg.find("triggers = B:B D:D");
    cfg.replace(pos, 18, "triggers = A:B D:D");
    CHECK_THROWS_AS(load_scenario(cfg), ValidationError);

    // Broken row sum in a matrix.
    std::string bad(kMinimalIrs);
    const auto p1pos = bad.find("p1 = 0.9");
    bad.replace(p1pos, 8, "p1 = 0.91");
    CHECK_THROWS_AS(load_scenario(bad), RowSumError);

    // A CDS scenario requires the reference matrix.
    std::string cds(kMinimalIrs);
    const auto inst = cds.find("instrument.type = irs");
    cds.replace(inst, 21, "instrument.type = cds");
    CHECK_THROWS_AS(load_scenario(cds), ParseError);
}

TEST_CASE("run_grid writes deterministic files") {
    std::string cfg(kMinimalIrs);
    cfg += "mc.paths = 1500\noutput.prefix = tiny\ncollateral.scheme = none linear\n";
    const Scenario sc = load_scenario(cfg);

    const std::filesystem::path dir_a = std::filesystem::temp_directory_path() / "rtxva_test_a";
    const std::filesystem::path dir_b = std::filesystem::temp_directory_path() / "rtxva_test_b";
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);

    RunOptions opt_a;
    opt_a.out_dir = dir_a.string();
    opt_a.threads = 1;
    std::ostringstream log_a;
    const RunResult res_a = run_grid(sc, opt_a, log_a);

    RunOptions opt_b;
    opt_b.out_dir = dir_b.string();
    opt_b.threads = 2;  // different worker count, identical bytes
    std::ostringstream log_b;
    const RunResult res_b = run_grid(sc, opt_b, log_b);

    REQUIRE(res_a.files_written.size() == res_b.files_written.size());
    CHECK(res_a.files_written.size() == 8);  // (csv + txt + 2 mitigation) x 2 schemes
    for (size_t i = 0; i < res_a.files_written.size(); ++i) {
        const std::string bytes_a = read_file(res_a.files_written[i]);
        const std::string bytes_b = read_file(res_b.files_written[i]);
        CHECK(bytes_a == bytes_b);
        CHECK_FALSE(bytes_a.empty());
    }

    // Provenance columns are frozen.
    const std::string csv = read_file(res_a.files_written[0]);
    CHECK(csv.find("scheme,alpha,k1,k2,n_paths,seed,ucva,ucva_se,dva,dva_se,cva,cva_se") !=
          std::string::npos);
    CHECK(csv.find("none,0,B,B,1500,20120512") != std::string::npos);

    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
}

TEST_CASE("config hash is stable") {
    CHECK(config_hash("abc") == config_hash("abc"));
    CHECK(config_hash("abc") != config_hash("abd"));
}

}  // TEST_SUITE
