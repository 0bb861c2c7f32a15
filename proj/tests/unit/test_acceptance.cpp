#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "kravchuk/acceptance.hpp"
#include "kravchuk/errors.hpp"

using namespace kravchuk;

namespace {

AcceptanceConfig small_config() {
    AcceptanceConfig cfg;
    cfg.spectrum_N = {4, 20};
    cfg.gram_N = {2, 20};
    cfg.ladder_N = 20;
    cfg.adjoint_pairs = 10;
    cfg.transform_N = {2, 16};
    cfg.unitarity_N = {16, 32};
    cfg.identity_N = 16;
    cfg.rho_N = {50, 100, 200};
    cfg.phi_N = {40, 80, 160};
    cfg.consistency_N = {64, 128};
    cfg.evolve_N = 40;
    return cfg;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("default thresholds") {
    const Tolerances t;
    CHECK(t.eigen_residual == 1e-10);
    CHECK(t.spectrum == 1e-8);
    CHECK(t.gram == 1e-10);
    CHECK(t.ladder == 1e-11);
    CHECK(t.adjoint == 1e-12);
    CHECK(t.factorization == 1e-10);
    CHECK(t.transform_diff == 1e-9);
    CHECK(t.unitarity == 1e-10);
    CHECK(t.identity == 1e-10);
    CHECK(t.rho_slope_lo == -1.15);
    CHECK(t.rho_slope_hi == -0.85);
    CHECK(t.phi_slope_lo == -1.2);
    CHECK(t.phi_slope_hi == -0.8);
    CHECK(t.r2_min == 0.98);
    CHECK(t.drift == 1e-11);
    CHECK(t.revival == 1e-12);
    CHECK(t.evolve_variation == 0.2);
    CHECK(t.poly == 1e-10);
    CHECK(t.rodrigues == 1e-14);
    CHECK(t.pearson == 1e-13);
    CHECK(t.dense_expm == 1e-8);
    CHECK(t.wall_seconds == 300.0);
    CHECK(AcceptanceConfig{}.seed == 0x5EED);
}

TEST_CASE("tolerance overrides") {
    Tolerances t;
    t.set("gram", 1e-3);
    CHECK(t.gram == 1e-3);
    CHECK_THROWS_AS(t.set("nonsense", 1.0), ConfigError);
    CHECK_THROWS_AS(t.set("gram", std::nan("")), ConfigError);
}

TEST_CASE("seeded uniform stream is fixed") {
    SeededUniform a(kDefaultSeed), b(kDefaultSeed), c(1);
    for (int i = 0; i < 5; ++i) {
        const double x = a();
        CHECK(x == b());
        CHECK(x >= -1.0);
        CHECK(x < 1.0);
    }
    CHECK(a() != c());
    CHECK(norm_l2(SeededUniform(3).unit_vector(Grid(10))) == doctest::Approx(1.0));
}

TEST_CASE("identity suite on small grids") {
    const auto report = run_identity_suite(small_config());
    REQUIRE(report.criteria.size() == 5);
    for (const auto& c : report.criteria) {
        INFO(c.name << ": " << c.detail);
        CHECK(c.passed);
    }
}

TEST_CASE("a failing threshold is reported") {
    auto cfg = small_config();
    cfg.tol.gram = 0.0;
    cfg.gram_N = {20};
    const auto r = check_orthonormality(cfg);
    // the residual at N = 20 is not exactly zero
    CHECK_FALSE(r.passed);
    AcceptanceReport report;
    report.criteria.push_back(r);
    CHECK_FALSE(report.all_passed());
    CHECK(report.failures().size() == 1);
}

TEST_CASE("run_all writes one csv per experiment and a summary row per criterion") {
    auto cfg = small_config();
    cfg.out_dir = std::filesystem::temp_directory_path() / "kravchuk_acceptance_test";
    std::filesystem::remove_all(cfg.out_dir);
    const auto report = run_all(cfg);
    REQUIRE(report.criteria.size() == 10);
    for (int i = 0; i < 10; ++i) CHECK(report.criteria[static_cast<std::size_t>(i)].id == i + 1);
    for (const char* f : {"rho.csv", "phi.csv", "consistency.csv", "rho_profile.csv", "phi_profiles.csv", "evolve.csv",
                          "summary.csv"}) {
        CHECK(std::filesystem::exists(cfg.out_dir / f));
    }
    const auto summary = slurp(cfg.out_dir / "summary.csv");
    CHECK(summary.find("# seed=0x5eed") != std::string::npos);
    CHECK(summary.find("criterion,name,status,seconds,detail\n") != std::string::npos);
    std::size_t rows = 0;
    std::istringstream in(summary);
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line[0] != '#' && line.rfind("criterion", 0) != 0) ++rows;
    }
    CHECK(rows == 10);

    const auto rho1 = slurp(cfg.out_dir / "rho.csv");
    run_all(cfg);
    CHECK(slurp(cfg.out_dir / "rho.csv") == rho1);
    std::filesystem::remove_all(cfg.out_dir);

    auto empty = small_config();
    empty.rho_N.clear();
    CHECK_THROWS_AS(run_all(empty), ConfigError);
}
