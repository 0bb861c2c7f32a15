#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kravchuk_cli/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "kravchuk");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = kravchuk::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("help documents every flag and exits 0") {
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    for (const char* flag : {"--N", "--n", "--n-max", "--modes", "--sigma", "--t", "--out", "--f", "--tol", "--seed",
                             "--config", "basis", "rho", "phi", "consistency", "transform", "evolve", "check", "all"}) {
        INFO(flag);
        CHECK(r.out.find(flag) != std::string::npos);
    }
    CHECK(run({"--version"}).code == 0);
}

TEST_CASE("usage errors exit 2 with a synopsis on stderr") {
    for (const auto& args : std::vector<std::vector<std::string>>{{},
                                                                   {"rho", "--bogus"},
                                                                   {"frobnicate"},
                                                                   {"transform", "--N", "7"},
                                                                   {"rho", "--N", "100,50"},
                                                                   {"rho", "--N", "8,16"},
                                                                   {"rho", "--sigma", "3"},
                                                                   {"evolve", "--f", "nope"},
                                                                   {"evolve", "--N", "10", "--n-max", "11"},
                                                                   {"basis", "--N", "4", "--n", "5"},
                                                                   {"check", "--tol", "gram"},
                                                                   {"check", "--tol", "nonsense=1"},
                                                                   {"phi", "--N", "8,16", "--modes", "9"}}) {
        std::string joined;
        for (const auto& a : args) joined += a + " ";
        INFO(joined);
        const auto r = run(args);
        CHECK(r.code == 2);
        CHECK(r.err.find("Usage") != std::string::npos);
    }
}

TEST_CASE("rho writes the documented csv") {
    const auto dir = std::filesystem::temp_directory_path() / "kravchuk_cli_rho";
    std::filesystem::remove_all(dir);
    const auto r = run({"rho", "--N", "50,100,200", "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("N,h,err_l2,err_linf,err_h1\n") != std::string::npos);
    CHECK(r.out.find("# slope_l2=") != std::string::npos);
    std::ifstream in(dir / "rho.csv");
    std::stringstream s;
    s << in.rdbuf();
    CHECK(s.str() == r.out);
    std::filesystem::remove_all(dir);
}

TEST_CASE("subcommands") {
    const auto t = run({"transform", "--N", "16"});
    CHECK(t.code == 0);
    CHECK(t.out.find("N=16 unitarity_factored=") != std::string::npos);
    CHECK(t.out.find("direct_vs_factored_max=") != std::string::npos);

    const auto e = run({"evolve", "--f", "gaussian", "--N", "40", "--t", "0,1,10"});
    CHECK(e.code == 0);
    CHECK(e.out.find("t,error_l2,mass,energy\n") != std::string::npos);

    const auto b = run({"basis", "--N", "2"});
    CHECK(b.code == 0);
    CHECK(b.out.rfind("n,k0,k1,k2\n", 0) == 0);
    const auto bn = run({"basis", "--N", "4", "--n", "1"});
    CHECK(bn.code == 0);
    CHECK(bn.out.find("k,a,phi_h\n") != std::string::npos);

    const auto p = run({"phi", "--N", "20,40", "--modes", "0,2"});
    CHECK(p.code == 0);
    CHECK(p.out.find("n,N,h,err_l2,err_linf,err_h1\n") != std::string::npos);

    const auto c = run({"consistency", "--N", "64,128", "--f", "odd_bump"});
    CHECK(c.code == 0);
    CHECK(c.out.find("experiment=consistency:odd_bump") != std::string::npos);
}

TEST_CASE("check passes, and fails with exit 1 on an impossible tolerance") {
    const auto ok = run({"check"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("PASS [1]") != std::string::npos);
    const auto bad = run({"check", "--tol", "gram=0"});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("FAIL [2]") != std::string::npos);
}

TEST_CASE("config file values yield to flags") {
    const auto path = std::filesystem::temp_directory_path() / "kravchuk_cli_config.ini";
    {
        std::ofstream cfg(path);
        cfg << "N=\"40\"\nf=\"psi1\"\n";
    }
    const auto from_file = run({"--config", path.string(), "evolve", "--t", "0"});
    CHECK(from_file.code == 0);
    CHECK(from_file.out.find("function=psi1 N=40") != std::string::npos);
    const auto overridden = run({"--config", path.string(), "evolve", "--t", "0", "--N", "20"});
    CHECK(overridden.code == 0);
    CHECK(overridden.out.find("function=psi1 N=20") != std::string::npos);
    std::filesystem::remove(path);
}
