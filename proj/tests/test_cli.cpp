#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "isohyp/cli.hpp"

using namespace isohyp;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code = 0;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "isohyp");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Result r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir() {
    const fs::path d = fs::temp_directory_path() / ("isohyp_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

// Runs the installed binary; returns its exit status.
int run_binary(const std::string& args, const fs::path& stdout_file) {
    const char* bin = std::getenv("ISOHYP_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "ISOHYP_BIN is not set");
    const std::string cmd = std::string(bin) + " " + args + " > " + stdout_file.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("profile") {
    const auto r = run({"profile", "--n", "3", "--density", "cosh:1", "--v-grid", "0.1:10:25"});
    REQUIRE(r.code == kExitOk);
    const auto L = lines(r.out);
    REQUIRE(L.size() == 26);
    CHECK(L[0] == "v,tau,Pf");
    double prev = -1.0;
    for (std::size_t i = 1; i < L.size(); ++i) {
        const double tau = std::stod(L[i].substr(L[i].find(',') + 1));
        CHECK(tau > prev);
        prev = tau;
    }
}

TEST_CASE("shoot") {
    const fs::path dir = scratch_dir();
    const auto r = run({"shoot", "--n", "3", "--density", "cosh:1", "--tau-star", "1", "--lambda-rel", "1.0",
                        "--csv", (dir / "traj.csv").string(), "--events", (dir / "events.json").string()});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("classification") == "CenteredCircle");
    CHECK(j.at("closed") == true);
    CHECK(j.contains("functionals"));
    const auto csv = lines(slurp(dir / "traj.csv"));
    CHECK(csv.at(0) == "u,s,t,alpha,rho,kappa_gamma,kappa_C,H1,Hf");
    CHECK(csv.size() > 100);
    CHECK(nlohmann::json::parse(slurp(dir / "events.json")).is_array());

    const auto c = run({"shoot", "--n", "3", "--density", "cosh:1", "--tau-star", "1", "--lambda-rel", "1.1"});
    REQUIRE(c.code == kExitOk);
    CHECK(nlohmann::json::parse(c.out).at("classification") == "CurlSequence");
    fs::remove_all(dir);
}

TEST_CASE("verify") {
    const auto r = run({"verify", "--suite", "kappa", "--seed", "7", "--count", "30"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("suites").at("kappa_comparison").at("passed") == 30);
    CHECK(j.at("seed") == 7);
}

TEST_CASE("minimize") {
    const fs::path dir = scratch_dir();
    const auto r = run({"minimize", "--n", "3", "--density", "cosh:1", "--tau", "1", "--init", "translated",
                        "--modes", "12", "--history", (dir / "hist.csv").string()});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("converged") == true);
    CHECK(std::abs(j.at("deficit").get<double>()) < 1e-8);
    CHECK(lines(slurp(dir / "hist.csv")).at(0) == "iter,Pf");
    fs::remove_all(dir);
}

TEST_CASE("hopf") {
    const auto r = run({"hopf", "--spaces", "C:2,O:2", "--tau", "0.5,1"});
    REQUIRE(r.code == kExitOk);
    const auto L = lines(r.out);
    REQUIRE(L.size() == 5);
    CHECK(L[1].rfind("C,2,", 0) == 0);
    CHECK(L[4].rfind("O,2,16,8,1,", 0) == 0);
}

TEST_CASE("config file overrides flags") {
    const fs::path dir = scratch_dir();
    {
        std::ofstream cfg(dir / "cfg.json");
        cfg << R"({"n": 2, "density": {"family": "cosh", "params": [3]}, "v-grid": "1:2:3"})";
    }
    const auto r = run({"profile", "--n", "3", "--density", "cosh:1", "--v-grid", "0.1:10:25", "--config",
                        (dir / "cfg.json").string()});
    REQUIRE(r.code == kExitOk);
    const auto L = lines(r.out);
    REQUIRE(L.size() == 4);
    // n = 2, cosh^3: Vf = 2 pi (cosh^4 tau - 1) / 4 inverted at v = 1.
    const double tau = std::stod(L[1].substr(L[1].find(',') + 1));
    const double v = 2 * 3.14159265358979323846 * (std::pow(std::cosh(tau), 4) - 1) / 4;
    CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
    fs::remove_all(dir);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == kExitUsage);
    const auto u = run({"frobnicate"});
    CHECK(u.code == kExitUsage);
    CHECK(u.err.find("Usage") != std::string::npos);
    CHECK(run({"profile", "--bogus-flag", "1"}).code == kExitUsage);
    CHECK(run({"profile", "--density", "gauss:1"}).code == kExitValidation);
    CHECK(run({"profile", "--n", "abc"}).code == kExitValidation);
    CHECK(run({"minimize", "--density", "quad:0"}).code == kExitValidation);
    CHECK(run({"verify", "--suite", "nope"}).code == kExitValidation);
    CHECK(run({"hopf", "--spaces", "O:3"}).code == kExitValidation);
    CHECK(run({"shoot", "--tau-star", "-1"}).code == kExitValidation);
    CHECK(run({"profile", "--config", "/nonexistent/cfg.json"}).code == kExitValidation);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("binary: exit codes and bitwise determinism") {
    const fs::path dir = scratch_dir();
    CHECK(run_binary("", dir / "a") == kExitUsage);
    CHECK(run_binary("profile --density nope:1", dir / "a") == kExitValidation);
    CHECK(run_binary("verify --suite h1 --seed 3 --count 40 --jobs 1", dir / "a") == kExitOk);
    CHECK(run_binary("verify --suite h1 --seed 3 --count 40 --jobs 4", dir / "b") == kExitOk);
    CHECK(slurp(dir / "a") == slurp(dir / "b"));
    CHECK(!slurp(dir / "a").empty());
    CHECK(run_binary("minimize --init random --seed 5 --modes 8", dir / "c") == kExitOk);
    CHECK(run_binary("minimize --init random --seed 5 --modes 8", dir / "d") == kExitOk);
    CHECK(slurp(dir / "c") == slurp(dir / "d"));
    CHECK(run_binary("hopf --jobs 3 --out " + (dir / "h1.csv").string(), dir / "e") == kExitOk);
    CHECK(run_binary("hopf --jobs 1 --out " + (dir / "h2.csv").string(), dir / "e") == kExitOk);
    CHECK(slurp(dir / "h1.csv") == slurp(dir / "h2.csv"));
    fs::remove_all(dir);
}
