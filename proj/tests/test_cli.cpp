#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

#ifndef CRITYPE_CLI_PATH
#error "CRITYPE_CLI_PATH must point at the command line binary"
#endif

using json = nlohmann::ordered_json;
using Catch::Approx;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

RunResult run_cli(const std::string& args, const std::string& input) {
    namespace fs = std::filesystem;
    static int counter = 0;
    const std::string tag =
        std::to_string(::getpid()) + "_" + std::to_string(counter++);
    const fs::path in = fs::temp_directory_path() / ("cli_in_" + tag);
    const fs::path out = fs::temp_directory_path() / ("cli_out_" + tag);
    const fs::path err = fs::temp_directory_path() / ("cli_err_" + tag);
    {
        std::ofstream f(in, std::ios::binary);
        f << input;
    }
    const std::string cmd = std::string(CRITYPE_CLI_PATH) + " " + args + " < " +
                            in.string() + " > " + out.string() + " 2> " + err.string();
    const int rc = std::system(cmd.c_str());
    RunResult r;
    if (rc >= 0 && WIFEXITED(rc)) r.exit_code = WEXITSTATUS(rc);
    r.out = slurp(out);
    r.err = slurp(err);
    fs::remove(in);
    fs::remove(out);
    fs::remove(err);
    return r;
}

const char* kLattice = R"({"atoms": [{"angle": 0, "mass": 1}, {"angle": 3.141592653589793, "mass": 1}]})";
const char* kEquilateral = R"({"atoms": [{"angle": 0, "mass": 1},
                                         {"angle": 2.0943951023931953, "mass": 1},
                                         {"angle": 4.1887902047863905, "mass": 1}]})";

}  // namespace

TEST_CASE("analyze reports the critical type of a symmetric atom pair") {
    const auto r = run_cli("analyze", kLattice);
    REQUIRE(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep.at("sigma_u").get<double>() == Approx(kPi).margin(1e-9));
    CHECK(rep.at("radius").get<double>() == Approx(kPi).margin(1e-9));
    CHECK(rep.at("case").get<std::string>() == "1");
    CHECK(rep.at("contact_args").size() == 2);
    CHECK(rep.at("measure").at("atoms").size() == 2);
    CHECK(rep.at("options").at("grid").get<int>() == 720);
    CHECK(!rep.contains("warnings"));
}

TEST_CASE("analyze rejects malformed input") {
    const auto r = run_cli("analyze", "this is not json");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("error:") != std::string::npos);
    CHECK(run_cli("analyze", "{\"atoms\": [{\"mass\": 1}]}").exit_code == 2);
}

TEST_CASE("unknown keys produce warnings but do not fail") {
    const auto r = run_cli(
        "analyze", R"({"atoms": [{"angle": 0, "mass": 1}], "typo": true})");
    REQUIRE(r.exit_code == 0);
    CHECK(r.err.find("warning:") != std::string::npos);
    CHECK(r.err.find("typo") != std::string::npos);
    const json rep = json::parse(r.out);
    REQUIRE(rep.contains("warnings"));
    CHECK(!rep.at("warnings").empty());
}

TEST_CASE("certify reports the uniqueness margin on both sides") {
    const auto below = run_cli("certify --sigma 3.0", kLattice);
    REQUIRE(below.exit_code == 0);
    const json b = json::parse(below.out);
    CHECK(b.at("certified").get<bool>());
    CHECK(b.at("margin").get<double>() > 0.0);
    CHECK(b.at("sigma_u").get<double>() == Approx(kPi).margin(1e-9));

    const auto above = run_cli("certify --sigma 3.3", kLattice);
    REQUIRE(above.exit_code == 0);
    const json a = json::parse(above.out);
    CHECK(!a.at("certified").get<bool>());
    CHECK(a.at("margin").get<double>() < 0.0);
}

TEST_CASE("analyze output feeds certify unchanged") {
    const auto first = run_cli("analyze", kEquilateral);
    REQUIRE(first.exit_code == 0);
    const auto second = run_cli("certify --sigma 3.5", first.out);
    REQUIRE(second.exit_code == 0);
    CHECK(second.err.find("warning:") == std::string::npos);
    const json rep = json::parse(second.out);
    CHECK(!rep.contains("warnings"));
    CHECK(rep.at("sigma_u").get<double>() ==
          Approx(2.0 * kPi / std::sqrt(3.0)).margin(1e-9));
    CHECK(rep.at("case").get<std::string>() == "2");
    CHECK(rep.at("certified").get<bool>());
}

TEST_CASE("generate is deterministic per seed") {
    const char* mixed = R"({"atoms": [{"angle": 0, "mass": 0.5}],
                            "density": [{"lo": 1, "hi": 2, "value": 0.3}]})";
    const auto a = run_cli("generate --rmax 40 --seed 7", mixed);
    const auto b = run_cli("generate --rmax 40 --seed 7", mixed);
    const auto c = run_cli("generate --rmax 40 --seed 8", mixed);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
    const json rep = json::parse(a.out);
    CHECK(!rep.at("points").empty());
}

TEST_CASE("generate of the zero measure is empty") {
    const auto r = run_cli("generate --rmax 10", "{}");
    REQUIRE(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep.at("points").empty());
}

TEST_CASE("degree mode converts angles at the boundary") {
    const char* deg = R"({"atoms": [{"angle": 0, "mass": 1}, {"angle": 180, "mass": 1}]})";
    const auto r = run_cli("analyze --degrees", deg);
    REQUIRE(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep.at("sigma_u").get<double>() == Approx(kPi).margin(1e-9));
    // the body is the vertical segment, so it meets its circle at 90 and 270
    const auto& args = rep.at("contact_args");
    REQUIRE(args.size() == 2);
    const double lo = std::min(args[0].get<double>(), args[1].get<double>());
    const double hi = std::max(args[0].get<double>(), args[1].get<double>());
    CHECK(lo == Approx(90.0).margin(1e-6));
    CHECK(hi == Approx(270.0).margin(1e-6));
    CHECK(rep.at("measure").at("atoms").at(1).at("angle").get<double>() ==
          Approx(180.0).margin(1e-9));
}

TEST_CASE("plot renders both contact cases") {
    const auto seg = run_cli("analyze", kLattice);
    REQUIRE(seg.exit_code == 0);
    const auto seg_svg = run_cli("plot", seg.out);
    REQUIRE(seg_svg.exit_code == 0);
    CHECK(seg_svg.out.find("<svg") != std::string::npos);
    CHECK(seg_svg.out.find("M1") != std::string::npos);
    CHECK(seg_svg.out.find("stroke-dasharray") == std::string::npos);

    const auto tri = run_cli("analyze", kEquilateral);
    REQUIRE(tri.exit_code == 0);
    const auto tri_svg = run_cli("plot", tri.out);
    REQUIRE(tri_svg.exit_code == 0);
    CHECK(tri_svg.out.find("stroke-dasharray") != std::string::npos);
    CHECK(tri_svg.out.find("N1") != std::string::npos);
}

TEST_CASE("plot validates its report") {
    CHECK(run_cli("plot", "nonsense").exit_code == 2);
    CHECK(run_cli("plot", R"({"sigma_u": 1.0})").exit_code == 2);
    CHECK(run_cli("plot",
                  R"({"sigma_u": 0, "radius": 0, "case": "degenerate", "vertices": []})")
              .exit_code == 2);
}

TEST_CASE("missing required flags exit with usage errors") {
    const auto r = run_cli("verify", kLattice);
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("--rmax") != std::string::npos);
    CHECK(run_cli("frobnicate", "").exit_code == 2);
    CHECK(run_cli("--help", "").exit_code == 0);
}

TEST_CASE("verify validates the request") {
    CHECK(run_cli("verify --rmax 50", R"({"angles": 4})").exit_code == 2);
    CHECK(run_cli("verify --rmax 50", R"({"points": []})").exit_code == 2);
}

TEST_CASE("verify estimates the type from explicit points") {
    std::ostringstream req;
    req << R"({"angles": 16, "radii": [10.5, 20.5, 30.5], "points": [)";
    for (int k = 1; k <= 100; ++k) {
        if (k > 1) req << ", ";
        req << "[" << k << ", 0], [" << -k << ", 0]";
    }
    req << "]}";
    const auto r = run_cli("verify --rmax 100", req.str());
    REQUIRE(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep.at("type_estimate").get<double>() == Approx(kPi).epsilon(0.2));
    CHECK(!rep.contains("sigma_u_predicted"));
    CHECK(rep.at("angles").size() == 16);
}

TEST_CASE("verify compares a realization against the prediction") {
    const auto r = run_cli("verify --rmax 200 --seed 3 --augment-ray",
                           R"({"atoms": [{"angle": 0, "mass": 1}]})");
    REQUIRE(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep.at("sigma_u_predicted").get<double>() == Approx(kPi).margin(1e-9));
    CHECK(rep.at("type_estimate").get<double>() == Approx(kPi).epsilon(0.15));
}

TEST_CASE("output flag writes a file instead of stdout") {
    namespace fs = std::filesystem;
    const fs::path target =
        fs::temp_directory_path() / ("cli_file_" + std::to_string(::getpid()));
    const auto r = run_cli("analyze --output " + target.string(), kLattice);
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.empty());
    const json rep = json::parse(slurp(target));
    CHECK(rep.at("sigma_u").get<double>() == Approx(kPi).margin(1e-9));
    fs::remove(target);
}

TEST_CASE("pipeline steps compose in command order") {
    const char* m = R"({"atoms": [{"angle": 0, "mass": 1}]})";
    const auto sym_first =
        run_cli("generate --rmax 20 --seed 1 --symmetrize --lunc 0.5", m);
    const auto lunc_first =
        run_cli("generate --rmax 20 --seed 1 --lunc 0.5 --symmetrize", m);
    REQUIRE(sym_first.exit_code == 0);
    REQUIRE(lunc_first.exit_code == 0);
    const auto na = json::parse(sym_first.out).at("points").size();
    const auto nb = json::parse(lunc_first.out).at("points").size();
    // a symmetric set has zero reciprocal sum, so balancing adds nothing
    CHECK(na == 40);
    CHECK(nb > na);
}