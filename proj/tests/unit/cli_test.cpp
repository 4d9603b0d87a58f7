#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "galmech");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = galmech::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class Workdir {
public:
    Workdir() : dir_(fs::temp_directory_path() / ("galmech_cli_" + std::to_string(counter_++))) {
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    ~Workdir() { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(dir_ / name) << text;
        return (dir_ / name).string();
    }
    std::string read(const std::string& name) const {
        std::ifstream in(dir_ / name);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
    std::string path() const { return dir_.string(); }

private:
    static inline int counter_ = 0;
    fs::path dir_;
};

const char* kRestSpin = R"({
  "kind": "torsor_transform",
  "torsor": {"m": 1, "p": [0, 0, 0], "q": [0, 0, 0], "l": [0, 0, 4]}
})";

const char* kTop = R"({
  "kind": "rigidbody",
  "body": {"principal_moments": [1, 1, 2], "omega_body": [1, 0, 1]},
  "integrator": {"dt": 1e-3, "steps": 5000, "sample_every": 1}
})";

const char* kFall = R"({
  "kind": "particle",
  "connection": {"type": "uniform", "g": [0, 0, -9.81]},
  "particle": {"m": 1.0, "r": [0, 0, 0], "v": [1, 0, 0]},
  "integrator": {"dt": 1e-3, "steps": 1000, "sample_every": 100}
})";

} // namespace

TEST_CASE("cli: invariants of a rest torsor") {
    Workdir w;
    const auto r = invoke({"invariants", "--scenario", w.write("s.json", kRestSpin)});
    CHECK(r.code == 0);
    CHECK(r.out.find("|l0|: 4\n") != std::string::npos);
    CHECK(r.out.find("isotropy dimension: 2") != std::string::npos);
}

TEST_CASE("cli: identity transformation echoes the torsor") {
    Workdir w;
    const auto path = w.write("s.json", R"({
      "kind": "torsor_transform",
      "torsor": {"m": 1.5, "p": [0.1, 0.2, 0.3], "q": [1, 2, 3], "l": [-1, 0.5, 2]},
      "transformation": {"tau": 0, "k": [0, 0, 0], "u": [0, 0, 0], "axis_angle": [0, 0, 0]}
    })");
    const auto r = invoke({"transform-torsor", "--scenario", path});
    CHECK(r.code == 0);
    CHECK(r.out.find("max discrepancy: 0\n") != std::string::npos);
    CHECK(r.out.find("component law: m = 1.5, p = [0.10000000000000001, 0.20000000000000001, 0.29999999999999999], "
                     "q = [1, 2, 3], l = [-1, 0.5, 2]") != std::string::npos);
}

TEST_CASE("cli: symmetric top keeps Omega'_3") {
    Workdir w;
    const auto r = invoke({"simulate-rigidbody", "--scenario", w.write("s.json", kTop), "--out", w.path()});
    REQUIRE(r.code == 0);
    const auto report = nlohmann::json::parse(w.read("rigidbody_report.json"));
    CHECK(report["omega_body_component_drift"][2].get<double>() < 1e-10);
    CHECK(report["kinetic"]["max_relative"].get<double>() < 1e-10);
    const std::string csv = w.read("rigidbody_trajectory.csv");
    CHECK(csv.rfind("t,qw,qx,qy,qz,wx,wy,wz\n", 0) == 0);
}

TEST_CASE("cli: particle output is deterministic and honours overrides") {
    Workdir a, b;
    const auto s = a.write("s.json", kFall);
    REQUIRE(invoke({"simulate-particle", "--scenario", s, "--out", a.path()}).code == 0);
    REQUIRE(invoke({"simulate-particle", "--scenario", s, "--out", b.path()}).code == 0);
    const std::string csv = a.read("particle_trajectory.csv");
    CHECK(csv == b.read("particle_trajectory.csv"));
    CHECK(csv.rfind("t,rx,ry,rz,px,py,pz,lx,ly,lz,qx,qy,qz\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);

    REQUIRE(invoke({"simulate-particle", "--scenario", s, "--out", b.path(), "--steps", "10", "--dt", "0.01"}).code == 0);
    const auto report = nlohmann::json::parse(b.read("particle_report.json"));
    CHECK(report["steps_completed"] == 10);
    CHECK(report["final_torsor"]["p"][2].get<double>() == doctest::Approx(-0.981));
}

TEST_CASE("cli: rotating frame covariance") {
    Workdir w;
    const auto path = w.write("s.json", R"({
      "kind": "covariance",
      "connection": {"type": "uniform", "g": [0, 0, -9.81]},
      "particle": {"m": 2.0, "r": [1, 0.5, 2], "v": [0.3, -0.2, 1.0]},
      "frame": {"type": "uniform_rotation", "omega": [0, 0, 0.5]},
      "integrator": {"dt": 1e-3, "steps": 2000, "sample_every": 100}
    })");
    const auto r = invoke({"check-covariance", "--scenario", path});
    CHECK(r.code == 0);
    const auto at = r.out.find("max discrepancy: ");
    REQUIRE(at != std::string::npos);
    CHECK(std::stod(r.out.substr(at + 17)) < 1e-6);
}

TEST_CASE("cli: malformed scenario reports the line") {
    Workdir w;
    const auto path = w.write("s.json", "{\n  \"kind\": \"particle\",\n  \"particle\": {\"m\": 1,, }\n}\n");
    const auto r = invoke({"simulate-particle", "--scenario", path});
    CHECK(r.code == 1);
    CHECK(r.err.find("s.json:3:") != std::string::npos);
}

TEST_CASE("cli: bad fields report line and path") {
    Workdir w;
    const auto path = w.write("s.json", R"({
  "kind": "particle",
  "connection": {"type": "uniform", "g": [0, 0, -9.81]},
  "particle": {
    "m": 1.0,
    "r": [0, 0]
  }
})");
    const auto r = invoke({"simulate-particle", "--scenario", path});
    CHECK(r.code == 1);
    CHECK(r.err.find("s.json:6: field /particle/r") != std::string::npos);

    const auto kind = invoke({"simulate-rigidbody", "--scenario", path});
    CHECK(kind.code == 1);
    CHECK(kind.err.find("/kind") != std::string::npos);

    const auto conn = w.write("c.json", R"({"kind": "particle", "connection": {"type": "magnetic"},
      "particle": {"m": 1, "r": [0, 0, 0]}})");
    const auto c = invoke({"simulate-particle", "--scenario", conn});
    CHECK(c.code == 1);
    CHECK(c.err.find("/connection/type") != std::string::npos);
}

TEST_CASE("cli: numerical failures exit with 2") {
    Workdir w;
    const auto sing = w.write("s.json", R"({
      "kind": "particle",
      "connection": {"type": "newtonian", "sources": [{"mass": 1, "position": [0, 0, 0]}]},
      "particle": {"m": 1, "r": [0, 0, 0]}
    })");
    const auto r = invoke({"simulate-particle", "--scenario", sing, "--out", w.path()});
    CHECK(r.code == 2);
    CHECK(r.err.find("singularity") != std::string::npos);

    const auto flat = w.write("b.json", R"({
      "kind": "rigidbody",
      "body": {"points": [{"mass": 1, "position": [1, 0, 0]}, {"mass": 1, "position": [-1, 0, 0]}],
               "omega_body": [0, 1, 0]}
    })");
    CHECK(invoke({"simulate-rigidbody", "--scenario", flat, "--out", w.path()}).code == 2);
}

TEST_CASE("cli: usage errors") {
    CHECK(invoke({}).code == 1);
    CHECK(invoke({"frobnicate"}).code == 1);
    CHECK(invoke({"invariants"}).code == 1);
    CHECK(invoke({"invariants", "--scenario", "/nonexistent/file.json"}).code == 1);
    CHECK(invoke({"--help"}).code == 0);

    Workdir w;
    const auto massless = w.write("m.json", R"({"torsor": {"m": 0, "l": [0, 0, 1]}})");
    CHECK(invoke({"invariants", "--scenario", massless}).code == 1);
}
