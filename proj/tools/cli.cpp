#include "cli.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "galmech/errors.hpp"
#include "galmech/verify/criteria.hpp"
#include "scenario.hpp"

namespace galmech::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Options {
    std::string scenario;
    std::string out_dir = ".";
    std::optional<double> dt;
    std::optional<long> steps;
    std::uint64_t seed = 20061204;
};

// 17 significant digits; negative zero prints as 0.
std::string num(double x) { return fmt::format("{:.17g}", x == 0.0 ? 0.0 : x); }

std::string vec(const Vec3& v) { return fmt::format("[{}, {}, {}]", num(v.x()), num(v.y()), num(v.z())); }

json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json to_json(const GalileanTorsor& mu) {
    return {{"m", mu.m}, {"p", to_json(mu.p)}, {"q", to_json(mu.q)}, {"l", to_json(mu.l)}};
}

json to_json(const Drift& d) { return {{"initial", d.initial}, {"max_relative", d.max_relative}}; }

IntegratorConfig integrator(const Scenario& s, const Options& opt) {
    IntegratorConfig cfg = s.integrator();
    if (opt.dt) cfg.dt = *opt.dt;
    if (opt.steps) cfg.steps = *opt.steps;
    cfg.validate();
    return cfg;
}

fs::path output_path(const Scenario& s, const Options& opt, const std::string& key, const std::string& fallback) {
    const fs::path dir(opt.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InvalidInput("cannot create output directory " + dir.string() + ": " + ec.message());
    return dir / s.output(key).value_or(fallback);
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream f(path);
    if (!f) throw InvalidInput("cannot write " + path.string());
    return f;
}

void write_json(const fs::path& path, const json& doc) { open_output(path) << doc.dump(2) << '\n'; }

void print_torsor(std::ostream& out, const std::string& label, const GalileanTorsor& mu) {
    fmt::print(out, "{}: m = {}, p = {}, q = {}, l = {}\n", label, num(mu.m), vec(mu.p), vec(mu.q), vec(mu.l));
}

int simulate_particle(const Options& opt, std::ostream& out) {
    const Scenario s = Scenario::load(opt.scenario);
    s.require_kind("particle");
    const ParticleState initial = s.particle();
    const GalileanConnection conn = s.connection();
    const ParticleRun run = simulate(initial, conn, integrator(s, opt));

    const fs::path csv = output_path(s, opt, "trajectory", "particle_trajectory.csv");
    {
        std::ofstream f = open_output(csv);
        f << "t,rx,ry,rz,px,py,pz,lx,ly,lz,qx,qy,qz\n";
        for (const auto& st : run.samples) {
            fmt::print(f, "{},{},{},{},{},{},{},{},{},{},{},{},{}\n", num(st.t), num(st.r.x()), num(st.r.y()),
                       num(st.r.z()), num(st.p.x()), num(st.p.y()), num(st.p.z()), num(st.l.x()), num(st.l.y()),
                       num(st.l.z()), num(st.q.x()), num(st.q.y()), num(st.q.z()));
        }
    }

    const ConservationReport& rep = run.report;
    json doc = {{"connection", rep.connection_kind},
                {"steps_completed", rep.steps_completed},
                {"truncated", rep.truncated},
                {"mass", to_json(rep.mass)},
                {"spin_norm", to_json(rep.spin_norm)},
                {"passage_defect", rep.passage_defect},
                {"final_torsor", to_json(run.samples.back().torsor())},
                {"final_inertial_torsor", to_json(run.samples.back().inertial_torsor())}};
    if (rep.truncated) doc["diagnostic"] = rep.diagnostic;
    if (rep.torsor_components) {
        static const char* names[] = {"m", "px", "py", "pz", "qx", "qy", "qz", "lx", "ly", "lz"};
        json comps = json::object();
        for (int i = 0; i < 10; ++i) comps[names[i]] = to_json((*rep.torsor_components)[i]);
        doc["torsor_components"] = comps;
        doc["max_torsor_drift"] = rep.max_torsor_drift();
    }
    if (rep.energy) doc["energy"] = to_json(*rep.energy);
    const fs::path report = output_path(s, opt, "report", "particle_report.json");
    write_json(report, doc);

    fmt::print(out, "steps: {}\nspin norm drift: {}\n", rep.steps_completed, num(rep.spin_norm.max_relative));
    if (rep.torsor_components) fmt::print(out, "max torsor drift: {}\n", num(rep.max_torsor_drift()));
    if (rep.energy) fmt::print(out, "energy drift: {}\n", num(rep.energy->max_relative));
    fmt::print(out, "trajectory: {}\nreport: {}\n", csv.string(), report.string());
    if (rep.truncated) throw NumericalFailure("run truncated: " + rep.diagnostic);
    return kExitOk;
}

int simulate_rigidbody(const Options& opt, std::ostream& out) {
    const Scenario s = Scenario::load(opt.scenario);
    s.require_kind("rigidbody");
    const RigidBodySetup body = s.rigid_body();
    const RigidBodyRun run = simulate_free(body.initial, body.inertia, integrator(s, opt));

    const fs::path csv = output_path(s, opt, "trajectory", "rigidbody_trajectory.csv");
    Vec3 omega_drift = Vec3::Zero();
    {
        std::ofstream f = open_output(csv);
        f << "t,qw,qx,qy,qz,wx,wy,wz\n";
        for (const auto& st : run.samples) {
            const auto& q = st.orientation;
            fmt::print(f, "{},{},{},{},{},{},{},{}\n", num(st.t), num(q.w()), num(q.x()), num(q.y()), num(q.z()),
                       num(st.omega_body.x()), num(st.omega_body.y()), num(st.omega_body.z()));
            omega_drift = omega_drift.cwiseMax((st.omega_body - body.initial.omega_body).cwiseAbs());
        }
    }

    const PoinsotReport& rep = run.report;
    const json doc = {{"steps", rep.steps},
                      {"inertia", {to_json(body.inertia.row(0)), to_json(body.inertia.row(1)), to_json(body.inertia.row(2))}},
                      {"spin_initial", to_json(rep.spin_initial)},
                      {"spin_component_drift", rep.spin_component_drift},
                      {"kinetic", to_json(rep.kinetic)},
                      {"momentum_norm", to_json(rep.momentum_norm)},
                      {"omega_body_component_drift", to_json(omega_drift)},
                      {"max_quaternion_defect", rep.max_quaternion_defect},
                      {"max_rotation_defect", rep.max_rotation_defect}};
    const fs::path report = output_path(s, opt, "report", "rigidbody_report.json");
    write_json(report, doc);

    fmt::print(out, "steps: {}\nspin component drift: {}\nkinetic drift: {}\nomega' component drift: {}\n", rep.steps,
               num(rep.spin_component_drift), num(rep.kinetic.max_relative), vec(omega_drift));
    fmt::print(out, "trajectory: {}\nreport: {}\n", csv.string(), report.string());
    return kExitOk;
}

int transform_torsor(const Options& opt, std::ostream& out) {
    const Scenario s = Scenario::load(opt.scenario);
    s.require_kind("torsor_transform");
    const GalileanTorsor mu = s.torsor();
    const GalileanTransformation a = s.transformation();
    const GalileanTorsor by_components = transform(mu, a);
    const GalileanTorsor by_matrix = GalileanTorsor::from_matrix(transform_matrix(mu.to_matrix(), a));
    print_torsor(out, "input", mu);
    print_torsor(out, "component law", by_components);
    print_torsor(out, "matrix law", by_matrix);
    fmt::print(out, "max discrepancy: {}\n",
               num((by_components.components() - by_matrix.components()).cwiseAbs().maxCoeff()));
    return kExitOk;
}

int invariants_cmd(const Options& opt, std::ostream& out) {
    const Scenario s = Scenario::load(opt.scenario);
    const TorsorInvariants inv = invariants(s.torsor());
    fmt::print(out, "m: {}\nl0: {}\n|l0|: {}\nisotropy dimension: {}\n", num(inv.m), vec(inv.spin),
               num(inv.spin_norm), isotropy_dimension(s.torsor()));
    return kExitOk;
}

int check_covariance(const Options& opt, std::ostream& out) {
    const Scenario s = Scenario::load(opt.scenario);
    s.require_kind("covariance");
    const CovarianceResult r = covariance_check(s.particle(), s.connection(), s.frame(), integrator(s, opt));
    fmt::print(out, "samples: {}\nposition: {}\nmomentum: {}\nangular momentum: {}\npassage: {}\nmax discrepancy: {}\n",
               r.samples, num(r.position), num(r.momentum), num(r.angular_momentum), num(r.passage),
               num(r.max_discrepancy));
    return kExitOk;
}

int self_test(const Options& opt, std::ostream& out) {
    bool ok = true;
    for (const auto& r : verify::run_acceptance(opt.seed)) {
        out << verify::format_result(r) << '\n';
        ok = ok && r.passed;
    }
    out << (ok ? "self-test passed" : "self-test FAILED") << '\n';
    return ok ? kExitOk : kExitNumerical;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Galilean torsor mechanics: simulations and algebra checks", "galmech"};
    app.require_subcommand(1);
    Options opt;

    auto scenario_cmd = [&](const char* name, const char* help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--scenario", opt.scenario, "Scenario file (JSON)")->required()->check(CLI::ExistingFile);
        return sub;
    };
    auto simulation_flags = [&](CLI::App* sub) {
        sub->add_option("--dt", opt.dt, "Override the integrator step")->check(CLI::PositiveNumber);
        sub->add_option("--steps", opt.steps, "Override the number of steps")->check(CLI::PositiveNumber);
    };

    CLI::App* particle = scenario_cmd("simulate-particle", "Integrate a particle; write trajectory CSV and report JSON");
    simulation_flags(particle);
    particle->add_option("--out", opt.out_dir, "Output directory");
    CLI::App* body = scenario_cmd("simulate-rigidbody", "Integrate a free rigid body; write trajectory CSV and report JSON");
    simulation_flags(body);
    body->add_option("--out", opt.out_dir, "Output directory");
    CLI::App* xform = scenario_cmd("transform-torsor", "Transform a torsor by component and matrix laws");
    CLI::App* inv = scenario_cmd("invariants", "Print m, l0, |l0| and the isotropy dimension");
    CLI::App* cov = scenario_cmd("check-covariance", "Compare original-frame and pulled-back integrations");
    simulation_flags(cov);
    CLI::App* selftest = app.add_subcommand("self-test", "Run the acceptance oracle suite");
    selftest->add_option("--seed", opt.seed, "Seed for the random samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (particle->parsed()) return simulate_particle(opt, out);
        if (body->parsed()) return simulate_rigidbody(opt, out);
        if (xform->parsed()) return transform_torsor(opt, out);
        if (inv->parsed()) return invariants_cmd(opt, out);
        if (cov->parsed()) return check_covariance(opt, out);
        if (selftest->parsed()) return self_test(opt, out);
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const MasslessTorsor& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitInvalid;
}

} // namespace galmech::cli
