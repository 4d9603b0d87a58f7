#include "scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "galmech/errors.hpp"

namespace galmech::cli {

using nlohmann::json;

namespace {

int line_at_offset(const std::string& text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

std::string join(const std::string& path, const std::string& key) { return path + "/" + key; }

} // namespace

Scenario::Scenario(std::string text, std::string source, json doc)
    : text_(std::move(text)), source_(std::move(source)), doc_(std::move(doc)) {}

Scenario Scenario::parse(const std::string& text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // e.byte is one past the offending character.
        const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
        throw ScenarioError(source + ":" + std::to_string(line_at_offset(text, at)) +
                            ": malformed scenario: " + e.what());
    }
    Scenario s(text, source, std::move(doc));
    if (!s.doc_.is_object()) s.fail("", "top level must be an object");
    if (s.doc_.contains("kind")) s.kind_ = s.string(s.doc_, "", "kind");
    static const char* kinds[] = {"particle", "rigidbody", "torsor_transform", "covariance"};
    if (!s.kind_.empty() && std::none_of(std::begin(kinds), std::end(kinds),
                                         [&](const char* k) { return s.kind_ == k; })) {
        s.fail("/kind", "unknown kind '" + s.kind_ + "'");
    }
    return s;
}

Scenario Scenario::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(path + ": cannot open scenario file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

void Scenario::require_kind(const std::string& expected) const {
    if (!kind_.empty() && kind_ != expected) {
        fail("/kind", "expected '" + expected + "' for this command, got '" + kind_ + "'");
    }
}

int Scenario::line_of(const std::string& path) const {
    // Walk the path keys through the text; each key is searched after the
    // previous one, which pins nested fields well enough for diagnostics.
    std::size_t pos = 0;
    std::size_t found = std::string::npos;
    std::size_t start = 1;
    while (start <= path.size()) {
        const std::size_t end = std::min(path.find('/', start), path.size());
        const std::string key = path.substr(start, end - start);
        start = end + 1;
        if (key.empty() || std::all_of(key.begin(), key.end(), ::isdigit)) continue;
        const std::size_t at = text_.find("\"" + key + "\"", pos);
        if (at == std::string::npos) break;
        found = at;
        pos = at + 1;
    }
    return found == std::string::npos ? 1 : line_at_offset(text_, found);
}

void Scenario::fail(const std::string& path, const std::string& what) const {
    throw ScenarioError(source_ + ":" + std::to_string(line_of(path)) + ": field " +
                        (path.empty() ? "/" : path) + ": " + what);
}

const json& Scenario::section(const char* name) const {
    const std::string path = join("", name);
    if (!doc_.contains(name)) fail(path, "missing required section");
    const json& s = doc_.at(name);
    if (!s.is_object()) fail(path, "expected an object");
    return s;
}

double Scenario::number(const json& obj, const std::string& path, const char* key) const {
    const std::string p = join(path, key);
    if (!obj.contains(key)) fail(p, "missing required number");
    const json& v = obj.at(key);
    if (!v.is_number()) fail(p, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(p, "expected a finite number");
    return x;
}

double Scenario::number_or(const json& obj, const std::string& path, const char* key, double fallback) const {
    return obj.contains(key) ? number(obj, path, key) : fallback;
}

Vec3 Scenario::vec3(const json& obj, const std::string& path, const char* key) const {
    const std::string p = join(path, key);
    if (!obj.contains(key)) fail(p, "missing required 3-vector");
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != 3) fail(p, "expected an array of 3 numbers");
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
        if (!v[static_cast<std::size_t>(i)].is_number()) fail(p, "expected an array of 3 numbers");
        out(i) = v[static_cast<std::size_t>(i)].get<double>();
    }
    if (!out.allFinite()) fail(p, "expected finite numbers");
    return out;
}

Vec3 Scenario::vec3_or(const json& obj, const std::string& path, const char* key, const Vec3& fallback) const {
    return obj.contains(key) ? vec3(obj, path, key) : fallback;
}

std::string Scenario::string(const json& obj, const std::string& path, const char* key) const {
    const std::string p = join(path, key);
    if (!obj.contains(key)) fail(p, "missing required string");
    if (!obj.at(key).is_string()) fail(p, "expected a string");
    return obj.at(key).get<std::string>();
}

GalileanConnection Scenario::connection() const {
    const json& c = section("connection");
    const std::string path = "/connection";
    const std::string type = string(c, path, "type");
    if (type == "zero") return GalileanConnection::zero();
    if (type == "uniform") return GalileanConnection::uniform(vec3(c, path, "g"));
    if (type == "rotating_frame") {
        return GalileanConnection::rotating_frame(vec3(c, path, "omega"), vec3_or(c, path, "g0", Vec3::Zero()));
    }
    if (type == "newtonian") {
        const std::string sp = path + "/sources";
        if (!c.contains("sources") || !c.at("sources").is_array()) fail(sp, "expected an array of sources");
        std::vector<GravitySource> sources;
        for (std::size_t i = 0; i < c.at("sources").size(); ++i) {
            const json& s = c.at("sources")[i];
            const std::string ip = sp + "/" + std::to_string(i);
            if (!s.is_object()) fail(ip, "expected an object");
            const double mass = number(s, ip, "mass");
            if (!(mass > 0.0)) fail(ip + "/mass", "source mass must be positive");
            const double k_g = number_or(s, ip, "k_g", 1.0);
            sources.push_back(GravitySource::moving(mass, vec3(s, ip, "position"),
                                                    vec3_or(s, ip, "velocity", Vec3::Zero()), k_g));
        }
        return newtonian_connection(std::move(sources));
    }
    fail(path + "/type", "unknown connection type '" + type + "' (zero, uniform, newtonian, rotating_frame)");
}

ParticleState Scenario::particle() const {
    const json& p = section("particle");
    const std::string path = "/particle";
    const double m = number(p, path, "m");
    if (!(m > 0.0)) fail(path + "/m", "mass must be positive");
    return ParticleState::from_motion(number_or(p, path, "t", 0.0), m, vec3(p, path, "r"),
                                      vec3_or(p, path, "v", Vec3::Zero()),
                                      vec3_or(p, path, "spin", Vec3::Zero()));
}

IntegratorConfig Scenario::integrator() const {
    IntegratorConfig cfg;
    if (!doc_.contains("integrator")) return cfg;
    const json& i = section("integrator");
    const std::string path = "/integrator";
    cfg.dt = number_or(i, path, "dt", cfg.dt);
    if (!(cfg.dt > 0.0)) fail(path + "/dt", "dt must be positive");
    for (const char* key : {"steps", "sample_every"}) {
        if (!i.contains(key)) continue;
        const json& v = i.at(key);
        if (!v.is_number_integer() || v.get<long>() < 1) fail(join(path, key), "expected a positive integer");
    }
    cfg.steps = i.value("steps", cfg.steps);
    cfg.sample_every = i.value("sample_every", cfg.sample_every);
    return cfg;
}

RigidFrameMotion Scenario::frame() const {
    const json& f = section("frame");
    const std::string path = "/frame";
    const std::string type = string(f, path, "type");
    if (type == "stationary") return RigidFrameMotion::stationary();
    if (type == "uniform_rotation") return RigidFrameMotion::uniform_rotation(vec3(f, path, "omega"));
    if (type == "uniform_acceleration") {
        return RigidFrameMotion::uniform_acceleration(vec3(f, path, "a"), vec3_or(f, path, "v0", Vec3::Zero()),
                                                      vec3_or(f, path, "x0", Vec3::Zero()));
    }
    fail(path + "/type", "unknown frame type '" + type + "' (stationary, uniform_rotation, uniform_acceleration)");
}

RigidBodySetup Scenario::rigid_body() const {
    const json& b = section("body");
    const std::string path = "/body";
    RigidBodySetup out;
    if (b.contains("points")) {
        const std::string pp = path + "/points";
        const json& pts = b.at("points");
        if (!pts.is_array() || pts.empty()) fail(pp, "expected a non-empty array of {mass, position}");
        MassDistribution dist;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const std::string ip = pp + "/" + std::to_string(i);
            if (!pts[i].is_object()) fail(ip, "expected an object");
            const double mass = number(pts[i], ip, "mass");
            if (!(mass > 0.0)) fail(ip + "/mass", "point mass must be positive");
            dist.points.push_back({mass, vec3(pts[i], ip, "position")});
        }
        out.inertia = inertia_from_points(recenter(dist)).matrix;
    } else if (b.contains("principal_moments")) {
        out.inertia = vec3(b, path, "principal_moments").asDiagonal();
    } else {
        fail(path, "expected 'points' or 'principal_moments'");
    }
    out.initial.t = number_or(b, path, "t", 0.0);
    out.initial.orientation = Eigen::Quaterniond(rotation_from_vector(vec3_or(b, path, "axis_angle", Vec3::Zero())));
    out.initial.omega_body = vec3(b, path, "omega_body");
    return out;
}

GalileanTorsor Scenario::torsor() const {
    const json& t = section("torsor");
    const std::string path = "/torsor";
    return {number(t, path, "m"), vec3_or(t, path, "p", Vec3::Zero()), vec3_or(t, path, "q", Vec3::Zero()),
            vec3_or(t, path, "l", Vec3::Zero())};
}

GalileanTransformation Scenario::transformation() const {
    const json& a = section("transformation");
    const std::string path = "/transformation";
    return {number_or(a, path, "tau", 0.0), vec3_or(a, path, "k", Vec3::Zero()), vec3_or(a, path, "u", Vec3::Zero()),
            rotation_from_vector(vec3_or(a, path, "axis_angle", Vec3::Zero()))};
}

std::optional<std::string> Scenario::output(const std::string& key) const {
    if (!doc_.contains("output")) return std::nullopt;
    const json& o = section("output");
    if (!o.contains(key)) return std::nullopt;
    return string(o, "/output", key.c_str());
}

} // namespace galmech::cli
