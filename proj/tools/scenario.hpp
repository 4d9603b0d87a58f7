#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "galmech/connection.hpp"
#include "galmech/dynamics.hpp"
#include "galmech/errors.hpp"
#include "galmech/galilei.hpp"
#include "galmech/rigidbody.hpp"
#include "galmech/torsor.hpp"

namespace galmech::cli {

/// Raised for malformed scenarios. The message carries the file, line and
/// JSON path of the offending field.
class ScenarioError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

struct RigidBodySetup {
    Mat3 inertia = Mat3::Identity();
    RigidBodyState initial;
};

/// Parsed scenario file. Sections are optional here; the accessors throw a
/// ScenarioError naming the missing section.
class Scenario {
public:
    /// Parses JSON text. `source` names the file in diagnostics.
    static Scenario parse(const std::string& text, const std::string& source = "scenario");
    static Scenario load(const std::string& path);

    /// "particle", "rigidbody", "torsor_transform" or "covariance"; empty if absent.
    const std::string& kind() const { return kind_; }
    /// Throws ScenarioError when a kind is given and it is not `expected`.
    void require_kind(const std::string& expected) const;

    GalileanConnection connection() const;
    ParticleState particle() const;
    IntegratorConfig integrator() const;
    RigidFrameMotion frame() const;
    RigidBodySetup rigid_body() const;
    GalileanTorsor torsor() const;
    GalileanTransformation transformation() const;

    /// output.<key> if present.
    std::optional<std::string> output(const std::string& key) const;

private:
    Scenario(std::string text, std::string source, nlohmann::json doc);

    const nlohmann::json& section(const char* name) const;
    [[noreturn]] void fail(const std::string& path, const std::string& what) const;
    double number(const nlohmann::json& obj, const std::string& path, const char* key) const;
    double number_or(const nlohmann::json& obj, const std::string& path, const char* key, double fallback) const;
    Vec3 vec3(const nlohmann::json& obj, const std::string& path, const char* key) const;
    Vec3 vec3_or(const nlohmann::json& obj, const std::string& path, const char* key, const Vec3& fallback) const;
    std::string string(const nlohmann::json& obj, const std::string& path, const char* key) const;
    int line_of(const std::string& path) const;

    std::string text_;
    std::string source_;
    nlohmann::json doc_;
    std::string kind_;
};

} // namespace galmech::cli
