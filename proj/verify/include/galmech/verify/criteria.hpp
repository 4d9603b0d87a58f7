#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace galmech::verify {

/// Outcome of one acceptance check. Every measured value is compared against
/// a fixed threshold; runtime limits are checked separately when present.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct Criterion {
    int id;
    std::string name;
    std::function<CriterionResult(std::uint64_t seed)> run;
};

/// The ten acceptance criteria, in order.
const std::vector<Criterion>& acceptance_criteria();

/// Runs every criterion and times it.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed);

/// "[PASS] 1 name: detail (0.012 s)"
std::string format_result(const CriterionResult& r);

} // namespace galmech::verify
