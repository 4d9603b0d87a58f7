#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace galmech {

/// Malformed or inconsistent input: dimension mismatch, non-skew matrix,
/// singular linear part, invalid configuration.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operation restricted to massive torsors was given m == 0.
class MasslessTorsor : public std::domain_error {
public:
    MasslessTorsor() : std::domain_error("operation requires a massive torsor (m != 0)") {}
};

/// Base for failures that come from the numerics rather than the input shape.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GravitySingularity : public NumericalFailure {
public:
    GravitySingularity(std::size_t source, double distance)
        : NumericalFailure("gravity singularity: distance " + std::to_string(distance) +
                           " to source " + std::to_string(source)),
          source_index(source) {}

    std::size_t source_index;
};

class SingularInertia : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

} // namespace galmech
