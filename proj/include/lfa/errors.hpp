#pragma once

#include <stdexcept>
#include <string>

namespace lfa {

/// Base class for all errors thrown by this library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Mixed-dimension arguments (masks or points of different m).
class dimension_error : public error {
public:
    using error::error;
};

/// A parameter combination made a required denominator vanish exactly.
class singular_parameter_error : public error {
public:
    using error::error;
};

/// Series evaluation requested outside the convergence domain sum |x_i| < 1.
class series_domain_error : public error {
public:
    using error::error;
};

/// Evaluation point lies on (or numerically on) the singular locus.
class proximity_error : public error {
public:
    using error::error;
};

/// Malformed or inconsistent path data, including non-closed monodromy loops.
class path_error : public error {
public:
    using error::error;
};

/// Adaptive step size underflowed; the problem is stiff at the requested tolerance.
class stiffness_error : public error {
public:
    using error::error;
};

/// Bad configuration input (CLI arguments, JSON files).
class config_error : public error {
public:
    using error::error;
};

}  // namespace lfa
