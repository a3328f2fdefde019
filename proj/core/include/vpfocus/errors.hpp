#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vpfocus {

/// Raised when a characteristic integration cannot continue (guard radius
/// reached, step count exhausted). Carries how far the trajectory got.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double t_reached)
        : std::runtime_error(what), t_reached_(t_reached) {}
    double t_reached() const { return t_reached_; }

private:
    double t_reached_;
};

/// Particle handed to the depositor lies outside the grid span.
class DepositError : public std::runtime_error {
public:
    DepositError(const std::string& what, std::size_t particle_index)
        : std::runtime_error(what), particle_index_(particle_index) {}
    std::size_t particle_index() const { return particle_index_; }

private:
    std::size_t particle_index_;
};

/// A planning inequality failed after rounding; names the inequality.
class PlanError : public std::runtime_error {
public:
    PlanError(const std::string& what, std::string inequality)
        : std::runtime_error(what), inequality_(std::move(inequality)) {}
    const std::string& inequality() const { return inequality_; }

private:
    std::string inequality_;
};

/// Grid too coarse for a requested finite-difference order.
class ResolutionError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Support box handed to the sampler is degenerate or inconsistent.
class SamplingError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Configuration document rejected; carries the offending key.
class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::string key)
        : std::invalid_argument(what), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

} // namespace vpfocus
