#pragma once

#include <stdexcept>
#include <string>

namespace wpaoi {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A raw input violated its admissible range. Carries the field name.
class invalid_param : public error {
public:
    invalid_param(std::string field, const std::string& reason)
        : error(field + ": " + reason), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Relay transmit energy after processing cost is non-positive.
class relay_power_infeasible : public error {
public:
    using error::error;
};

// Service rate does not dominate the arrival rate.
class unstable_queue : public error {
public:
    using error::error;
};

// A truncated series hit its term cap before reaching the tolerance.
class convergence_error : public error {
public:
    using error::error;
};

class domain_error : public error {
public:
    using error::error;
};

class divide_by_zero_prob : public error {
public:
    using error::error;
};

} // namespace wpaoi
