#pragma once

#include <stdexcept>
#include <string>

namespace fitroom {

/// A broken model invariant (scheduling into the past, double allocation, ...).
/// Always a bug in the simulator, never a user error.
class ModelError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Invalid scenario input. `field` is the dotted config path when known.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace fitroom

namespace fitroom {

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fitroom
