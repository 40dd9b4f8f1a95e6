#pragma once

#include <stdexcept>
#include <string>

namespace repolabel {

// Configuration problems: unknown names, missing resources, bad flag combinations.
// The CLI maps these to exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Data problems: malformed files, schema violations, undecodable input.
// The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Contract violations inside the library (dimension mismatches, negative
// probabilities, unknown labels). Treated as data errors at the CLI boundary.
class ValidationError : public DataError {
public:
    explicit ValidationError(const std::string& msg) : DataError(msg) {}
};

}  // namespace repolabel
