#pragma once

#include <stdexcept>
#include <string>

namespace volnet {

/// Malformed configuration or invalid arguments (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Unusable input data: missing files, bad CSV cells, domain violations (exit code 3).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: non-convergence, singular systems, rank deficiency (exit code 4).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace volnet
