#pragma once

#include <stdexcept>
#include <string>

namespace phfem {

/// Bad user input: malformed config, invalid parameters, mesh file syntax.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical breakdown: singular pivot, NaN/Inf detected during time stepping.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Filesystem failures while writing artifacts.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace phfem
