#pragma once

#include <stdexcept>
#include <string>

namespace ancsim {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid parameter values, malformed configuration, Nyquist violations,
// insufficient data for a statistic.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Source/receiver placement problems: outside the room, coincident points.
class GeometryError : public Error {
public:
    explicit GeometryError(const std::string& msg) : Error(msg) {}
};

// Degenerate numerical input: all-zero impulse response, constant signal,
// decay range too small to fit.
class DataError : public Error {
public:
    explicit DataError(const std::string& msg) : Error(msg) {}
};

} // namespace ancsim
