#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace wgqed {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

inline constexpr double pi = 3.14159265358979323846;

/// Configuration errors: bad coupling points, malformed phase strings, etc.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical errors: root-find failures, pole proximity, misaligned grids.
struct NumericsError : std::runtime_error {
    explicit NumericsError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wgqed
