#pragma once

#include <stdexcept>
#include <string>

namespace gravmeas {

// Numerical faults. The CLI maps these to exit code 3.
struct SingularKernel : std::runtime_error {
    explicit SingularKernel(const std::string& what) : std::runtime_error(what) {}
};

struct GridMismatch : std::runtime_error {
    explicit GridMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateDenominator : std::runtime_error {
    explicit DegenerateDenominator(const std::string& what) : std::runtime_error(what) {}
};

struct BoundaryLeak : std::runtime_error {
    BoundaryLeak(const std::string& what, double magnitude)
        : std::runtime_error(what), leak_magnitude(magnitude) {}
    double leak_magnitude;
};

// Bad inputs (config files, record files, malformed grids). Exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gravmeas
