#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mixsch {

struct CheckResult {
    std::string name;
    double value = 0.0;      ///< measured error or deviation
    double tolerance = 0.0;  ///< pass iff value <= tolerance
    bool pass = false;
    std::string detail;
};

struct OperatorBatteryOptions {
    std::size_t n = 64;          ///< grid size for the eigenfunction and Parseval checks
    double box = 20.0;
    std::size_t n_modes = 20;
    std::vector<double> orders{0.25, 0.5, 0.75};
    std::uint64_t seed = 0;
};

/// Fourier-multiplier eigenfunctions, Parseval, derivative symbols, the
/// normalizing constant against its closed form, and the spectral seminorm
/// against the real-space Gagliardo quadrature on a decayed bump.
std::vector<CheckResult> operator_battery(const OperatorBatteryOptions& opts = {});

}  // namespace mixsch
