#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace h2inv {

using Complex = std::complex<double>;

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(Complex z, const char* what) {
    if (!is_finite(z)) throw std::domain_error(std::string(what) + ": nonfinite value");
}

/// Taylor mass of the input cannot be captured at the requested order.
/// Carries a hint for the caller to retry with a larger order.
class resolution_error : public std::runtime_error {
public:
    resolution_error(const std::string& msg, int order, double tail_energy)
        : std::runtime_error(msg), order_(order), tail_energy_(tail_energy) {}
    int order() const { return order_; }
    double tail_energy() const { return tail_energy_; }

private:
    int order_;
    double tail_energy_;
};

/// A certification produced a verdict outside what the dichotomy admits.
/// Surfacing this as an exception makes it a hard test-suite failure.
class theorem_violation : public std::logic_error {
public:
    explicit theorem_violation(const std::string& msg) : std::logic_error(msg) {}
};

inline constexpr const char* kToolkitVersion = "0.1.0";

}  // namespace h2inv
