#pragma once

// Test-only oracles, independent of the library code paths they check.

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracles {

using Complex = std::complex<double>;

/// Taylor coefficients recovered by discrete contour integration at radius r:
/// a_n ~ r^{-n} (1/M) sum_k f(r w^k) w^{-kn}. Exact for polynomials up to
/// aliasing r^M; rounding grows like r^{-n}.
inline std::vector<Complex> contour_coefficients(
    const std::function<Complex(Complex)>& f, int order, double r = 0.97, int grid = 4096) {
    std::vector<Complex> samples(grid);
    for (int k = 0; k < grid; ++k)
        samples[k] = f(std::polar(r, 2.0 * std::numbers::pi * k / grid));
    std::vector<Complex> coeffs(order + 1);
    for (int n = 0; n <= order; ++n) {
        Complex acc = 0.0;
        for (int k = 0; k < grid; ++k)
            acc += samples[k] * std::polar(1.0, -2.0 * std::numbers::pi * k * n / grid);
        coeffs[n] = acc / (double(grid) * std::pow(r, n));
    }
    return coeffs;
}

/// Largest singular value via Eigen's SVD (independent of power iteration).
inline double svd_norm(const Eigen::MatrixXcd& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
}

/// Deterministic random polynomial coefficients.
inline std::vector<Complex> random_poly(std::mt19937& rng, int order, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<Complex> c(order + 1);
    for (auto& x : c) x = Complex(u(rng), u(rng));
    return c;
}

}  // namespace oracles
