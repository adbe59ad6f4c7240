// shared numerical oracles for the test suites; everything here is built from
// first principles, independent of the library formulas under test
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "specpot/linalg.hpp"

namespace oracle {

// deterministic 64-bit LCG for reproducible pseudo-random test data
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    double uniform(double lo, double hi) {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        const double u = static_cast<double>(state_ >> 11) / 9007199254740992.0;
        return lo + (hi - lo) * u;
    }

private:
    std::uint64_t state_;
};

// composite Simpson rule; n_points made odd internally
inline double simpson(const std::function<double(double)>& f, double lo, double hi,
                      std::size_t n_points) {
    if (n_points % 2 == 0) ++n_points;
    const double h = (hi - lo) / static_cast<double>(n_points - 1);
    double s = f(lo) + f(hi);
    for (std::size_t i = 1; i + 1 < n_points; ++i) {
        s += f(lo + static_cast<double>(i) * h) * ((i % 2 == 1) ? 4.0 : 2.0);
    }
    return s * h / 3.0;
}

// 5-point central second derivative
inline double second_derivative(const std::function<double(double)>& f, double x, double h) {
    return (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) -
            f(x - 2.0 * h)) /
           (12.0 * h * h);
}

struct PanelRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1] from the Legendre Jacobi matrix
inline PanelRule gauss_legendre(std::size_t n) {
    specpot::TridiagonalSymmetric t;
    t.diag.assign(n, 0.0);
    t.offdiag.resize(n - 1);
    for (std::size_t k = 1; k < n; ++k) {
        const double kd = static_cast<double>(k);
        t.offdiag[k - 1] = kd / std::sqrt(4.0 * kd * kd - 1.0);
    }
    const specpot::EigenDecomposition eig = specpot::tridiag_eigen(t);
    PanelRule r;
    r.nodes = eig.values;
    r.weights.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double v0 = eig.vectors(0, j);
        r.weights[j] = 2.0 * v0 * v0;  // total mass of dx on [-1, 1]
    }
    return r;
}

// integrates f over fixed panels with an n-point Gauss-Legendre rule each
inline double panel_integrate(const std::function<double(double)>& f,
                              const std::vector<double>& breakpoints, std::size_t n_per_panel) {
    const PanelRule rule = gauss_legendre(n_per_panel);
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
        const double lo = breakpoints[p];
        const double hi = breakpoints[p + 1];
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            total += half * rule.weights[j] * f(mid + half * rule.nodes[j]);
        }
    }
    return total;
}

// matrix exponential by scaling-and-squaring on a Taylor series
inline specpot::Matrix expm_taylor(const specpot::Matrix& m) {
    using specpot::Matrix;
    double norm = 0.0;
    for (std::size_t i = 0; i < m.n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < m.n; ++j) row += std::abs(m(i, j));
        norm = std::max(norm, row);
    }
    int squarings = 0;
    double scale = 1.0;
    while (norm * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    Matrix x = scale * m;
    Matrix result = Matrix::identity(m.n);
    Matrix term = Matrix::identity(m.n);
    for (int k = 1; k <= 30; ++k) {
        term = (1.0 / static_cast<double>(k)) * specpot::matmul(term, x);
        result = result + term;
    }
    for (int s = 0; s < squarings; ++s) result = specpot::matmul(result, result);
    return result;
}

}  // namespace oracle
