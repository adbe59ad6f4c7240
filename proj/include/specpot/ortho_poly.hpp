#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "specpot/errors.hpp"
#include "specpot/linalg.hpp"
#include "specpot/special.hpp"
#include "specpot/system.hpp"

namespace specpot {

// three-term recursion B_n P_{n+1} = (s - A_n) P_n - B_{n-1} P_{n-1}
struct RecursionCoefficients {
    std::vector<double> diag;     // A_n
    std::vector<double> offdiag;  // B_n

    std::size_t size() const { return diag.size(); }
};

enum class DegeneratePolicy { Strict, Allow };

// coefficient table of the spectrum-generating recursion
inline RecursionCoefficients cdh_recursion(const PhysicalParams& params, std::size_t n_count,
                                           DegeneratePolicy policy = DegeneratePolicy::Strict) {
    const double mu = params.mu;
    const double a = params.a;
    RecursionCoefficients c;
    c.diag.resize(n_count);
    c.offdiag.resize(n_count);
    for (std::size_t i = 0; i < n_count; ++i) {
        const double n = static_cast<double>(i);
        const double npa = n + mu + a;
        c.diag[i] = npa * npa + n * (n + 2.0 * a - 1.0) - mu * mu;
        c.offdiag[i] = -npa * std::sqrt((n + 1.0) * (n + 2.0 * a));
        if (c.offdiag[i] == 0.0 && policy == DegeneratePolicy::Strict) {
            throw DegenerateRecursionError("cdh_recursion: B_n vanished at n = " +
                                           std::to_string(i) + " (mu + a = " +
                                           std::to_string(mu + a) + ")");
        }
    }
    return c;
}

// P_0(s) .. P_{n_max}(s) by forward recursion
inline std::vector<double> eval_recursion(const RecursionCoefficients& c, double s,
                                          std::size_t n_max) {
    std::vector<double> p(n_max + 1);
    p[0] = 1.0;
    for (std::size_t n = 0; n < n_max; ++n) {
        if (c.offdiag[n] == 0.0) {
            throw ZeroOffdiagError("eval_recursion: zero off-diagonal at n = " +
                                   std::to_string(n));
        }
        const double prev = (n == 0) ? 0.0 : c.offdiag[n - 1] * p[n - 1];
        p[n + 1] = ((s - c.diag[n]) * p[n] - prev) / c.offdiag[n];
    }
    return p;
}

inline TridiagonalSymmetric jacobi_matrix(const RecursionCoefficients& c, std::size_t n) {
    if (n > c.size()) {
        throw DomainError("jacobi_matrix: requested size exceeds coefficient table");
    }
    TridiagonalSymmetric t;
    t.diag.assign(c.diag.begin(), c.diag.begin() + static_cast<std::ptrdiff_t>(n));
    if (n > 0) {
        t.offdiag.assign(c.offdiag.begin(), c.offdiag.begin() + static_cast<std::ptrdiff_t>(n - 1));
    }
    return t;
}

inline std::vector<double> quadrature_nodes(const RecursionCoefficients& c, std::size_t n) {
    return tridiag_eigen(jacobi_matrix(c, n)).values;
}

struct GaussRule {
    std::vector<double> nodes;    // ascending
    std::vector<double> weights;  // first-row squared components; measure mass 1
};

inline GaussRule gauss_rule(const RecursionCoefficients& c, std::size_t n) {
    const EigenDecomposition eig = tridiag_eigen(jacobi_matrix(c, n));
    GaussRule g;
    g.nodes = eig.values;
    g.weights.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double v0 = eig.vectors(0, j);
        g.weights[j] = v0 * v0;
    }
    return g;
}

enum class BasisFamily { LaguerreMorse, RadialLaguerre, Hermite, Gegenbauer };

inline const char* basis_name(BasisFamily f) {
    switch (f) {
        case BasisFamily::LaguerreMorse: return "laguerre-morse";
        case BasisFamily::RadialLaguerre: return "radial-laguerre";
        case BasisFamily::Hermite: return "hermite";
        case BasisFamily::Gegenbauer: return "gegenbauer";
    }
    return "?";
}

inline BasisFamily basis_for(SystemTag tag) {
    switch (tag) {
        case SystemTag::Morse: return BasisFamily::LaguerreMorse;
        case SystemTag::RadialInverse: return BasisFamily::RadialLaguerre;
        case SystemTag::ExpGauss: return BasisFamily::Hermite;
        case SystemTag::Sinh: return BasisFamily::Gegenbauer;
    }
    return BasisFamily::Hermite;
}

// orthonormal configuration-space basis phi_n(x) = W(y) Q_n(y), with Q_n the
// orthonormal classical polynomials (Q_0 = 1 against the normalized measure)
// and W carrying the square-rooted weight plus Jacobian factors
struct BasisSet {
    BasisFamily family;
    double lambda = 1.0;
    double nu = 0.0;  // LaguerreMorse / Gegenbauer parameter
    int ell = 0;      // RadialLaguerre angular momentum

    double y_of_x(double x) const {
        switch (family) {
            case BasisFamily::LaguerreMorse: return std::exp(-lambda * x);
            case BasisFamily::RadialLaguerre: return lambda * lambda * x * x;
            case BasisFamily::Hermite: return lambda * x;
            case BasisFamily::Gegenbauer: return std::tanh(lambda * x);
        }
        return 0.0;
    }

    double x_of_y(double y) const {
        switch (family) {
            case BasisFamily::LaguerreMorse: return -std::log(y) / lambda;
            case BasisFamily::RadialLaguerre: return std::sqrt(y) / lambda;
            case BasisFamily::Hermite: return y / lambda;
            case BasisFamily::Gegenbauer: return std::atanh(y) / lambda;
        }
        return 0.0;
    }

    bool y_in_range(double y) const {
        switch (family) {
            case BasisFamily::LaguerreMorse:
            case BasisFamily::RadialLaguerre:
                return y > 0.0;
            case BasisFamily::Hermite:
                return std::isfinite(y);
            case BasisFamily::Gegenbauer:
                return y > -1.0 && y < 1.0;
        }
        return false;
    }

    bool in_domain(double x) const {
        if (family == BasisFamily::RadialLaguerre) return x > 0.0;
        return std::isfinite(x);
    }

    std::pair<double, double> ab(std::size_t n) const {
        const double nn = static_cast<double>(n);
        switch (family) {
            case BasisFamily::LaguerreMorse: {
                const double al = 2.0 * nu - 1.0;
                return {2.0 * nn + al + 1.0, -std::sqrt((nn + 1.0) * (nn + al + 1.0))};
            }
            case BasisFamily::RadialLaguerre: {
                const double al = ell + 0.5;
                return {2.0 * nn + al + 1.0, -std::sqrt((nn + 1.0) * (nn + al + 1.0))};
            }
            case BasisFamily::Hermite:
                return {0.0, std::sqrt((nn + 1.0) / 2.0)};
            case BasisFamily::Gegenbauer:
                return {0.0, 0.5 * std::sqrt((nn + 1.0) * (nn + 2.0 * nu) /
                                             ((nn + nu) * (nn + nu + 1.0)))};
        }
        return {0.0, 0.0};
    }

    double log_weight(double y) const {
        switch (family) {
            case BasisFamily::LaguerreMorse:
                return 0.5 * (std::log(lambda) - std::lgamma(2.0 * nu)) + nu * std::log(y) -
                       0.5 * y;
            case BasisFamily::RadialLaguerre:
                return 0.5 * (std::log(2.0 * lambda) - std::lgamma(ell + 1.5)) +
                       0.5 * (ell + 1.0) * std::log(y) - 0.5 * y;
            case BasisFamily::Hermite:
                return 0.5 * (std::log(lambda) - 0.5 * std::log(detail::kPi)) - 0.5 * y * y;
            case BasisFamily::Gegenbauer: {
                const double log_h = 0.5 * std::log(detail::kPi) + std::lgamma(nu + 0.5) -
                                     std::lgamma(nu + 1.0);
                return 0.5 * (std::log(lambda) - log_h) +
                       (2.0 * nu + 1.0) / 4.0 * std::log1p(-y * y);
            }
        }
        return 0.0;
    }

    RecursionCoefficients recursion(std::size_t n_count) const {
        RecursionCoefficients c;
        c.diag.resize(n_count);
        c.offdiag.resize(n_count);
        for (std::size_t n = 0; n < n_count; ++n) {
            const auto [an, bn] = ab(n);
            c.diag[n] = an;
            c.offdiag[n] = bn;
        }
        return c;
    }
};

inline BasisSet make_basis(BasisFamily family, const PhysicalParams& params) {
    BasisSet b;
    b.family = family;
    b.lambda = params.lambda;
    b.nu = params.nu;
    b.ell = params.ell;
    if ((family == BasisFamily::LaguerreMorse || family == BasisFamily::Gegenbauer) &&
        !(b.nu > 0.0)) {
        throw ParamError("nu must be positive");
    }
    if (family == BasisFamily::RadialLaguerre && b.ell < 0) {
        throw ParamError("ell must be non-negative");
    }
    return b;
}

// bare orthonormal polynomials Q_0(y) .. Q_{n_max}(y)
inline std::vector<double> basis_poly_all(const BasisSet& basis, std::size_t n_max, double y) {
    std::vector<double> q(n_max + 1);
    q[0] = 1.0;
    double bprev = 0.0;
    for (std::size_t n = 0; n < n_max; ++n) {
        const auto [an, bn] = basis.ab(n);
        const double prev = (n == 0) ? 0.0 : bprev * q[n - 1];
        q[n + 1] = ((y - an) * q[n] - prev) / bn;
        bprev = bn;
    }
    return q;
}

// phi_0(x) .. phi_{n_max}(x)
inline std::vector<double> basis_eval_all(const BasisSet& basis, std::size_t n_max, double x) {
    if (!basis.in_domain(x)) {
        throw DomainError("basis_eval: x outside the basis domain");
    }
    const double y = basis.y_of_x(x);
    std::vector<double> phi(n_max + 1, 0.0);
    if (!basis.y_in_range(y)) {
        return phi;  // weight vanishes on the boundary (e.g. tanh saturated)
    }
    const double w = std::exp(basis.log_weight(y));
    std::vector<double> q = basis_poly_all(basis, n_max, y);
    for (std::size_t n = 0; n <= n_max; ++n) phi[n] = w * q[n];
    return phi;
}

inline double basis_eval(const BasisSet& basis, std::size_t n, double x) {
    return basis_eval_all(basis, n, x)[n];
}

// residual of the classical Gegenbauer differentiation identity, with the
// derivative replaced by a central finite difference (self-test hook)
inline double gegenbauer_derivative_identity(double nu, std::size_t n, double y) {
    if (!(std::abs(y) < 1.0)) {
        throw DomainError("gegenbauer_derivative_identity: requires |y| < 1");
    }
    auto cgeg = [nu](std::size_t n_max, double t) {
        std::vector<double> c(n_max + 1, 0.0);
        c[0] = 1.0;
        if (n_max >= 1) c[1] = 2.0 * nu * t;
        for (std::size_t m = 1; m < n_max; ++m) {
            const double md = static_cast<double>(m);
            c[m + 1] = (2.0 * t * (md + nu) * c[m] - (md + 2.0 * nu - 1.0) * c[m - 1]) /
                       (md + 1.0);
        }
        return c;
    };
    const double h = 1e-5;
    const double d = (cgeg(n, y + h)[n] - cgeg(n, y - h)[n]) / (2.0 * h);
    const std::vector<double> c = cgeg(n + 1, y);
    const double nd = static_cast<double>(n);
    const double cm1 = (n == 0) ? 0.0 : c[n - 1];
    const double lhs = (1.0 - y * y) * d;
    const double rhs = 0.5 / (nd + nu) *
                       ((nd + 2.0 * nu) * (nd + 2.0 * nu - 1.0) * cm1 -
                        nd * (nd + 1.0) * c[n + 1]);
    return std::abs(lhs - rhs);
}

}  // namespace specpot
