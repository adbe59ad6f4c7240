#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "specpot/errors.hpp"
#include "specpot/linalg.hpp"
#include "specpot/ortho_poly.hpp"
#include "specpot/system.hpp"

namespace specpot {

inline constexpr std::size_t kDefaultBasisSize = 60;

// kinetic energy of the Morse-adapted Laguerre basis
inline Matrix kinetic_laguerre_morse(const PhysicalParams& p, std::size_t n_size) {
    const double nu = p.nu;
    const double lam2 = p.lambda * p.lambda;
    Matrix j(n_size);
    for (std::size_t n = 0; n < n_size; ++n) {
        const double nd = static_cast<double>(n);
        j(n, n) = 2.0 * (nd + nu);
        if (n + 1 < n_size) {
            const double b = -std::sqrt((nd + 1.0) * (nd + 2.0 * nu));
            j(n, n + 1) = b;
            j(n + 1, n) = b;
        }
    }
    const Matrix j2 = matmul(j, j);
    Matrix t(n_size);
    for (std::size_t n = 0; n < n_size; ++n) {
        const double nd = static_cast<double>(n);
        for (std::size_t m = 0; m < n_size; ++m) {
            double v = 0.25 * j2(n, m);
            if (n == m) v -= 2.0 * (nd + nu) * (nd + nu) + nu * (1.0 - nu);
            if (n == m + 1) v += (nd + nu - 0.5) * std::sqrt(nd * (nd + 2.0 * nu - 1.0));
            if (n + 1 == m) v += (nd + nu + 0.5) * std::sqrt((nd + 1.0) * (nd + 2.0 * nu));
            t(n, m) = -(lam2 / 2.0) * v;
        }
    }
    return t;
}

inline Matrix kinetic_radial_laguerre(const PhysicalParams& p, std::size_t n_size) {
    const double al = p.ell + 0.5;
    const double lam2 = p.lambda * p.lambda;
    Matrix t(n_size);
    for (std::size_t n = 0; n < n_size; ++n) {
        const double nd = static_cast<double>(n);
        t(n, n) = (lam2 / 2.0) * (2.0 * nd + al + 1.0);
        if (n + 1 < n_size) {
            const double b = (lam2 / 2.0) * std::sqrt((nd + 1.0) * (nd + al + 1.0));
            t(n, n + 1) = b;
            t(n + 1, n) = b;
        }
    }
    return t;
}

inline Matrix kinetic_hermite(const PhysicalParams& p, std::size_t n_size) {
    const double lam2 = p.lambda * p.lambda;
    Matrix t(n_size);
    for (std::size_t n = 0; n < n_size; ++n) {
        const double nd = static_cast<double>(n);
        t(n, n) = (lam2 / 4.0) * (2.0 * nd + 1.0);
        if (n + 2 < n_size) {
            const double b = -(lam2 / 4.0) * std::sqrt((nd + 1.0) * (nd + 2.0));
            t(n, n + 2) = b;
            t(n + 2, n) = b;
        }
    }
    return t;
}

// Gegenbauer kinetic matrix; assembled from the position operator K and K^2,
// then symmetrized, with the raw asymmetry reported for diagnostics
inline Matrix kinetic_gegenbauer(const PhysicalParams& p, std::size_t n_size,
                                 double* asymmetry_out = nullptr) {
    const double nu = p.nu;
    const double lam2 = p.lambda * p.lambda;
    auto g = [nu](double n) {
        return 0.5 * std::sqrt((n + 1.0) * (n + 2.0 * nu) / ((n + nu) * (n + nu + 1.0)));
    };
    Matrix k(n_size);
    for (std::size_t n = 0; n + 1 < n_size; ++n) {
        const double gn = g(static_cast<double>(n));
        k(n, n + 1) = gn;
        k(n + 1, n) = gn;
    }
    const Matrix k2 = matmul(k, k);
    Matrix t(n_size);
    for (std::size_t n = 0; n < n_size; ++n) {
        const double nd = static_cast<double>(n);
        for (std::size_t m = 0; m < n_size; ++m) {
            double v = -((nd + nu) * (nd + nu) + 2.0 * nu + 0.75) * k2(m, n);
            if (n == m) v += nd * nd + (2.0 * nd + 1.0) * nu + 0.5;
            const double km1 = (n + 1 < n_size) ? k(m, n + 1) : 0.0;
            const double km2 = (n >= 1) ? k(m, n - 1) : 0.0;
            v += -2.0 * nd * g(nd) * km1;
            if (n >= 1) v += 2.0 * (nd + 2.0 * nu) * g(nd - 1.0) * km2;
            t(n, m) = (lam2 / 2.0) * v;
        }
    }
    const double asym = max_asymmetry(t);
    if (asymmetry_out) *asymmetry_out = asym;
    symmetrize(t);
    return t;
}

inline Matrix kinetic_matrix(BasisFamily family, const PhysicalParams& p, std::size_t n_size,
                             double* asymmetry_out = nullptr) {
    if (asymmetry_out) *asymmetry_out = 0.0;
    switch (family) {
        case BasisFamily::LaguerreMorse: return kinetic_laguerre_morse(p, n_size);
        case BasisFamily::RadialLaguerre: return kinetic_radial_laguerre(p, n_size);
        case BasisFamily::Hermite: return kinetic_hermite(p, n_size);
        case BasisFamily::Gegenbauer: return kinetic_gegenbauer(p, n_size, asymmetry_out);
    }
    throw DomainError("kinetic_matrix: unknown basis family");
}

struct OperatorMatrices {
    SystemTag tag = SystemTag::Morse;
    PhysicalParams params;
    std::size_t n_size = 0;
    TridiagonalSymmetric r;  // Jacobi matrix of the recursion
    Matrix h;                // E(R)
    Matrix t;                // kinetic part
    Matrix v;                // h - t, symmetrized
    double v_asymmetry = 0.0;
    double kinetic_asymmetry = 0.0;
    bool degenerate_recursion = false;
};

// builds R, H = E(R), T and V = H - T for one system at basis size n_size
inline OperatorMatrices assemble(SystemTag tag, const SpectralMap& map,
                                 const PhysicalParams& params, std::size_t n_size) {
    if (n_size == 0) {
        throw DomainError("assemble: basis size must be positive");
    }
    OperatorMatrices out;
    out.tag = tag;
    out.params = params;
    out.n_size = n_size;

    const RecursionCoefficients coeffs =
        cdh_recursion(params, n_size, DegeneratePolicy::Allow);
    for (std::size_t i = 0; i + 1 < n_size; ++i) {
        if (coeffs.offdiag[i] == 0.0) out.degenerate_recursion = true;
    }
    out.r = jacobi_matrix(coeffs, n_size);

    if (tag == SystemTag::Morse) {
        // the undeformed energy map is linear, so E(R) is exact as a scaled copy
        // of R; the eigendecomposition route would scatter O(eps*|R|) noise into
        // the far bands, which the basis polynomials amplify exponentially at the
        // outer quadrature nodes during reconstruction
        const double c = 0.5 * params.lambda * params.lambda;
        out.h = dense_from_tridiag(out.r);
        for (std::size_t i = 0; i < n_size; ++i) {
            for (std::size_t j = 0; j < n_size; ++j) out.h(i, j) *= c;
        }
    } else {
        out.h = matrix_function(out.r, map.forward);
    }

    if (tag == SystemTag::RadialInverse) {
        // the inverse enters E(R); verify the spectral path against the
        // closed-form recursion path before accepting the result
        const Matrix inv_spectral = matrix_function(out.r, [](double s) { return 1.0 / s; });
        const Matrix inv_closed = tridiag_inverse_closed_form(out.r);
        const double diff = max_abs(inv_spectral - inv_closed);
        const double scale = std::max(1.0, max_abs(inv_closed));
        if (diff > 1e-8 * scale) {
            throw ConsistencyError(
                "assemble: spectral and closed-form inverses disagree, max diff = " +
                std::to_string(diff));
        }
    }

    out.t = kinetic_matrix(basis_for(tag), params, n_size, &out.kinetic_asymmetry);
    out.v = out.h - out.t;
    out.v_asymmetry = max_asymmetry(out.v);
    const double vscale = std::max(max_abs(out.v), 1e-300);
    if (out.v_asymmetry > 1e-6 * vscale) {
        throw ConsistencyError("assemble: potential matrix asymmetry " +
                               std::to_string(out.v_asymmetry) + " exceeds tolerance");
    }
    symmetrize(out.v);
    return out;
}

}  // namespace specpot
