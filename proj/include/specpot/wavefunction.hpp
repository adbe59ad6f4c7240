#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "specpot/errors.hpp"
#include "specpot/ortho_poly.hpp"
#include "specpot/system.hpp"

namespace specpot {

struct WavefunctionSample {
    double x = 0.0;
    double value = 0.0;
    // running max |partial sum| at truncations N/4, N/2, 3N/4, N
    std::array<double, 4> partial_norms{};
};

namespace detail {

// partial sums of sum_n P_n(s) phi_n(x), with running-max checkpoints
inline WavefunctionSample series_sample(const PhysicalParams& params, const BasisSet& basis,
                                        double s, double x, std::size_t n_terms,
                                        double prefactor) {
    if (n_terms == 0) {
        throw DomainError("wavefunction: series needs at least one term");
    }
    const RecursionCoefficients coeffs = cdh_recursion(params, n_terms);
    std::vector<double> p(n_terms);
    p[0] = 1.0;
    for (std::size_t n = 0; n + 1 < n_terms; ++n) {
        const double prev = (n == 0) ? 0.0 : coeffs.offdiag[n - 1] * p[n - 1];
        p[n + 1] = ((s - coeffs.diag[n]) * p[n] - prev) / coeffs.offdiag[n];
    }
    const std::vector<double> phi = basis_eval_all(basis, n_terms - 1, x);

    std::array<std::size_t, 4> markers{};
    for (std::size_t i = 0; i < 4; ++i) {
        markers[i] = std::max<std::size_t>(1, (n_terms * (i + 1)) / 4);
    }

    WavefunctionSample out;
    out.x = x;
    double sum = 0.0, run_max = 0.0;
    std::size_t mi = 0;
    for (std::size_t n = 0; n < n_terms; ++n) {
        sum += p[n] * phi[n];
        run_max = std::max(run_max, std::abs(sum));
        while (mi < 4 && n + 1 == markers[mi]) {
            out.partial_norms[mi] = prefactor * run_max;
            ++mi;
        }
    }
    while (mi < 4) {
        out.partial_norms[mi] = prefactor * run_max;
        ++mi;
    }
    out.value = prefactor * sum;
    return out;
}

}  // namespace detail

// bound level k at position x, truncated to n_terms basis functions
inline WavefunctionSample bound_component(const PhysicalParams& params, const BasisSet& basis,
                                          int k, double x, std::size_t n_terms) {
    if (k < 0 || k > bound_level_count_max(params.mu)) {
        throw DomainError("bound_component: level index out of range, k_max = " +
                          std::to_string(bound_level_count_max(params.mu)));
    }
    const double zk = static_cast<double>(k) + params.mu;
    const double w = weight_omega(params, k);
    if (!(w >= 0.0)) {
        throw DomainError("bound_component: negative weight at level " + std::to_string(k));
    }
    return detail::series_sample(params, basis, -zk * zk, x, n_terms, std::sqrt(w));
}

// continuum state at energy E and position x
inline WavefunctionSample continuum_component(const SpectralMap& map,
                                              const PhysicalParams& params,
                                              const BasisSet& basis, double E, double x,
                                              std::size_t n_terms) {
    if (!map.in_continuum(E)) {
        throw DomainError("continuum_component: energy not in the continuum");
    }
    const double z = map.z_of_E(E);
    return detail::series_sample(params, basis, z * z, x, n_terms,
                                 std::sqrt(weight_rho(params, z)));
}

// growth ratio of the raw partial sums; >> 1 flags an off-spectrum energy
inline double divergence_diagnostic(const SpectralMap& map, const PhysicalParams& params,
                                    const BasisSet& basis, double E,
                                    const std::vector<double>& x_probe, std::size_t n_terms) {
    const double s = map.inverse(E);
    if (!std::isfinite(s)) {
        throw DomainError("divergence_diagnostic: z^2(E) undefined at E = " +
                          std::to_string(E));
    }
    double ratio = 1.0;
    for (double x : x_probe) {
        const WavefunctionSample w = detail::series_sample(params, basis, s, x, n_terms, 1.0);
        const double first = w.partial_norms.front();
        const double last = w.partial_norms.back();
        if (first > 0.0) {
            ratio = std::max(ratio, last / first);
        } else if (last > 0.0) {
            ratio = std::numeric_limits<double>::infinity();
        }
    }
    return ratio;
}

// discrete-part time evolution sum_k e^{-i E_k t} psi_k(x)
inline std::complex<double> time_evolution(const SpectralMap& map, const PhysicalParams& params,
                                           const BasisSet& basis, double t, double x,
                                           std::size_t n_terms) {
    const SpectrumResult spec = bound_spectrum(map, params);
    std::complex<double> acc(0.0, 0.0);
    for (int k = 0; k <= spec.k_max; ++k) {
        const double psi = bound_component(params, basis, k, x, n_terms).value;
        acc += std::exp(std::complex<double>(0.0, -spec.energies[static_cast<std::size_t>(k)] * t)) * psi;
    }
    return acc;
}

}  // namespace specpot
