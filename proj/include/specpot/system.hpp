#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "specpot/errors.hpp"
#include "specpot/special.hpp"

namespace specpot {

enum class SystemTag { Morse, RadialInverse, ExpGauss, Sinh };

inline const char* system_name(SystemTag tag) {
    switch (tag) {
        case SystemTag::Morse: return "morse";
        case SystemTag::RadialInverse: return "radial";
        case SystemTag::ExpGauss: return "expgauss";
        case SystemTag::Sinh: return "sinh";
    }
    return "?";
}

struct PhysicalParams {
    double mu = std::numeric_limits<double>::quiet_NaN();
    double a = std::numeric_limits<double>::quiet_NaN();
    double lambda = 1.0;
    double alpha = std::numeric_limits<double>::quiet_NaN();  // deformation rate
    double nu = std::numeric_limits<double>::quiet_NaN();     // basis parameter, defaults to a
    int ell = 0;                                              // angular momentum (radial)
};

inline bool is_near_integer(double x) {
    return std::abs(x - std::round(x)) < 1e-12;
}

// checks the parameter set for one system and fills basis defaults
inline PhysicalParams validated(SystemTag tag, PhysicalParams p) {
    if (!std::isfinite(p.mu) || p.mu >= 0.0 || is_near_integer(p.mu)) {
        throw ParamError("mu must be negative non-integer");
    }
    if (!std::isfinite(p.a) || p.a <= 0.0) {
        throw ParamError("a must be positive");
    }
    if (!std::isfinite(p.lambda) || p.lambda <= 0.0) {
        throw ParamError("lambda must be positive");
    }
    const bool needs_alpha = tag != SystemTag::Morse;
    if (needs_alpha) {
        if (!std::isfinite(p.alpha) || p.alpha <= 0.0) {
            throw ParamError("alpha must be positive");
        }
    } else {
        p.alpha = 0.0;
    }
    if (std::isnan(p.nu)) p.nu = p.a;
    if (tag == SystemTag::Morse || tag == SystemTag::Sinh) {
        if (!(p.nu > 0.0)) {
            throw ParamError("nu must be positive");
        }
    }
    if (tag == SystemTag::RadialInverse && p.ell < 0) {
        throw ParamError("ell must be non-negative");
    }
    return p;
}

// energy as a function of s = z^2 and its inverse, plus the continuum chart
struct SpectralMap {
    std::function<double(double)> forward;   // s -> E
    std::function<double(double)> inverse;   // E -> s
    std::function<double(double)> z_of_E;    // E in continuum -> z > 0
    std::function<bool(double)> in_continuum;
};

inline SpectralMap make_custom_map(std::function<double(double)> forward,
                                   std::function<double(double)> inverse) {
    SpectralMap m;
    m.forward = std::move(forward);
    m.inverse = std::move(inverse);
    m.z_of_E = [inv = m.inverse](double E) {
        const double s = inv(E);
        if (!(s > 0.0)) {
            throw DomainError("z_of_E: energy maps to s <= 0");
        }
        return std::sqrt(s);
    };
    m.in_continuum = [inv = m.inverse](double E) { return inv(E) > 0.0; };
    return m;
}

inline SpectralMap make_map(SystemTag tag, const PhysicalParams& params) {
    const double lam2 = params.lambda * params.lambda;
    const double alpha = params.alpha;
    SpectralMap m;
    switch (tag) {
        case SystemTag::Morse:
            m.forward = [lam2](double s) { return 0.5 * lam2 * s; };
            m.inverse = [lam2](double E) { return 2.0 * E / lam2; };
            break;
        case SystemTag::RadialInverse:
            m.forward = [lam2, alpha](double s) {
                return 0.5 * lam2 * (s - alpha * alpha / s);
            };
            // s = e + sqrt(e^2 + alpha^2), written without cancellation
            m.inverse = [lam2, alpha](double E) {
                const double e = E / lam2;
                const double h = std::hypot(e, alpha);
                return e >= 0.0 ? e + h : alpha * alpha / (h - e);
            };
            break;
        case SystemTag::ExpGauss:
            m.forward = [lam2, alpha](double s) { return 0.5 * lam2 * std::expm1(alpha * s); };
            m.inverse = [lam2, alpha](double E) {
                return std::log1p(2.0 * E / lam2) / alpha;
            };
            break;
        case SystemTag::Sinh:
            m.forward = [lam2, alpha](double s) { return 0.5 * lam2 * std::sinh(alpha * s); };
            m.inverse = [lam2, alpha](double E) {
                return std::asinh(2.0 * E / lam2) / alpha;
            };
            break;
    }
    m.z_of_E = [inv = m.inverse](double E) {
        const double s = inv(E);
        if (!(s > 0.0)) {
            throw DomainError("z_of_E: energy not in the continuum");
        }
        return std::sqrt(s);
    };
    if (tag == SystemTag::RadialInverse) {
        // the map covers all real energies with s > 0
        m.in_continuum = [](double E) { return std::isfinite(E); };
    } else {
        m.in_continuum = [](double E) { return E > 0.0; };
    }
    return m;
}

inline int bound_level_count_max(double mu) {
    return static_cast<int>(std::floor(-mu));
}

// discrete weight omega_k of the bound level k, log-space with sign tracking
inline double weight_omega(const PhysicalParams& params, int k) {
    const double mu = params.mu;
    const double a = params.a;
    if (k < 0 || k > bound_level_count_max(mu)) {
        throw DomainError("weight_omega: level index out of range");
    }
    const std::size_t n = static_cast<std::size_t>(k);
    const SignedLog p2mu = pochhammer_signed(2.0 * mu, n);
    const SignedLog pma = pochhammer_signed(mu + a, n);
    const SignedLog pden = pochhammer_signed(mu - a + 1.0, n);
    if (pden.sign == 0) {
        throw PoleError("weight_omega: pole in denominator Pochhammer at k = " +
                        std::to_string(k));
    }
    if (pma.sign == 0 || p2mu.sign == 0) {
        return 0.0;
    }
    const double kpm = k + mu;
    double lg = std::log(std::abs(kpm)) - std::lgamma(static_cast<double>(k) + 1.0);
    lg += std::log(2.0) + p2mu.log - log_gamma_real(2.0 * a) - log_gamma_real(1.0 - 2.0 * mu);
    lg += 2.0 * (log_gamma_real(a - mu) + pma.log - pden.log);
    int sign = (kpm < 0.0 ? -1 : 1) * ((k % 2 == 0) ? -1 : 1) * p2mu.sign;
    return sign * std::exp(lg);
}

// continuous weight rho(z), z > 0, log-space
inline double weight_rho(const PhysicalParams& params, double z) {
    if (!(z > 0.0)) {
        throw DomainError("weight_rho: requires z > 0");
    }
    const double mu = params.mu;
    const double a = params.a;
    const std::complex<double> iz(0.0, z);
    double t = 2.0 * log_gamma_complex(mu + iz).real();
    t -= 2.0 * log_gamma_complex(2.0 * iz).real();
    t += 4.0 * log_gamma_complex(a + iz).real();
    t -= std::log(2.0 * detail::kPi) + log_gamma_real(2.0 * a);
    t -= 2.0 * log_gamma_complex(std::complex<double>(mu + a, 0.0)).real();
    return std::exp(t);
}

struct SpectrumResult {
    std::vector<double> energies;  // E_k, k = 0..k_max
    std::vector<double> omega;     // matching discrete weights
    int k_max = -1;
    double weight_sum = 0.0;       // sum of omega
    bool degenerate_weights = false;  // some omega_k collapsed to <= 0
};

inline SpectrumResult bound_spectrum(const SpectralMap& map, const PhysicalParams& params) {
    if (!(params.mu < 0.0)) {
        throw ParamError("bound_spectrum: mu must be negative");
    }
    SpectrumResult r;
    r.k_max = bound_level_count_max(params.mu);
    for (int k = 0; k <= r.k_max; ++k) {
        const double zk = k + params.mu;
        r.energies.push_back(map.forward(-zk * zk));
        const double w = weight_omega(params, k);
        r.omega.push_back(w);
        r.weight_sum += w;
        if (!(w > 0.0)) r.degenerate_weights = true;
    }
    return r;
}

// scattering phase shift at continuum energy E, from the continuously
// tracked Gamma arguments
inline double phase_shift(const SpectralMap& map, const PhysicalParams& params, double E) {
    if (!map.in_continuum(E)) {
        throw DomainError("phase_shift: energy not in the continuum");
    }
    const double z = map.z_of_E(E);
    const std::complex<double> iz(0.0, z);
    return gamma_arg(2.0 * iz) - gamma_arg(params.mu + iz) - 2.0 * gamma_arg(params.a + iz);
}

}  // namespace specpot
