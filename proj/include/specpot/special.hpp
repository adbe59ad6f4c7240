#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>

#include "specpot/errors.hpp"

namespace specpot {

struct LogGammaResult {
    double log_modulus;  // ln |Gamma(z)|
    double argument;     // arg Gamma(z), continuous branch (Im of log-Gamma)
};

// log-magnitude plus sign, for products that overflow double range
struct SignedLog {
    double log;  // ln |value|, -inf when value == 0
    int sign;    // -1, 0, +1
};

namespace detail {

// Lanczos approximation, g = 607/128, 15 terms
inline constexpr double kLanczosG = 607.0 / 128.0;

inline constexpr double kLanczosC[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // ln sqrt(2 pi)
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLn2 = 0.69314718055994530942;

// valid on Re(z) >= 0.5
inline std::complex<double> log_gamma_lanczos(std::complex<double> z) {
    std::complex<double> sum = kLanczosC[0];
    for (int k = 1; k < 15; ++k) {
        sum += kLanczosC[k] / (z - 1.0 + static_cast<double>(k));
    }
    const std::complex<double> t = z - 0.5 + kLanczosG;
    return kLogSqrt2Pi + (z - 0.5) * std::log(t) - t + std::log(sum);
}

// ln sin(pi z) on the branch continuous in the upper half plane:
//   sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z}),  |e^{2 i pi z}| < 1 for Im z > 0
inline std::complex<double> log_sin_pi_upper(std::complex<double> z) {
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> w = std::exp(2.0 * i * kPi * z);
    return -i * kPi * z + i * (kPi / 2.0) - kLn2 + std::log(1.0 - w);
}

}  // namespace detail

// log-Gamma on the branch whose imaginary part is the continuously tracked
// argument (no wrapping to (-pi, pi]); branch cut on the negative real axis
inline std::complex<double> log_gamma_complex(std::complex<double> z) {
    const double re = z.real();
    const double im = z.imag();

    const double nearest = std::round(re);
    if (nearest <= 0.0 && std::abs(re - nearest) < 1e-13 && std::abs(im) < 1e-13) {
        throw PoleError("log_gamma: argument at non-positive integer " +
                        std::to_string(nearest));
    }

    if (re >= 0.5) {
        return detail::log_gamma_lanczos(z);
    }
    if (im >= 0.0) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(detail::kPi) - detail::log_sin_pi_upper(z) -
               detail::log_gamma_lanczos(1.0 - z);
    }
    return std::conj(log_gamma_complex(std::conj(z)));
}

inline LogGammaResult log_gamma(std::complex<double> z) {
    const std::complex<double> w = log_gamma_complex(z);
    return LogGammaResult{w.real(), w.imag()};
}

// arg Gamma(z) on the continuous branch
inline double gamma_arg(std::complex<double> z) {
    return log_gamma_complex(z).imag();
}

// ln Gamma(x) for real x > 0
inline double log_gamma_real(double x) {
    if (!(x > 0.0)) {
        throw DomainError("log_gamma_real: requires x > 0, got " + std::to_string(x));
    }
    return std::lgamma(x);
}

// Pochhammer symbol (a)_n, plain left-to-right product
inline double pochhammer(double a, std::size_t n) {
    double p = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        p *= a + static_cast<double>(j);
    }
    return p;
}

// Pochhammer in log-magnitude/sign form, safe against overflow
inline SignedLog pochhammer_signed(double a, std::size_t n) {
    SignedLog r{0.0, 1};
    for (std::size_t j = 0; j < n; ++j) {
        const double f = a + static_cast<double>(j);
        if (f == 0.0) {
            return SignedLog{-std::numeric_limits<double>::infinity(), 0};
        }
        r.log += std::log(std::abs(f));
        if (f < 0.0) r.sign = -r.sign;
    }
    return r;
}

}  // namespace specpot
