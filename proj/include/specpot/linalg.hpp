#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "specpot/errors.hpp"

namespace specpot {

struct TridiagonalSymmetric {
    std::vector<double> diag;     // N entries
    std::vector<double> offdiag;  // N-1 entries, offdiag[i] couples (i, i+1)

    std::size_t size() const { return diag.size(); }
};

struct Matrix {
    std::size_t n = 0;
    std::vector<double> a;  // row-major, n x n

    Matrix() = default;
    explicit Matrix(std::size_t n_) : n(n_), a(n_ * n_, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    static Matrix identity(std::size_t n_) {
        Matrix m(n_);
        for (std::size_t i = 0; i < n_; ++i) m(i, i) = 1.0;
        return m;
    }
};

inline Matrix dense_from_tridiag(const TridiagonalSymmetric& t) {
    const std::size_t n = t.size();
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = t.diag[i];
        if (i + 1 < n) {
            m(i, i + 1) = t.offdiag[i];
            m(i + 1, i) = t.offdiag[i];
        }
    }
    return m;
}

inline Matrix matmul(const Matrix& x, const Matrix& y) {
    Matrix r(x.n);
    for (std::size_t i = 0; i < x.n; ++i) {
        for (std::size_t k = 0; k < x.n; ++k) {
            const double v = x(i, k);
            if (v == 0.0) continue;
            for (std::size_t j = 0; j < x.n; ++j) {
                r(i, j) += v * y(k, j);
            }
        }
    }
    return r;
}

inline Matrix operator+(const Matrix& x, const Matrix& y) {
    Matrix r(x.n);
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

inline Matrix operator-(const Matrix& x, const Matrix& y) {
    Matrix r(x.n);
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

inline Matrix operator*(double s, const Matrix& x) {
    Matrix r(x.n);
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = s * x.a[i];
    return r;
}

inline double max_abs(const Matrix& m) {
    double v = 0.0;
    for (double x : m.a) v = std::max(v, std::abs(x));
    return v;
}

inline double max_asymmetry(const Matrix& m) {
    double v = 0.0;
    for (std::size_t i = 0; i < m.n; ++i) {
        for (std::size_t j = i + 1; j < m.n; ++j) {
            v = std::max(v, std::abs(m(i, j) - m(j, i)));
        }
    }
    return v;
}

inline void symmetrize(Matrix& m) {
    for (std::size_t i = 0; i < m.n; ++i) {
        for (std::size_t j = i + 1; j < m.n; ++j) {
            const double s = 0.5 * (m(i, j) + m(j, i));
            m(i, j) = s;
            m(j, i) = s;
        }
    }
}

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column j is the eigenvector for values[j]
};

// implicit-shift QL with eigenvector accumulation (EISPACK tql2 lineage).
// An exactly zero off-diagonal splits the problem exactly, so block-diagonal
// inputs deflate without mixing the blocks.
inline EigenDecomposition tridiag_eigen(const TridiagonalSymmetric& t) {
    const std::size_t n = t.size();
    if (n == 0) {
        throw DomainError("tridiag_eigen: empty matrix");
    }
    std::vector<double> d = t.diag;
    std::vector<double> e(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) e[i] = t.offdiag[i];

    Matrix z = Matrix::identity(n);
    const double eps = std::numeric_limits<double>::epsilon();
    const std::size_t max_iter = 30 * n + 30;

    for (std::size_t l = 0; l < n; ++l) {
        std::size_t iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == max_iter) {
                    throw ConvergenceError("tridiag_eigen: QL iteration budget exhausted at index " +
                                           std::to_string(l));
                }
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                std::size_t i = m;
                bool underflow = false;
                while (i > l) {
                    --i;
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (std::size_t k = 0; k < n; ++k) {
                        f = z(k, i + 1);
                        z(k, i + 1) = s * z(k, i) + c * f;
                        z(k, i) = c * z(k, i) - s * f;
                    }
                }
                if (underflow && r == 0.0 && i > l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&d](std::size_t i, std::size_t j) { return d[i] < d[j]; });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = Matrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.values[j] = d[src];
        double vmax = 0.0;
        for (std::size_t i = 0; i < n; ++i) vmax = std::max(vmax, std::abs(z(i, src)));
        double flip = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(z(i, src)) > 1e-12 * vmax) {
                flip = z(i, src) > 0.0 ? 1.0 : -1.0;
                break;
            }
        }
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = flip * z(i, src);
    }
    return out;
}

// f(T) through the spectral decomposition; result symmetrized
inline Matrix matrix_function(const TridiagonalSymmetric& t,
                              const std::function<double(double)>& f) {
    const EigenDecomposition eig = tridiag_eigen(t);
    const std::size_t n = t.size();
    std::vector<double> fx(n);
    for (std::size_t j = 0; j < n; ++j) {
        fx[j] = f(eig.values[j]);
        if (!std::isfinite(fx[j])) {
            throw SingularityError("matrix_function: f is singular or overflows at eigenvalue " +
                                   std::to_string(eig.values[j]));
        }
    }
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                s += eig.vectors(i, k) * fx[k] * eig.vectors(j, k);
            }
            m(i, j) = s;
            m(j, i) = s;
        }
    }
    return m;
}

// closed-form inverse of a symmetric tridiagonal matrix via the two pivot
// recursions; products are accumulated as log-magnitude plus sign so that
// large N does not overflow
inline Matrix tridiag_inverse_closed_form(const TridiagonalSymmetric& t) {
    const std::size_t n = t.size();
    if (n == 0) {
        throw DomainError("tridiag_inverse_closed_form: empty matrix");
    }
    const std::vector<double>& A = t.diag;
    const std::vector<double>& B = t.offdiag;

    std::vector<double> C(n), D(n);
    C[n - 1] = A[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        if (C[i + 1] == 0.0 || !std::isfinite(C[i + 1])) {
            throw SingularError("tridiag_inverse_closed_form: zero pivot C at index " +
                                std::to_string(i + 1));
        }
        C[i] = A[i] - B[i] * B[i] / C[i + 1];
    }
    D[0] = A[0];
    for (std::size_t i = 1; i < n; ++i) {
        if (D[i - 1] == 0.0 || !std::isfinite(D[i - 1])) {
            throw SingularError("tridiag_inverse_closed_form: zero pivot D at index " +
                                std::to_string(i - 1));
        }
        D[i] = A[i] - B[i - 1] * B[i - 1] / D[i - 1];
    }
    if (C[0] == 0.0 || D[n - 1] == 0.0 || !std::isfinite(C[0]) || !std::isfinite(D[n - 1])) {
        throw SingularError("tridiag_inverse_closed_form: singular matrix");
    }

    // suffix log-sums for C and D, prefix log-sums for B, with sign parities
    std::vector<double> sc(n + 1, 0.0), sd(n + 1, 0.0);
    std::vector<int> pc(n + 1, 0), pd(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) {
        sc[i] = sc[i + 1] + std::log(std::abs(C[i]));
        pc[i] = pc[i + 1] + (C[i] < 0.0 ? 1 : 0);
        sd[i] = sd[i + 1] + std::log(std::abs(D[i]));
        pd[i] = pd[i + 1] + (D[i] < 0.0 ? 1 : 0);
    }
    std::vector<double> pb(n, 0.0);
    std::vector<int> nb(n, 0), zb(n, 0);  // sign parity and zero count prefixes
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double b = B[i];
        pb[i + 1] = pb[i] + (b == 0.0 ? 0.0 : std::log(std::abs(b)));
        nb[i + 1] = nb[i] + (b < 0.0 ? 1 : 0);
        zb[i + 1] = zb[i] + (b == 0.0 ? 1 : 0);
    }

    Matrix inv(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            if (j > i && zb[j] - zb[i] > 0) {
                continue;  // a zero B factor annihilates the entry
            }
            const double lg = sc[j + 1] - sd[i] + pb[j] - pb[i];
            int parity = ((i + j) & 1) + pc[j + 1] + pd[i] + (nb[j] - nb[i]);
            const double v = ((parity & 1) ? -1.0 : 1.0) * std::exp(lg);
            if (!std::isfinite(v)) {
                throw SingularError("tridiag_inverse_closed_form: entry overflow at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
            }
            inv(i, j) = v;
            inv(j, i) = v;
        }
    }
    return inv;
}

}  // namespace specpot
