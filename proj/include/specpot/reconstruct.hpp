#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "specpot/errors.hpp"
#include "specpot/hamiltonian.hpp"
#include "specpot/ortho_poly.hpp"
#include "specpot/system.hpp"

namespace specpot {

// closed-form reference for the Morse system
inline double morse_exact(const PhysicalParams& p, double x) {
    const double lam2 = p.lambda * p.lambda;
    const double e1 = std::exp(-p.lambda * x);
    return (lam2 / 8.0) * (e1 * e1 + 2.0 * (2.0 * p.mu - 1.0) * e1);
}

inline double morse_min_location(const PhysicalParams& p) {
    return -std::log(1.0 - 2.0 * p.mu) / p.lambda;
}

inline double morse_min_value(const PhysicalParams& p) {
    const double w = 2.0 * p.mu - 1.0;
    return -(p.lambda * p.lambda / 8.0) * w * w;
}

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
};

// inclusive of start; points beyond stop are excluded
inline std::vector<double> grid_points(const GridSpec& g) {
    if (!(g.step > 0.0)) {
        throw ConfigError("grid: step must be positive");
    }
    std::vector<double> xs;
    const double eps = 1e-9 * g.step;
    for (std::size_t i = 0;; ++i) {
        const double x = g.start + static_cast<double>(i) * g.step;
        if (x > g.stop + eps) break;
        xs.push_back(x);
        if (i > 100000000) throw ConfigError("grid: too many points");
    }
    return xs;
}

// potential value from the operator expansion, column `col` of V
inline double potential_series_at(const OperatorMatrices& mats, const BasisSet& basis, double x,
                                  std::size_t col = 0) {
    if (!basis.in_domain(x)) {
        throw DomainError("potential_series: x outside the basis domain");
    }
    if (col >= mats.n_size) {
        throw DomainError("potential_series: column out of range");
    }
    const double y = basis.y_of_x(x);
    const std::vector<double> q = basis_poly_all(basis, mats.n_size - 1, y);
    double s = 0.0;
    for (std::size_t m = 0; m < mats.n_size; ++m) {
        s += mats.v(m, col) * q[m];
    }
    return s / q[col];
}

struct QuadratureSample {
    std::vector<double> x;  // node positions, ascending
    std::vector<double> v;  // potential values at the nodes
    std::size_t dropped = 0;
};

// samples the series potential at the Gauss nodes of the basis
inline QuadratureSample quadrature_sample(const OperatorMatrices& mats, const BasisSet& basis) {
    const std::vector<double> ynodes =
        quadrature_nodes(basis.recursion(mats.n_size), mats.n_size);
    QuadratureSample s;
    for (double y : ynodes) {
        if (!basis.y_in_range(y)) {
            ++s.dropped;
            continue;
        }
        const double x = basis.x_of_y(y);
        const std::vector<double> q = basis_poly_all(basis, mats.n_size - 1, y);
        double val = 0.0;
        for (std::size_t m = 0; m < mats.n_size; ++m) val += mats.v(m, 0) * q[m];
        s.x.push_back(x);
        s.v.push_back(val);
    }
    if (s.x.empty()) {
        throw NoValidNodesError("quadrature_sample: no node inside the coordinate range");
    }
    // LaguerreMorse maps y downward, so re-sort by x
    std::vector<std::size_t> idx(s.x.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&s](std::size_t i, std::size_t j) { return s.x[i] < s.x[j]; });
    QuadratureSample sorted;
    sorted.dropped = s.dropped;
    for (std::size_t i : idx) {
        sorted.x.push_back(s.x[i]);
        sorted.v.push_back(s.v[i]);
    }
    return sorted;
}

// Thiele continued-fraction interpolation with Leja ordering, coalescent-point
// dropping and a single perturbed retry
struct RationalFit {
    std::vector<double> support;  // support abscissas, fraction depth = support.size()
    std::vector<double> coeff;    // inverse-difference coefficients
    std::string ordering;         // "leja" or "perturbed"

    double eval(double x) const {
        double r = coeff.back();
        for (std::size_t i = coeff.size() - 1; i-- > 0;) {
            r = coeff[i] + (x - support[i]) / r;
        }
        return r;
    }
};

namespace detail {

inline constexpr double kPivotTol = 1e-13;
inline constexpr double kInterpTol = 1e-9;

inline std::vector<std::size_t> leja_order(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(n);
    std::size_t first = 0;
    double best = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = std::abs(xs[j] - mean);
        if (d > best) {
            best = d;
            first = j;
        }
    }
    std::vector<std::size_t> order{first};
    std::vector<bool> used(n, false);
    used[first] = true;
    std::vector<double> logd(n, 0.0);
    for (std::size_t step = 1; step < n; ++step) {
        const double last = xs[order.back()];
        std::size_t pick = n;
        double bv = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            logd[j] += std::log(std::abs(xs[j] - last) + 1e-300);
            if (logd[j] > bv) {
                bv = logd[j];
                pick = j;
            }
        }
        order.push_back(pick);
        used[pick] = true;
    }
    return order;
}

inline double cf_eval_partial(const std::vector<double>& sx, const std::vector<double>& cf,
                              double x) {
    double r = cf.back();
    for (std::size_t i = cf.size() - 1; i-- > 0;) {
        r = cf[i] + (x - sx[i]) / r;
    }
    return r;
}

// one interpolation pass over pre-ordered points; false on pivot failure
inline bool thiele_pass(const std::vector<double>& xs, const std::vector<double>& vs,
                        std::vector<double>& sx_out, std::vector<double>& cf_out) {
    double scale = 1.0;
    for (double v : vs) scale = std::max(scale, std::abs(v));

    std::vector<double> rx = xs, rv = vs, rt = vs;  // rt: current inverse differences
    std::vector<double> sx, cf, dropped_x, dropped_v;

    while (!rt.empty()) {
        const double bx = rx.front();
        const double bt = rt.front();
        rx.erase(rx.begin());
        rt.erase(rt.begin());
        rv.erase(rv.begin());
        if (!std::isfinite(bt)) return false;
        sx.push_back(bx);
        cf.push_back(bt);
        if (rt.empty()) break;

        std::vector<bool> coll(rt.size());
        std::size_t n_coll = 0;
        for (std::size_t j = 0; j < rt.size(); ++j) {
            const double den = rt[j] - bt;
            coll[j] = std::abs(den) <=
                      kPivotTol * std::max(1.0, std::max(std::abs(rt[j]), std::abs(bt)));
            if (coll[j]) ++n_coll;
        }
        if (n_coll == rt.size()) {
            // every remaining point coalesced: accept if already interpolated
            for (std::size_t j = 0; j < rx.size(); ++j) {
                if (std::abs(cf_eval_partial(sx, cf, rx[j]) - rv[j]) > kInterpTol * scale) {
                    return false;
                }
            }
            break;
        }
        if (n_coll > 0) {
            std::vector<double> nx, nt, nv;
            for (std::size_t j = 0; j < rt.size(); ++j) {
                if (coll[j]) {
                    if (std::abs(cf_eval_partial(sx, cf, rx[j]) - rv[j]) > kInterpTol * scale) {
                        return false;
                    }
                    dropped_x.push_back(rx[j]);
                    dropped_v.push_back(rv[j]);
                } else {
                    nx.push_back(rx[j]);
                    nt.push_back(rt[j]);
                    nv.push_back(rv[j]);
                }
            }
            rx = std::move(nx);
            rt = std::move(nt);
            rv = std::move(nv);
            if (rx.empty()) break;
        }
        for (std::size_t j = 0; j < rt.size(); ++j) {
            rt[j] = (rx[j] - bx) / (rt[j] - bt);
        }
    }

    for (std::size_t j = 0; j < dropped_x.size(); ++j) {
        if (std::abs(cf_eval_partial(sx, cf, dropped_x[j]) - dropped_v[j]) >
            kInterpTol * scale) {
            return false;
        }
    }
    sx_out = std::move(sx);
    cf_out = std::move(cf);
    return true;
}

}  // namespace detail

inline RationalFit rational_fit(const std::vector<double>& xs, const std::vector<double>& vs) {
    if (xs.size() != vs.size() || xs.empty()) {
        throw DomainError("rational_fit: mismatched or empty input");
    }
    std::vector<double> sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DegenerateNodesError("rational_fit: duplicate abscissas");
    }

    std::vector<std::size_t> order = detail::leja_order(xs);
    auto attempt = [&xs, &vs](const std::vector<std::size_t>& ord, RationalFit& fit) {
        std::vector<double> ox, ov;
        for (std::size_t i : ord) {
            ox.push_back(xs[i]);
            ov.push_back(vs[i]);
        }
        return detail::thiele_pass(ox, ov, fit.support, fit.coeff);
    };

    RationalFit fit;
    if (attempt(order, fit)) {
        fit.ordering = "leja";
        return fit;
    }
    if (order.size() >= 2) {
        std::swap(order[0], order[1]);
        if (attempt(order, fit)) {
            fit.ordering = "perturbed";
            return fit;
        }
    }
    throw PivotError("rational_fit: inverse-difference pivot breakdown");
}

enum class ReconstructionMethod { Series, QuadFit };

inline const char* method_name(ReconstructionMethod m) {
    return m == ReconstructionMethod::Series ? "series" : "quadfit";
}

struct PotentialPoint {
    double x;
    double v;
    bool extrapolated;  // outside the quadrature-node hull
};

struct PotentialTable {
    std::vector<PotentialPoint> points;
    ReconstructionMethod method = ReconstructionMethod::Series;
    std::size_t n_size = 0;
    double convergence_metric = 0.0;  // max shift when the basis grows by 10
    double node_lo = 0.0, node_hi = 0.0;          // full node hull
    double interior_lo = 0.0, interior_hi = 0.0;  // 10th-90th percentile of nodes
    std::size_t dropped_nodes = 0;
};

namespace detail {

inline double percentile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double pos = q / 100.0 * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= v.size()) return v.back();
    return v[lo] + frac * (v[lo + 1] - v[lo]);
}

}  // namespace detail

// full reconstruction driver; evaluates V on the grid at basis size n_size and
// reports the maximum shift against size n_size + 10 as a convergence metric
inline PotentialTable reconstruct_potential(SystemTag tag, const SpectralMap& map,
                                            const PhysicalParams& params, const BasisSet& basis,
                                            std::size_t n_size, const GridSpec& grid,
                                            ReconstructionMethod method) {
    const OperatorMatrices mats = assemble(tag, map, params, n_size);
    const OperatorMatrices mats_up = assemble(tag, map, params, n_size + 10);

    const QuadratureSample sample = quadrature_sample(mats, basis);
    const QuadratureSample sample_up = quadrature_sample(mats_up, basis);

    PotentialTable table;
    table.method = method;
    table.n_size = n_size;
    table.dropped_nodes = sample.dropped;
    table.node_lo = sample.x.front();
    table.node_hi = sample.x.back();
    table.interior_lo = detail::percentile(sample.x, 10.0);
    table.interior_hi = detail::percentile(sample.x, 90.0);

    RationalFit fit, fit_up;
    if (method == ReconstructionMethod::QuadFit) {
        fit = rational_fit(sample.x, sample.v);
        fit_up = rational_fit(sample_up.x, sample_up.v);
    }
    auto eval = [&](double x) {
        return method == ReconstructionMethod::Series ? potential_series_at(mats, basis, x)
                                                      : fit.eval(x);
    };
    auto eval_up = [&](double x) {
        return method == ReconstructionMethod::Series ? potential_series_at(mats_up, basis, x)
                                                      : fit_up.eval(x);
    };

    // convergence probe on the interior hull
    const std::size_t n_probe = 33;
    for (std::size_t i = 0; i < n_probe; ++i) {
        const double x = table.interior_lo + (table.interior_hi - table.interior_lo) *
                                                 static_cast<double>(i) /
                                                 static_cast<double>(n_probe - 1);
        table.convergence_metric =
            std::max(table.convergence_metric, std::abs(eval(x) - eval_up(x)));
    }

    for (double x : grid_points(grid)) {
        if (!basis.in_domain(x)) {
            throw DomainError("reconstruct_potential: grid point outside the basis domain");
        }
        const double v = eval(x);
        if (!std::isfinite(v)) {
            throw SingularityError("reconstruct_potential: non-finite value at x = " +
                                   std::to_string(x));
        }
        const bool extrap = x < table.node_lo || x > table.node_hi;
        table.points.push_back(PotentialPoint{x, v, extrap});
    }
    return table;
}

}  // namespace specpot
