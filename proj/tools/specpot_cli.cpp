// specpot: bound spectra, phase shifts, wavefunctions and reconstructed
// potentials for solvable spectral-map systems.
//
// Exit codes: 0 success, 1 numeric failure, 2 validation/config error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "specpot/specpot.hpp"

namespace {

using namespace specpot;

constexpr int kExitOk = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitValidation = 2;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Options {
    std::string command;
    std::string system;
    std::string preset;
    std::string method = "series";
    std::string grid;
    std::string erange;
    std::string output = "-";
    double mu = std::numeric_limits<double>::quiet_NaN();
    double a = std::numeric_limits<double>::quiet_NaN();
    double lambda = 1.0;
    double alpha = std::numeric_limits<double>::quiet_NaN();
    double nu = std::numeric_limits<double>::quiet_NaN();
    int ell = 0;
    int n_size = 60;
    int k = -1;
    double energy = std::numeric_limits<double>::quiet_NaN();
    bool k_given = false;
    bool energy_given = false;
};

SystemTag tag_from_name(const std::string& name) {
    if (name == "morse") return SystemTag::Morse;
    if (name == "radial") return SystemTag::RadialInverse;
    if (name == "expgauss") return SystemTag::ExpGauss;
    if (name == "sinh") return SystemTag::Sinh;
    throw ConfigError("unknown system '" + name + "' (expected morse|radial|expgauss|sinh)");
}

GridSpec parse_grid(const std::string& text, const char* what) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        try {
            std::size_t pos = 0;
            parts.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError(std::string(what) + ": bad number '" + item + "'");
        }
    }
    if (parts.size() != 3) {
        throw ConfigError(std::string(what) + ": expected start:stop:step, got '" + text + "'");
    }
    if (!(parts[2] > 0.0)) {
        throw ConfigError(std::string(what) + ": step must be positive");
    }
    return GridSpec{parts[0], parts[1], parts[2]};
}

// fills fields the user did not set, from the figure parameter presets
void apply_preset(Options& o, const std::map<std::string, bool>& given) {
    struct Preset {
        const char* system;
        double mu, a, lambda, alpha, nu;
        int ell;
        bool has_alpha, has_nu, has_ell;
    };
    Preset p{};
    if (o.preset == "fig1") {
        p = {"morse", -3.7, 2.5, 1.0, 0.0, 2.5, 0, false, true, false};
    } else if (o.preset == "fig2") {
        p = {"radial", -7.7, 7.7, 1.0, 0.5, 0.0, 1, true, false, true};
    } else if (o.preset == "fig3") {
        p = {"expgauss", -4.3, 4.3, 1.0, 0.2, 0.0, 0, true, false, false};
    } else if (o.preset == "fig4") {
        p = {"sinh", -3.2, 3.2, 1.0, 0.3, 3.2, 0, true, true, false};
    } else {
        throw ConfigError("unknown preset '" + o.preset + "' (expected fig1|fig2|fig3|fig4)");
    }
    auto unset = [&given](const char* key) { return !given.at(key); };
    if (unset("system")) o.system = p.system;
    if (unset("mu")) o.mu = p.mu;
    if (unset("a")) o.a = p.a;
    if (unset("lambda")) o.lambda = p.lambda;
    if (p.has_alpha && unset("alpha")) o.alpha = p.alpha;
    if (p.has_nu && unset("nu")) o.nu = p.nu;
    if (p.has_ell && unset("ell")) o.ell = p.ell;
}

struct Resolved {
    SystemTag tag = SystemTag::Morse;
    PhysicalParams params;
    SpectralMap map;
    std::size_t n_size = kDefaultBasisSize;
};

Resolved resolve(const Options& o) {
    if (o.system.empty()) {
        throw ConfigError("--system is required (or use --preset)");
    }
    Resolved r;
    r.tag = tag_from_name(o.system);
    PhysicalParams p;
    p.mu = o.mu;
    p.a = o.a;
    p.lambda = o.lambda;
    p.alpha = o.alpha;
    p.nu = o.nu;
    p.ell = o.ell;
    r.params = validated(r.tag, p);
    r.map = make_map(r.tag, r.params);
    if (o.n_size < 1) {
        throw ConfigError("--N must be at least 1");
    }
    r.n_size = static_cast<std::size_t>(o.n_size);
    return r;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (path != "-") {
            file_.open(path);
            if (!file_) throw ConfigError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void write_metadata(std::ostream& os, const Resolved& r, bool with_n,
                    const std::string& method = "") {
    os << "# system = " << system_name(r.tag) << "\n";
    os << "# mu = " << fmt17(r.params.mu) << "\n";
    os << "# a = " << fmt17(r.params.a) << "\n";
    os << "# lambda = " << fmt17(r.params.lambda) << "\n";
    if (r.tag != SystemTag::Morse) os << "# alpha = " << fmt17(r.params.alpha) << "\n";
    if (r.tag == SystemTag::Morse || r.tag == SystemTag::Sinh) {
        os << "# nu = " << fmt17(r.params.nu) << "\n";
    }
    if (r.tag == SystemTag::RadialInverse) os << "# ell = " << r.params.ell << "\n";
    if (with_n) os << "# N = " << r.n_size << "\n";
    if (!method.empty()) os << "# method = " << method << "\n";
}

int cmd_spectrum(const Options& o) {
    const Resolved r = resolve(o);
    const SpectrumResult spec = bound_spectrum(r.map, r.params);
    Output out(o.output);
    std::ostream& os = out.stream();
    write_metadata(os, r, false);
    if (spec.degenerate_weights) {
        os << "# warning = degenerate weights (a = -mu): omega_0 carries the whole "
              "discrete measure\n";
    }
    os << "k,E_k,omega_k\n";
    for (int k = 0; k <= spec.k_max; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        os << k << ',' << fmt17(spec.energies[idx]) << ',' << fmt17(spec.omega[idx]) << "\n";
    }
    return kExitOk;
}

int cmd_phaseshift(const Options& o) {
    const Resolved r = resolve(o);
    if (o.erange.empty()) {
        throw ConfigError("phaseshift requires --erange start:stop:step");
    }
    const GridSpec g = parse_grid(o.erange, "--erange");
    Output out(o.output);
    std::ostream& os = out.stream();
    write_metadata(os, r, false);
    os << "E,delta\n";
    for (double e : grid_points(g)) {
        os << fmt17(e) << ',' << fmt17(phase_shift(r.map, r.params, e)) << "\n";
    }
    return kExitOk;
}

int cmd_potential(const Options& o) {
    const Resolved r = resolve(o);
    if (o.grid.empty()) {
        throw ConfigError("potential requires --grid start:stop:step");
    }
    ReconstructionMethod method;
    if (o.method == "series") {
        method = ReconstructionMethod::Series;
    } else if (o.method == "quadfit") {
        method = ReconstructionMethod::QuadFit;
    } else {
        throw ConfigError("unknown method '" + o.method + "' (expected series|quadfit)");
    }
    const GridSpec g = parse_grid(o.grid, "--grid");
    const BasisSet basis = make_basis(basis_for(r.tag), r.params);
    const PotentialTable table =
        reconstruct_potential(r.tag, r.map, r.params, basis, r.n_size, g, method);

    std::size_t extrapolated = 0;
    for (const PotentialPoint& pt : table.points) {
        if (pt.extrapolated) ++extrapolated;
    }
    Output out(o.output);
    std::ostream& os = out.stream();
    write_metadata(os, r, true, method_name(method));
    os << "# node_hull = " << fmt17(table.node_lo) << ".." << fmt17(table.node_hi) << "\n";
    os << "# interior_hull = " << fmt17(table.interior_lo) << ".." << fmt17(table.interior_hi)
       << "\n";
    os << "# extrapolated_points = " << extrapolated << "\n";
    if (table.dropped_nodes > 0) {
        os << "# warning = " << table.dropped_nodes
           << " quadrature nodes outside the coordinate range were dropped\n";
    }
    os << "x,V\n";
    for (const PotentialPoint& pt : table.points) {
        os << fmt17(pt.x) << ',' << fmt17(pt.v) << "\n";
    }
    std::cerr << "convergence: max |V_N - V_{N+10}| = " << fmt17(table.convergence_metric)
              << " (N = " << r.n_size << ")\n";
    return kExitOk;
}

int cmd_wavefunction(const Options& o) {
    const Resolved r = resolve(o);
    if (o.grid.empty()) {
        throw ConfigError("wavefunction requires --grid start:stop:step");
    }
    if (o.k_given == o.energy_given) {
        throw ConfigError("wavefunction requires exactly one of --k or --energy");
    }
    const GridSpec g = parse_grid(o.grid, "--grid");
    const std::vector<double> xs = grid_points(g);
    const BasisSet basis = make_basis(basis_for(r.tag), r.params);

    if (o.energy_given && !r.map.in_continuum(o.energy)) {
        // off-spectrum energy: report the partial-sum growth diagnostic
        std::vector<double> probes;
        if (xs.size() >= 4) {
            for (std::size_t q = 0; q < 4; ++q) {
                probes.push_back(xs[(xs.size() - 1) * (q + 1) / 4]);
            }
        } else {
            probes = xs;
        }
        const double ratio = divergence_diagnostic(r.map, r.params, basis, o.energy, probes,
                                                   std::max<std::size_t>(r.n_size, 40));
        std::cerr << "error: E = " << fmt17(o.energy)
                  << " is not in the continuum and not a bound level\n";
        std::cerr << "divergence diagnostic: partial-sum growth ratio = " << fmt17(ratio)
                  << " (>> 1 signals an off-spectrum energy; bound levels need --k)\n";
        return kExitNumeric;
    }

    std::vector<double> values;
    values.reserve(xs.size());
    for (double x : xs) {
        const WavefunctionSample s =
            o.k_given ? bound_component(r.params, basis, o.k, x, r.n_size)
                      : continuum_component(r.map, r.params, basis, o.energy, x, r.n_size);
        values.push_back(s.value);
    }
    if (o.k_given && !values.empty()) {
        // sign convention: the extremal lobe points up
        std::size_t imax = 0;
        for (std::size_t i = 1; i < values.size(); ++i) {
            if (std::abs(values[i]) > std::abs(values[imax])) imax = i;
        }
        if (values[imax] < 0.0) {
            for (double& v : values) v = -v;
        }
    }
    Output out(o.output);
    std::ostream& os = out.stream();
    write_metadata(os, r, true);
    if (o.k_given) {
        os << "# k = " << o.k << "\n";
    } else {
        os << "# energy = " << fmt17(o.energy) << "\n";
    }
    os << "x,psi\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        os << fmt17(xs[i]) << ',' << fmt17(values[i]) << "\n";
    }
    return kExitOk;
}

int cmd_validate(const Options& o) {
    const Resolved r = resolve(o);
    if (r.tag != SystemTag::Morse) {
        throw ParamError("validate requires an exact reference (only --system morse has one)");
    }
    ReconstructionMethod method = o.method == "quadfit" ? ReconstructionMethod::QuadFit
                                                        : ReconstructionMethod::Series;
    const BasisSet basis = make_basis(basis_for(r.tag), r.params);

    Output out(o.output);
    std::ostream& os = out.stream();
    write_metadata(os, r, false, method_name(method));
    os << "# reference = closed-form Morse potential\n";
    os << "N,max_abs_error\n";
    for (std::size_t n : {std::size_t{20}, std::size_t{40}, std::size_t{60}, std::size_t{80}}) {
        const OperatorMatrices mats = assemble(r.tag, r.map, r.params, n);
        const QuadratureSample sample = quadrature_sample(mats, basis);
        const double lo = detail::percentile(sample.x, 10.0);
        const double hi = detail::percentile(sample.x, 90.0);
        RationalFit fit;
        if (method == ReconstructionMethod::QuadFit) {
            fit = rational_fit(sample.x, sample.v);
        }
        double err = 0.0;
        const std::size_t n_grid = 201;
        for (std::size_t i = 0; i < n_grid; ++i) {
            const double x =
                lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_grid - 1);
            const double v = method == ReconstructionMethod::Series
                                 ? potential_series_at(mats, basis, x)
                                 : fit.eval(x);
            err = std::max(err, std::abs(v - morse_exact(r.params, x)));
        }
        os << n << ',' << fmt17(err) << "\n";
    }
    os << "# spectrum\n";
    const SpectrumResult spec = bound_spectrum(r.map, r.params);
    os << "k,E_k,omega_k\n";
    for (int k = 0; k <= spec.k_max; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        os << k << ',' << fmt17(spec.energies[idx]) << ',' << fmt17(spec.omega[idx]) << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"spectral-map quantum systems: spectra, phase shifts, wavefunctions, potentials"};
    app.set_config("--config", "", "config file with 'key = value' lines, # comments");

    app.add_option("command", o.command, "spectrum | phaseshift | potential | wavefunction | validate")
        ->required()
        ->check(CLI::IsMember({"spectrum", "phaseshift", "potential", "wavefunction", "validate"}));
    app.add_option("--system", o.system, "morse | radial | expgauss | sinh");
    app.add_option("--preset", o.preset, "figure parameter preset: fig1 | fig2 | fig3 | fig4");
    app.add_option("--mu", o.mu, "spectral parameter mu (negative non-integer)");
    app.add_option("--a", o.a, "spectral parameter a (positive)");
    app.add_option("--lambda", o.lambda, "length-scale lambda (default 1)");
    app.add_option("--alpha", o.alpha, "deformation rate alpha (radial/expgauss/sinh)");
    app.add_option("--nu", o.nu, "basis parameter nu (default: a)");
    app.add_option("--ell", o.ell, "angular momentum (radial)");
    app.add_option("--N", o.n_size, "basis truncation size (default 60)");
    app.add_option("--method", o.method, "potential reconstruction: series | quadfit");
    app.add_option("--grid", o.grid, "x grid start:stop:step");
    app.add_option("--erange", o.erange, "energy grid start:stop:step (phaseshift)");
    app.add_option("--k", o.k, "bound level index (wavefunction)");
    app.add_option("--energy", o.energy, "continuum energy (wavefunction)");
    app.add_option("--output", o.output, "output path, '-' for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        std::map<std::string, bool> given;
        for (const char* key : {"system", "mu", "a", "lambda", "alpha", "nu", "ell"}) {
            given[key] = app.get_option(std::string("--") + key)->count() > 0;
        }
        o.k_given = app.get_option("--k")->count() > 0;
        o.energy_given = app.get_option("--energy")->count() > 0;
        if (!o.preset.empty()) apply_preset(o, given);

        if (o.command == "spectrum") return cmd_spectrum(o);
        if (o.command == "phaseshift") return cmd_phaseshift(o);
        if (o.command == "potential") return cmd_potential(o);
        if (o.command == "wavefunction") return cmd_wavefunction(o);
        if (o.command == "validate") return cmd_validate(o);
        throw ConfigError("unknown command '" + o.command + "'");
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ParamError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const DegenerateRecursionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "note: at a = -mu the recursion decouples its first mode; the matrix "
                     "pipeline (spectrum/potential) still applies, pointwise wavefunction "
                     "series do not\n";
        return kExitValidation;
    } catch (const Error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
}
