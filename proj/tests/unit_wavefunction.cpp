#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "specpot/wavefunction.hpp"

using namespace specpot;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

PhysicalParams fig1() {
    PhysicalParams p;
    p.mu = -3.7;
    p.a = 2.5;
    p.nu = 2.5;
    return validated(SystemTag::Morse, p);
}

double psi_k(int k, double x, std::size_t n_terms) {
    static const PhysicalParams p = fig1();
    static const BasisSet basis = make_basis(BasisFamily::LaguerreMorse, p);
    return bound_component(p, basis, k, x, n_terms).value;
}

}  // namespace

TEST_CASE("bound states are normalized and orthogonal") {
    const auto f00 = [](double x) { return psi_k(0, x, 80) * psi_k(0, x, 80); };
    const auto f01 = [](double x) { return psi_k(0, x, 80) * psi_k(1, x, 80); };
    CHECK_THAT(oracle::simpson(f00, -6.0, 12.0, 4001), WithinAbs(1.0, 1e-3));
    CHECK_THAT(oracle::simpson(f01, -6.0, 12.0, 4001), WithinAbs(0.0, 1e-3));
}

TEST_CASE("bound state node counts") {
    for (int k = 0; k <= 3; ++k) {
        std::vector<double> vals;
        double vmax = 0.0;
        for (int i = 0; i <= 800; ++i) {
            const double x = -4.0 + 8.0 * i / 800.0;
            vals.push_back(psi_k(k, x, 200));
            vmax = std::max(vmax, std::abs(vals.back()));
        }
        // count sign changes, skipping low-amplitude samples near the walls
        int nodes = 0;
        double prev = 0.0;
        for (double v : vals) {
            if (std::abs(v) <= 0.05 * vmax) continue;
            if (prev != 0.0 && v * prev < 0.0) ++nodes;
            prev = v;
        }
        CHECK(nodes == k);
    }
}

TEST_CASE("bound states decay at the box edges") {
    for (int k = 0; k <= 1; ++k) {
        double vmax = 0.0;
        for (int i = 0; i <= 360; ++i) {
            vmax = std::max(vmax, std::abs(psi_k(k, -6.0 + 18.0 * i / 360.0, 80)));
        }
        CHECK(std::abs(psi_k(k, -6.0, 80)) <= 1e-3 * vmax);
        CHECK(std::abs(psi_k(k, 12.0, 80)) <= 1e-3 * vmax);
    }
}

TEST_CASE("bound state is stable under truncation growth") {
    double diff = 0.0, vmax = 0.0;
    for (int i = 0; i <= 140; ++i) {
        const double x = -4.0 + 7.0 * i / 140.0;
        const double a = psi_k(0, x, 80);
        diff = std::max(diff, std::abs(a - psi_k(0, x, 120)));
        vmax = std::max(vmax, std::abs(a));
    }
    CHECK(diff <= 1e-3 * vmax);
}

TEST_CASE("partial norms are non-decreasing checkpoints") {
    const PhysicalParams p = fig1();
    const BasisSet basis = make_basis(BasisFamily::LaguerreMorse, p);
    const WavefunctionSample s = bound_component(p, basis, 1, 0.5, 80);
    for (int i = 1; i < 4; ++i) {
        CHECK(s.partial_norms[i] >= s.partial_norms[i - 1]);
    }
    CHECK(s.partial_norms[3] >= std::abs(s.value));
}

TEST_CASE("bound component rejects bad level indices") {
    const PhysicalParams p = fig1();
    const BasisSet basis = make_basis(BasisFamily::LaguerreMorse, p);
    CHECK_THROWS_AS(bound_component(p, basis, 5, 0.0, 40), DomainError);
    CHECK_THROWS_AS(bound_component(p, basis, -1, 0.0, 40), DomainError);
    CHECK_THROWS_AS(bound_component(p, basis, 0, 0.0, 0), DomainError);
}

TEST_CASE("continuum states stay bounded") {
    const PhysicalParams p = fig1();
    const SpectralMap map = make_map(SystemTag::Morse, p);
    const BasisSet basis = make_basis(BasisFamily::LaguerreMorse, p);
    for (double E : {0.5, 2.0}) {
        std::vector<double> mags;
        for (int i = 0; i <= 200; ++i) {
            const double x = -2.0 + 5.0 * i / 200.0;
            mags.push_back(std::abs(continuum_component(map, p, basis, E, x, 200).value));
        }
        std::vector<double> sorted = mags;
        std::sort(sorted.begin(), sorted.end());
        const double median = sorted[sorted.size() / 2];
        const double peak = sorted.back();
        CHECK(peak <= 3.0 * median);
    }
    CHECK_THROWS_AS(continuum_component(map, p, basis, -0.5, 0.0, 40), DomainError);
}

TEST_CASE("divergence diagnostic separates spectrum from off-spectrum energies") {
    const PhysicalParams p = fig1();
    const SpectralMap map = make_map(SystemTag::Morse, p);
    const BasisSet basis = make_basis(BasisFamily::LaguerreMorse, p);
    const std::vector<double> probes = {-1.0, 0.0, 1.0, 2.0};
    const SpectrumResult spec = bound_spectrum(map, p);

    CHECK(divergence_diagnostic(map, p, basis, spec.energies[0], probes, 200) <= 2.0);
    CHECK(divergence_diagnostic(map, p, basis, spec.energies[3], probes, 200) <= 2.0);
    const double mid = 0.5 * (spec.energies[0] + spec.energies[1]);
    CHECK(divergence_diagnostic(map, p, basis, mid, probes, 200) >= 10.0);
    // small truncations cannot diagnose, but they must still return something sane
    CHECK(divergence_diagnostic(map, p, basis, mid, probes, 4) >= 1.0);
}

TEST_CASE("time evolution at t = 0 is the plain sum of components") {
    const PhysicalParams p = fig1();
    const SpectralMap map = make_map(SystemTag::Morse, p);
    const BasisSet basis = make_basis(BasisFamily::LaguerreMorse, p);
    const double x = 0.3;
    double plain = 0.0;
    for (int k = 0; k <= 3; ++k) plain += bound_component(p, basis, k, x, 60).value;
    const std::complex<double> ev = time_evolution(map, p, basis, 0.0, x, 60);
    CHECK_THAT(ev.real(), WithinRel(plain, 1e-12));
    CHECK(ev.imag() == 0.0);

    // at t > 0 the modulus of each term is preserved
    const std::complex<double> ev2 = time_evolution(map, p, basis, 1.7, x, 60);
    CHECK(std::isfinite(ev2.real()));
    CHECK(std::isfinite(ev2.imag()));
    CHECK(ev2.imag() != 0.0);
}
