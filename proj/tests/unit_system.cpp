#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "specpot/system.hpp"

using namespace specpot;
using Catch::Matchers::Message;
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

PhysicalParams fig2() {
    PhysicalParams p;
    p.mu = -7.7;
    p.a = 7.7;
    p.alpha = 0.5;
    p.ell = 1;
    return validated(SystemTag::RadialInverse, p);
}

PhysicalParams fig3() {
    PhysicalParams p;
    p.mu = -4.3;
    p.a = 4.3;
    p.alpha = 0.2;
    return validated(SystemTag::ExpGauss, p);
}

PhysicalParams fig4() {
    PhysicalParams p;
    p.mu = -3.2;
    p.a = 3.2;
    p.alpha = 0.3;
    p.nu = 3.2;
    return validated(SystemTag::Sinh, p);
}

}  // namespace

TEST_CASE("parameter validation messages") {
    PhysicalParams p;
    p.mu = 0.5;
    p.a = 1.0;
    CHECK_THROWS_MATCHES(validated(SystemTag::Morse, p), ParamError,
                         Message("mu must be negative non-integer"));
    p.mu = -3.0;
    CHECK_THROWS_MATCHES(validated(SystemTag::Morse, p), ParamError,
                         Message("mu must be negative non-integer"));
    p.mu = -3.7;
    p.a = 0.0;
    CHECK_THROWS_MATCHES(validated(SystemTag::Morse, p), ParamError,
                         Message("a must be positive"));
    p.a = 2.5;
    p.lambda = -1.0;
    CHECK_THROWS_MATCHES(validated(SystemTag::Morse, p), ParamError,
                         Message("lambda must be positive"));
    p.lambda = 1.0;
    CHECK_THROWS_MATCHES(validated(SystemTag::Sinh, p), ParamError,
                         Message("alpha must be positive"));
    p.alpha = 0.3;
    CHECK_NOTHROW(validated(SystemTag::Sinh, p));
}

TEST_CASE("validation fills defaults") {
    PhysicalParams p;
    p.mu = -3.7;
    p.a = 2.5;
    const PhysicalParams q = validated(SystemTag::Morse, p);
    CHECK(q.nu == 2.5);      // basis parameter defaults to a
    CHECK(q.alpha == 0.0);   // no deformation for the undeformed system
    CHECK(q.lambda == 1.0);

    p.nu = 1.25;
    CHECK(validated(SystemTag::Morse, p).nu == 1.25);
}

TEST_CASE("spectral maps invert each other") {
    struct Case {
        SystemTag tag;
        PhysicalParams p;
    };
    const std::vector<Case> cases = {
        {SystemTag::Morse, fig1()},
        {SystemTag::RadialInverse, fig2()},
        {SystemTag::ExpGauss, fig3()},
        {SystemTag::Sinh, fig4()},
    };
    for (const Case& c : cases) {
        const SpectralMap m = make_map(c.tag, c.p);
        for (double s : {-9.0, -2.5, -0.3, 0.04, 1.0, 9.0}) {
            const double e = m.forward(s);
            const double back = m.inverse(e);
            if (c.tag == SystemTag::RadialInverse && s < 0.0) {
                // the radial inverse is the continuum chart: it returns the
                // positive pre-image of the same energy
                CHECK(back > 0.0);
                CHECK_THAT(m.forward(back), WithinAbs(e, 1e-10 * std::max(1.0, std::abs(e))));
            } else {
                CHECK_THAT(back, WithinAbs(s, 1e-10 * std::max(1.0, std::abs(s))));
            }
        }
        for (double z : {0.1, 1.0, 3.0}) {
            CHECK_THAT(m.z_of_E(m.forward(z * z)), WithinAbs(z, 1e-10));
        }
    }
}

TEST_CASE("radial map stays accurate deep in the bound region") {
    // naive s = e - sqrt(e^2 + alpha^2) cancels catastrophically for e << 0;
    // the continuum pre-image of forward(s) is the conjugate root, whose
    // product with s is exactly -alpha^2
    const SpectralMap m = make_map(SystemTag::RadialInverse, fig2());
    const double alpha2 = 0.5 * 0.5;
    for (double s : {-50.0, -500.0, -5000.0}) {
        const double e = m.forward(s);
        const double sp = m.inverse(e);
        CHECK(sp > 0.0);
        CHECK_THAT(m.forward(sp), WithinRel(e, 1e-12));
        CHECK_THAT(sp * std::abs(s), WithinRel(alpha2, 1e-12));
    }
}

TEST_CASE("continuum membership per system") {
    const SpectralMap morse = make_map(SystemTag::Morse, fig1());
    CHECK(morse.in_continuum(0.5));
    CHECK_FALSE(morse.in_continuum(-0.5));

    const SpectralMap radial = make_map(SystemTag::RadialInverse, fig2());
    CHECK(radial.in_continuum(1.0));
    CHECK(radial.in_continuum(-1.0));  // every finite energy scatters here
    CHECK_FALSE(radial.in_continuum(std::numeric_limits<double>::infinity()));

    const SpectralMap sinh_map = make_map(SystemTag::Sinh, fig4());
    CHECK(sinh_map.in_continuum(2.0));
    CHECK_FALSE(sinh_map.in_continuum(-2.0));
}

TEST_CASE("custom map wiring") {
    const SpectralMap m =
        make_custom_map([](double s) { return 2.0 * s + 1.0; },
                        [](double E) { return 0.5 * (E - 1.0); });
    CHECK(m.forward(4.0) == 9.0);
    CHECK(m.inverse(9.0) == 4.0);
    CHECK_THAT(m.z_of_E(m.forward(4.0)), WithinRel(2.0, 1e-14));
    CHECK(m.in_continuum(2.0));
    CHECK_FALSE(m.in_continuum(0.5));
}

TEST_CASE("bound spectrum reference values") {
    SECTION("morse") {
        const PhysicalParams p = fig1();
        const SpectrumResult r = bound_spectrum(make_map(SystemTag::Morse, p), p);
        REQUIRE(r.k_max == 3);
        REQUIRE(r.energies.size() == 4);
        CHECK_THAT(r.energies[0], WithinRel(-6.845, 1e-12));
        CHECK_THAT(r.energies[3], WithinRel(-0.245, 1e-12));
        CHECK_FALSE(r.degenerate_weights);
    }
    SECTION("radial") {
        const PhysicalParams p = fig2();
        const SpectrumResult r = bound_spectrum(make_map(SystemTag::RadialInverse, p), p);
        REQUIRE(r.k_max == 7);
        CHECK_THAT(r.energies[0], WithinRel(-29.642891718670942, 1e-12));
    }
    SECTION("expgauss") {
        const PhysicalParams p = fig3();
        const SpectrumResult r = bound_spectrum(make_map(SystemTag::ExpGauss, p), p);
        REQUIRE(r.k_max == 4);
        CHECK_THAT(r.energies[0], WithinRel(-0.48761348849834291, 1e-12));
    }
    SECTION("sinh") {
        const PhysicalParams p = fig4();
        const SpectrumResult r = bound_spectrum(make_map(SystemTag::Sinh, p), p);
        REQUIRE(r.k_max == 3);
        CHECK_THAT(r.energies[0], WithinRel(-5.3846752968916309, 1e-12));
    }
}

TEST_CASE("discrete weights, reference case") {
    const PhysicalParams p = fig1();
    const double expected[4] = {0.77579945152354679, 0.22309972392925673,
                                0.0010192848729110259, 4.7216872789260728e-05};
    double total = 0.0;
    for (int k = 0; k < 4; ++k) {
        const double w = weight_omega(p, k);
        CHECK_THAT(w, WithinRel(expected[k], 1e-12));
        CHECK(w > 0.0);
        total += w;
    }
    CHECK(total < 1.0);
    CHECK_THROWS_AS(weight_omega(p, 4), DomainError);
    CHECK_THROWS_AS(weight_omega(p, -1), DomainError);
}

TEST_CASE("discrete weights collapse in the degenerate limit a = -mu") {
    const PhysicalParams p = fig3();
    CHECK_THAT(weight_omega(p, 0), WithinAbs(1.0, 1e-12));
    for (int k = 1; k <= 4; ++k) CHECK(weight_omega(p, k) == 0.0);

    const SpectrumResult r = bound_spectrum(make_map(SystemTag::ExpGauss, p), p);
    CHECK(r.degenerate_weights);
    CHECK_THAT(r.weight_sum, WithinAbs(1.0, 1e-12));
}

TEST_CASE("weight pole detection on unvalidated parameters") {
    // mu - a + 1 = -1 puts a zero into the denominator Pochhammer at k = 2
    PhysicalParams raw;
    raw.mu = -2.5;
    raw.a = -0.5;
    CHECK_THROWS_AS(weight_omega(raw, 2), PoleError);
}

TEST_CASE("continuous weight, reference value and domain") {
    const PhysicalParams p = fig1();
    CHECK_THAT(weight_rho(p, 1.0), WithinRel(2.2772759926682573e-05, 1e-12));
    CHECK_THROWS_AS(weight_rho(p, 0.0), DomainError);
    CHECK_THROWS_AS(weight_rho(p, -1.0), DomainError);
}

TEST_CASE("spectral measure is normalized") {
    const std::vector<double> bp = {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0, 80.0};

    SECTION("generic parameters") {
        const PhysicalParams p = fig1();
        double total = 0.0;
        for (int k = 0; k <= bound_level_count_max(p.mu); ++k) total += weight_omega(p, k);
        total += oracle::panel_integrate([&](double z) { return weight_rho(p, z); }, bp, 40);
        CHECK_THAT(total, WithinAbs(1.0, 1e-4));
    }
    SECTION("a independent of mu") {
        PhysicalParams p;
        p.mu = -4.3;
        p.a = 3.8;
        p = validated(SystemTag::Morse, p);
        double total = 0.0;
        for (int k = 0; k <= bound_level_count_max(p.mu); ++k) total += weight_omega(p, k);
        total += oracle::panel_integrate([&](double z) { return weight_rho(p, z); }, bp, 40);
        CHECK_THAT(total, WithinAbs(1.0, 1e-4));
    }
}

TEST_CASE("phase shift reference values") {
    CHECK_THAT(phase_shift(make_map(SystemTag::Morse, fig1()), fig1(), 0.5),
               WithinRel(8.8248843559401510, 1e-12));
    CHECK_THAT(phase_shift(make_map(SystemTag::RadialInverse, fig2()), fig2(), 1.0),
               WithinRel(16.307425556380924, 1e-12));
    CHECK_THAT(phase_shift(make_map(SystemTag::ExpGauss, fig3()), fig3(), 1.0),
               WithinRel(6.5278143244095140, 1e-12));
    CHECK_THAT(phase_shift(make_map(SystemTag::Sinh, fig4()), fig4(), 1.0),
               WithinRel(5.1462497225764750, 1e-12));
}

TEST_CASE("phase shift is continuous across the continuum") {
    const PhysicalParams p = fig1();
    const SpectralMap m = make_map(SystemTag::Morse, p);
    double prev = phase_shift(m, p, 0.05);
    for (double E = 0.1; E <= 10.0 + 1e-12; E += 0.05) {
        const double d = phase_shift(m, p, E);
        CHECK(std::abs(d - prev) < 0.5);
        prev = d;
    }
}

TEST_CASE("phase shift rejects energies outside the continuum") {
    const PhysicalParams p = fig1();
    const SpectralMap m = make_map(SystemTag::Morse, p);
    CHECK_THROWS_AS(phase_shift(m, p, -1.0), DomainError);
    CHECK_THROWS_AS(phase_shift(m, p, 0.0), DomainError);
}

TEST_CASE("threshold behaviour of the regularized phase") {
    // delta(E) - arg Gamma(2iz) tends to pi * (number of bound levels) as E -> 0+
    const PhysicalParams p = fig3();
    const SpectralMap m = make_map(SystemTag::ExpGauss, p);
    const auto regularized = [&](double E) {
        const double z = m.z_of_E(E);
        return phase_shift(m, p, E) - gamma_arg(std::complex<double>(0.0, 2.0 * z));
    };
    const double five_pi = 5.0 * detail::kPi;
    CHECK_THAT(regularized(1e-9), WithinAbs(five_pi, 1e-3));
    CHECK_THAT(regularized(1e-6), WithinAbs(five_pi, 0.05));
}
