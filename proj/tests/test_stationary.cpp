#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "timeseed/stationary.hpp"

using namespace timeseed;

TEST_SUITE("stationary") {

TEST_CASE("fixed point limits") {
    // Uncoupled: my* = Omega / kappa per ensemble.
    FixedPoint fp = fixed_point_two(tsutil::seeded_pair(0.0));
    CHECK(fp.state.m[0][1] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(fp.state.m[1][1] == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(!fp.physical);   // ensemble A is above its local threshold

    // Identical drives: the detuning term drops, my* = Omega / (Gamma + kappa).
    fp = fixed_point_two(tsutil::two(1.2, 1.2, CouplingKind::Dissipative, 0.5));
    CHECK(fp.state.m[0][1] == doctest::Approx(1.2 / 1.5).epsilon(1e-12));
    CHECK(fp.state.m[1][1] == doctest::Approx(1.2 / 1.5).epsilon(1e-12));
    CHECK(fp.physical);

    // mx* = mz* = 0 always.
    for (int a = 0; a < 2; ++a) {
        CHECK(fp.state.m[static_cast<std::size_t>(a)][0] == 0.0);
        CHECK(fp.state.m[static_cast<std::size_t>(a)][2] == 0.0);
    }
}

TEST_CASE("saturation exactly at the critical coupling") {
    const FixedPoint fp = fixed_point_two(tsutil::seeded_pair(5.0 / 7.0));
    CHECK(std::abs(fp.state.m[0][1] - 1.0) < 1e-6);
    CHECK(fp.physical);

    CHECK(!fixed_point_two(tsutil::seeded_pair(0.70)).physical);
    CHECK(fixed_point_two(tsutil::seeded_pair(0.73)).physical);
}

TEST_CASE("fixed point zeroes the flow") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> omega(0.0, 2.0);
    std::uniform_real_distribution<double> gamma(0.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const NetworkParams p =
            tsutil::two(omega(rng), omega(rng), CouplingKind::Dissipative, gamma(rng));
        const FixedPoint fp = fixed_point_two(p);
        const BlochState d = vector_field(p, fp.state);
        for (int a = 0; a < 2; ++a)
            for (int k = 0; k < 3; ++k)
                CHECK(std::abs(d.m[static_cast<std::size_t>(a)]
                                  [static_cast<std::size_t>(k)]) < 1e-10);
    }
}

TEST_CASE("fixed point helpers demand the two-ensemble dissipative form") {
    CHECK_THROWS_AS(fixed_point_two(tsutil::two(1.5, 0.9, CouplingKind::Coherent, 0.1)),
                    ConfigError);
    CHECK_THROWS_AS(gamma_crit(tsutil::two(1.5, 0.9, CouplingKind::Coherent, 0.1)),
                    ConfigError);

    NetworkParams three = uniform_detuning_ladder(3, 1.5, 0.3, 1.0);
    three.coupling = {CouplingKind::Dissipative, 0.1};
    CHECK_THROWS_AS(fixed_point_two(three), ConfigError);
    CHECK_THROWS_AS(gamma_crit(three), ConfigError);

    NetworkParams uneven = tsutil::seeded_pair(0.1);
    uneven.ensembles[1].kappa = 0.5;
    CHECK_THROWS_AS(fixed_point_two(uneven), ConfigError);
}

TEST_CASE("critical coupling closed form") {
    CHECK(gamma_crit(tsutil::seeded_pair(0.0)) ==
          doctest::Approx(5.0 / 7.0).epsilon(1e-9));

    // Equal drives: Gamma_crit = Omega - kappa.
    CHECK(gamma_crit(tsutil::two(1.2, 1.2, CouplingKind::Dissipative, 0.0)) ==
          doctest::Approx(0.2).epsilon(1e-9));

    // Both ensembles below the local threshold: clamped to zero.
    CHECK(gamma_crit(tsutil::two(0.5, 0.9, CouplingKind::Dissipative, 0.0)) == 0.0);

    // Detuning equal to 2 kappa kills a denominator.
    CHECK_THROWS_AS(gamma_crit(tsutil::two(2.5, 0.5, CouplingKind::Dissipative, 0.0)),
                    ConfigError);
}

TEST_CASE("closed form marks the physicality threshold") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> omega(1.1, 1.8);
    for (int trial = 0; trial < 20; ++trial) {
        const NetworkParams p =
            tsutil::two(omega(rng), omega(rng), CouplingKind::Dissipative, 0.0);
        double gc = 0.0;
        try {
            gc = gamma_crit(p);
        } catch (const ConfigError&) {
            continue;   // formula out of domain for this draw
        }
        if (gc <= 0.05) continue;
        NetworkParams below = p, above = p;
        below.coupling.strength = gc * 0.99;
        above.coupling.strength = gc * 1.01;
        CHECK(!fixed_point_two(below).physical);
        CHECK(fixed_point_two(above).physical);
    }
}

TEST_CASE("fixed-point families and their spectra above threshold") {
    // The flow conserves every |m_alpha|, so stationary states come in a
    // two-parameter family: my pinned at my*, mz free.  At the equatorial
    // member the Jacobian is nilpotent -- every eigenvalue vanishes, at any
    // coupling -- so linearization there says nothing about the transition.
    NetworkParams p = tsutil::seeded_pair(0.73);
    const FixedPoint equatorial = fixed_point_two(p);
    StabilityReport rep = stability_at(p, equatorial);
    REQUIRE(rep.jacobian_eigenvalues.size() == 6);
    for (const auto& ev : rep.jacobian_eigenvalues) CHECK(std::abs(ev) < 1e-6);

    // The member actually reached from the polarized sphere sits at
    // mz = -sqrt(1 - my*^2).  Four directions contract; the two motions
    // along the family stay neutral.
    FixedPoint south = equatorial;
    for (auto& m : south.state.m) m[2] = -std::sqrt(1.0 - m[1] * m[1]);
    rep = stability_at(p, south);
    int contracting = 0, neutral = 0;
    for (const auto& ev : rep.jacobian_eigenvalues) {
        if (ev.real() < -1e-3) ++contracting;
        if (std::abs(ev) < 1e-8) ++neutral;
    }
    CHECK(contracting == 4);
    CHECK(neutral == 2);
    CHECK(rep.classification == StabilityClass::Marginal);
}

TEST_CASE("poles under zero drive") {
    NetworkParams p;
    p.ensembles = {{0.0, 1.0, 1}};

    FixedPoint north;
    north.state = BlochState::polarized(1);
    StabilityReport rep = stability_at(p, north);
    int unstable = 0;
    for (const auto& ev : rep.jacobian_eigenvalues)
        if (ev.real() > 1e-8) ++unstable;
    CHECK(unstable == 2);   // the kappa m mz terms repel both transverse axes

    FixedPoint south;
    south.state = BlochState(1);
    south.state.m[0] = {0.0, 0.0, -1.0};
    rep = stability_at(p, south);
    for (const auto& ev : rep.jacobian_eigenvalues)
        CHECK(ev.real() < 1e-8);
}

TEST_CASE("analytic and finite-difference Jacobians agree") {
    // Zero-strength coupling makes both equation sets identical, but routes
    // the coherent kind through the numeric differentiator.
    const NetworkParams diss = tsutil::two(1.2, 1.2, CouplingKind::Dissipative, 0.0);
    const NetworkParams coh = tsutil::two(1.2, 1.2, CouplingKind::Coherent, 0.0);
    const FixedPoint fp = fixed_point_two(diss);
    auto ea = stability_at(diss, fp).jacobian_eigenvalues;
    auto eb = stability_at(coh, fp).jacobian_eigenvalues;
    REQUIRE(ea.size() == eb.size());
    // Conjugate partners share a real part, so impose a full order first.
    const auto lex = [](const std::complex<double>& x, const std::complex<double>& y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    };
    std::sort(ea.begin(), ea.end(), lex);
    std::sort(eb.begin(), eb.end(), lex);
    for (std::size_t i = 0; i < ea.size(); ++i)
        CHECK(std::abs(ea[i] - eb[i]) < 1e-6);
}

TEST_CASE("oscillation oracle") {
    CHECK(persistent_oscillations(tsutil::seeded_pair(0.1)));
    CHECK(!persistent_oscillations(tsutil::seeded_pair(0.75)));
}

TEST_CASE("bisection brackets the dynamical transition") {
    const double found =
        critical_coupling_search(tsutil::seeded_pair(0.0), 0.5, 0.9, 1e-4);
    CHECK(std::abs(found - 5.0 / 7.0) < 1e-3);

    // Consistency: oscillations just below, none just above.
    CHECK(persistent_oscillations(tsutil::seeded_pair(found - 5e-4)));
    CHECK(!persistent_oscillations(tsutil::seeded_pair(found + 5e-4)));
}

TEST_CASE("bisection rejects an invalid bracket") {
    CHECK_THROWS_AS(critical_coupling_search(tsutil::seeded_pair(0.0), 0.75, 0.9, 1e-4),
                    NumericalError);
    CHECK_THROWS_AS(critical_coupling_search(tsutil::seeded_pair(0.0), 0.1, 0.3, 1e-4),
                    NumericalError);
}

}  // TEST_SUITE("stationary")
