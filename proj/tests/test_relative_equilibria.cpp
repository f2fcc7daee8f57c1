#include <doctest.h>

#include "cpinf/relative_equilibria.hpp"
#include "test_support.hpp"

using namespace cpinf;
using namespace cpinf::testing;

TEST_CASE("two-body reduction") {
    auto equal = BodySystem::gravitational({1.0, 1.0});
    auto red = reduce_two_body(*equal, {0, 1});
    CHECK(red.mu == doctest::Approx(0.5));
    CHECK(red.m == doctest::Approx(2.0));
    CHECK(red.gamma == doctest::Approx(-1.0));

    auto uneven = BodySystem::gravitational({1.0, 3.0});
    auto red2 = reduce_two_body(*uneven, {0, 1});
    CHECK(red2.mu == doctest::Approx(0.75));
    CHECK(red2.gamma == doctest::Approx(-3.0));

    auto coul = BodySystem::coulomb({1.0, 1.0}, {1.0, -2.0});
    auto red3 = reduce_two_body(*coul, {0, 1});
    CHECK(red3.mu == doctest::Approx(0.5));
    CHECK(red3.gamma == doctest::Approx(-2.0));

    CHECK_THROWS_AS(reduce_two_body(*equal, {0, 0}), DomainError);
}

TEST_CASE("effective potential") {
    auto sys = BodySystem::gravitational({1.0, 1.0});
    const auto red = reduce_two_body(*sys, {0, 1});
    CHECK(effective_potential(red, 1.0, 2.0) == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(effective_potential(red, 0.0, 3.0) == doctest::Approx(-1.0 / 3.0));
    CHECK(std::abs(effective_potential(red, 1.0, 1e9)) < 1e-8);
    CHECK_THROWS_AS(effective_potential(red, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(effective_potential(red, 1.0, -2.0), DomainError);
}

TEST_CASE("closed-form relative equilibrium") {
    auto sys = BodySystem::gravitational({1.0, 1.0});
    const auto red = reduce_two_body(*sys, {0, 1});
    const auto re = solve_relative_equilibrium(red, 1.0);
    CHECK(re.r_star == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(re.h == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(re.omega == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(re.nu == doctest::Approx(0.25).epsilon(1e-15));
    // h cross-checked through the effective potential itself
    CHECK(re.h == doctest::Approx(effective_potential(red, 1.0, re.r_star)).epsilon(1e-14));
    // U'(r*) = 0 analytically; U''(r*) > 0 by central differences
    CHECK(std::abs(effective_potential_derivative(red, 1.0, re.r_star)) <= 1e-12);
    const double h = 1e-4;
    const double u2 = (effective_potential(red, 1.0, re.r_star + h) -
                       2.0 * effective_potential(red, 1.0, re.r_star) +
                       effective_potential(red, 1.0, re.r_star - h)) /
                      (h * h);
    CHECK(u2 > 0.0);

    SUBCASE("no critical point for a repelling pair") {
        auto coul = BodySystem::coulomb({1.0, 1.0}, {1.0, 1.0});
        const auto repel = reduce_two_body(*coul, {0, 1});
        CHECK_THROWS_AS(solve_relative_equilibrium(repel, 1.0), NoRelativeEquilibriumError);
    }

    SUBCASE("scaling in ell") {
        const auto re2 = solve_relative_equilibrium(red, 2.0);
        CHECK(re2.r_star == doctest::Approx(4.0 * re.r_star));
        CHECK(re2.h == doctest::Approx(re.h / 4.0));
        CHECK(re2.nu == doctest::Approx(re.nu));  // nu = mu gamma^2 / 2 has no ell
    }

    SUBCASE("ell = 0 is rejected") {
        CHECK_THROWS_AS(solve_relative_equilibrium(red, 0.0), DomainError);
    }
}

TEST_CASE("custom kernel root find matches the hand-derived root") {
    // f(x) = x^{-3/2}: U'(r) = -l^2/(mu r^3) + 1.5 |gamma| r^{-5/2} = 0
    // gives r* = (l^2 / (1.5 |gamma| mu))^2.
    auto sys = BodySystem::custom_homogeneous({1.0, 1.0}, -1.5,
                                              {0.0, -1.0, -1.0, 0.0});
    const auto red = reduce_two_body(*sys, {0, 1});
    const auto re = solve_relative_equilibrium(red, 1.0);
    const double expected = std::pow(1.0 / (1.5 * 0.5), 2.0);  // 16/9
    CHECK(re.r_star == doctest::Approx(expected).epsilon(1e-10));
    CHECK(std::abs(effective_potential_derivative(red, 1.0, re.r_star)) < 1e-10);
    CHECK(re.all_roots.size() == 1);
}

TEST_CASE("embedding the relative equilibrium") {
    auto sys = BodySystem::gravitational({1.0, 1.0});
    const auto red = reduce_two_body(*sys, {0, 1});
    const auto re = solve_relative_equilibrium(red, 1.0);

    SUBCASE("canonical placement") {
        const AlbouyState s = embed_re(sys, {0, 1}, std::nullopt, re, 0.0);
        CHECK(s.X()[0] == doctest::Approx(1.0));
        CHECK(s.X()[1] == doctest::Approx(-1.0));
        CHECK(s.Q()[0] == doctest::Approx(0.5));   // v = omega ez x q
        CHECK(s.Q()[1] == doctest::Approx(-0.5));
        Observables obs = observables(s);
        CHECK(obs.L.z == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(obs.L.x == doctest::Approx(0.0));
        CHECK(*obs.H == doctest::Approx(re.h).epsilon(1e-13));
        CHECK(obs.I == doctest::Approx(red.mu * re.r_star * re.r_star).epsilon(1e-13));
    }

    SUBCASE("phase and phase + pi differ by the half-turn about z") {
        const AlbouyState a = embed_re(sys, {0, 1}, std::nullopt, re, 0.4);
        const AlbouyState b = embed_re(sys, {0, 1}, std::nullopt, re,
                                       0.4 + std::acos(-1.0));
        const AlbouyState c = rotate(axis_angle_rotation({0, 0, 1}, std::acos(-1.0)), a);
        for (std::size_t i = 0; i < 2; ++i) {
            CHECK(b.X()[i] == doctest::Approx(c.X()[i]).epsilon(1e-12));
            CHECK(b.Y()[i] == doctest::Approx(c.Y()[i]).epsilon(1e-12));
            CHECK(b.Q()[i] == doctest::Approx(c.Q()[i]).epsilon(1e-12));
        }
    }

    SUBCASE("residual with and without the analytic multiplier") {
        const AlbouyState s = embed_re(sys, {0, 1}, std::nullopt, re, 0.0);
        CHECK(lagrange_residual(s, Multiplier{{0.0, 0.0, re.omega}}).norm < 1e-10);
        CHECK(lagrange_residual(s, Multiplier{}).norm > 0.1);
    }

    SUBCASE("three-body embedding rests the singleton at the origin") {
        auto three = BodySystem::gravitational({1.0, 1.0, 1.0});
        const auto re3 = solve_relative_equilibrium(reduce_two_body(*three, {0, 1}), 1.0);
        const AlbouyState s = embed_re(three, {0, 1}, 2, re3, 0.0);
        CHECK(s.X()[2] == 0.0);
        CHECK(s.Z()[2] == 0.0);
        CHECK(observables(s).L.z == doctest::Approx(1.0).epsilon(1e-14));
        CHECK_THROWS_AS(embed_re(three, {0, 1}, 1, re3, 0.0), DomainError);
        CHECK_THROWS_AS(embed_re(three, {0, 1}, std::nullopt, re3, 0.0), DomainError);
    }
}

TEST_CASE("dilating an embedded equilibrium lands on the ell' = e^s ell member") {
    auto sys = BodySystem::gravitational({1.0, 2.0});
    const auto red = reduce_two_body(*sys, {0, 1});
    const auto re = solve_relative_equilibrium(red, 1.0);
    const AlbouyState s = embed_re(sys, {0, 1}, std::nullopt, re, 0.0);
    const double sc = 0.45;
    const AlbouyState d = dilate(sc, s);
    const double ell_new = std::exp(sc) * 1.0;
    const auto re_new = solve_relative_equilibrium(red, ell_new);
    Observables obs = observables(d);
    CHECK(obs.L.z == doctest::Approx(ell_new).epsilon(1e-13));
    CHECK(*obs.H == doctest::Approx(re_new.h).epsilon(1e-13));
    CHECK(re_new.nu == doctest::Approx(re.nu).epsilon(1e-14));
    CHECK(lagrange_residual(d, Multiplier{{0.0, 0.0, re_new.omega}}).norm < 1e-10);
}

TEST_CASE("bifurcation values") {
    SUBCASE("gravitational (1,2,3) against the printed formulas") {
        auto sys = BodySystem::gravitational({1.0, 2.0, 3.0});
        const auto values = bifurcation_values(*sys);
        REQUIRE(values.size() == 3);
        // independent closed-form oracle: (m_i m_j)^3 / (2 (m_i + m_j))
        auto formula = [](double mi, double mj) {
            return std::pow(mi * mj, 3.0) / (2.0 * (mi + mj));
        };
        CHECK(values[0].nu == doctest::Approx(formula(1.0, 2.0)).epsilon(1e-12));
        CHECK(values[1].nu == doctest::Approx(formula(1.0, 3.0)).epsilon(1e-12));
        CHECK(values[2].nu == doctest::Approx(formula(2.0, 3.0)).epsilon(1e-12));
        CHECK(values[0].nu == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
        CHECK(values[1].nu == doctest::Approx(27.0 / 8.0).epsilon(1e-12));
        CHECK(values[2].nu == doctest::Approx(21.6).epsilon(1e-12));
        // ascending
        CHECK(values[0].nu <= values[1].nu);
        CHECK(values[1].nu <= values[2].nu);
    }

    SUBCASE("coulomb (1,1,-1): two values, pair (1,2) excluded") {
        auto sys = BodySystem::coulomb({1.0, 1.0, 1.0}, {1.0, 1.0, -1.0});
        const auto values = bifurcation_values(*sys);
        REQUIRE(values.size() == 2);
        for (const auto& v : values) {
            CHECK(v.nu == doctest::Approx(0.25).epsilon(1e-12));
            CHECK(v.j == 2);  // both attracting pairs involve the negative charge
        }
    }

    SUBCASE("all repelling: empty list is valid") {
        auto sys = BodySystem::coulomb({1.0, 1.0, 1.0}, {1.0, 1.0, 1.0});
        CHECK(bifurcation_values(*sys).empty());
    }

    SUBCASE("equal masses: three tied values reported per pair") {
        auto sys = BodySystem::gravitational({1.0, 1.0, 1.0});
        const auto values = bifurcation_values(*sys);
        REQUIRE(values.size() == 3);
        for (const auto& v : values) CHECK(v.nu == doctest::Approx(0.25).epsilon(1e-12));
    }

    SUBCASE("only defined for three bodies") {
        auto sys = BodySystem::gravitational({1.0, 1.0});
        CHECK_THROWS_AS(bifurcation_values(*sys), DomainError);
    }
}

TEST_CASE("nu from the table equals -h ell^2 for every attracting pair and ell") {
    auto grav = BodySystem::gravitational({1.0, 2.0, 3.0});
    auto coul = BodySystem::coulomb({1.0, 1.5, 2.0}, {2.0, 1.0, -1.5});
    for (const auto& sys : {grav, coul}) {
        const auto values = bifurcation_values(*sys);
        for (const auto& v : values) {
            const auto red = reduce_two_body(*sys, {v.i, v.j});
            for (double ell : {0.5, 1.0, 2.0, 7.0}) {
                const auto re = solve_relative_equilibrium(red, ell);
                CHECK(-re.h * ell * ell == doctest::Approx(v.nu).epsilon(1e-12));
            }
        }
    }
}
