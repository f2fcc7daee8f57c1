#include <doctest.h>

#include "cpinf/albouy.hpp"
#include "cpinf/potentials.hpp"
#include "test_support.hpp"

using namespace cpinf;
using namespace cpinf::testing;

TEST_CASE("mass inner product against direct summation") {
    auto two = BodySystem::gravitational({1.0, 2.0});
    DnVector x(two, {2.0, -1.0});
    CHECK(mass_inner(x, x) == doctest::Approx(6.0).epsilon(1e-15));

    CHECK(mass_inner(x, DnVector::zero(two)) == 0.0);

    auto three = BodySystem::gravitational({1.0, 1.0, 1.0});
    DnVector a(three, {1.0, -1.0, 0.0});
    DnVector b(three, {0.0, 1.0, -1.0});
    CHECK(mass_inner(a, b) == doctest::Approx(-1.0).epsilon(1e-15));

    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto sys = random_gravitational(rng, 5);
        AlbouyState s = random_state(rng, sys);
        const DnVector& u = s.X();
        const DnVector& v = s.P();
        // direct summation oracle
        double expect = 0.0;
        for (std::size_t i = 0; i < 5; ++i) expect += sys->mass(i) * u[i] * v[i];
        CHECK(mass_inner(u, v) == doctest::Approx(expect).epsilon(1e-13));
        CHECK(mass_inner(u, v) == doctest::Approx(mass_inner(v, u)).epsilon(1e-15));
        CHECK(mass_inner(u, u) >= 0.0);
    }
}

TEST_CASE("mass inner product is positive definite on D_N") {
    Rng rng(12);
    auto sys = random_gravitational(rng, 4);
    for (int trial = 0; trial < 30; ++trial) {
        AlbouyState s = random_state(rng, sys);
        if (s.X().max_abs() > 0.0) CHECK(mass_inner(s.X(), s.X()) > 0.0);
    }
    CHECK(mass_inner(DnVector::zero(sys), DnVector::zero(sys)) == 0.0);
}

TEST_CASE("DnVector enforces the mass-weighted zero sum") {
    auto sys = BodySystem::gravitational({1.0, 2.0});
    CHECK_THROWS_AS(DnVector(sys, {1.0, 1.0}), ConstraintError);
    CHECK_THROWS_AS(DnVector(sys, {1.0}), DimensionError);
    CHECK_NOTHROW(DnVector(sys, {2.0, -1.0}));

    // D_1 = {0}: a single body admits only the zero vector.
    auto one = BodySystem::gravitational({3.0});
    CHECK_NOTHROW(DnVector(one, {0.0}));
    CHECK_THROWS_AS(DnVector(one, {0.5}), ConstraintError);

    DnVector c = DnVector::centered(sys, {5.0, 5.0});
    CHECK(c[0] == doctest::Approx(0.0));
    CHECK(c[1] == doctest::Approx(0.0));
}

TEST_CASE("mixing body systems is a dimension error") {
    auto a = BodySystem::gravitational({1.0, 1.0});
    auto b = BodySystem::gravitational({1.0, 2.0});
    DnVector va(a, {1.0, -1.0});
    DnVector vb(b, {2.0, -1.0});
    CHECK_THROWS_AS(mass_inner(va, vb), DimensionError);
    CHECK_THROWS_AS(va + vb, DimensionError);
}

TEST_CASE("to_albouy centres positions and velocities") {
    auto sys = BodySystem::gravitational({1.0, 1.0});
    CartesianState c;
    c.positions = {{0.0, 0.0, 0.0}, {2.0, 0.0, 0.0}};
    c.velocities = {{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
    AlbouyState s = to_albouy(c, sys);
    CHECK(s.X()[0] == doctest::Approx(-1.0));
    CHECK(s.X()[1] == doctest::Approx(1.0));
    for (const DnVector* v : {&s.Y(), &s.Z(), &s.P(), &s.Q(), &s.R()})
        CHECK(v->max_abs() == 0.0);

    auto uneven = BodySystem::gravitational({1.0, 3.0});
    CartesianState c2;
    c2.positions = {{4.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
    c2.velocities = {{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
    AlbouyState s2 = to_albouy(c2, uneven);
    CHECK(s2.X()[0] == doctest::Approx(3.0));  // centre of mass at 1
    CHECK(s2.X()[1] == doctest::Approx(-1.0));
}

TEST_CASE("to_albouy is the identity on centred input and kills translations") {
    Rng rng(21);
    auto sys = random_gravitational(rng, 4);
    AlbouyState s = random_state(rng, sys);
    CartesianState c = to_cartesian(s);
    AlbouyState again = to_albouy(c, sys);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(again.X()[i] == doctest::Approx(s.X()[i]).epsilon(1e-14));
        CHECK(again.P()[i] == doctest::Approx(s.P()[i]).epsilon(1e-14));
    }
    // Adding a constant translation changes nothing after reduction.
    const Vec3 shift{3.5, -1.25, 0.75};
    for (auto& q : c.positions) q = q + shift;
    AlbouyState shifted = to_albouy(c, sys);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(shifted.X()[i] == doctest::Approx(s.X()[i]).epsilon(1e-13));
        CHECK(shifted.Z()[i] == doctest::Approx(s.Z()[i]).epsilon(1e-13));
    }
}

TEST_CASE("observables on simple states") {
    auto sys = BodySystem::gravitational({1.0, 1.0});

    SUBCASE("zero velocities") {
        DnVector x(sys, {-1.0, 1.0});
        DnVector z = DnVector::zero(sys);
        AlbouyState s(x, z, z, z, z, z);
        Observables obs = observables(s);
        CHECK(obs.K == 0.0);
        CHECK(norm(obs.L) == 0.0);
        CHECK(*obs.H == *obs.V);
    }

    SUBCASE("rotating pair") {
        const double omega = 0.7;
        DnVector x(sys, {-1.0, 1.0});
        DnVector q(sys, {-omega, omega});
        DnVector z = DnVector::zero(sys);
        AlbouyState s(x, z, z, z, q, z);
        Observables obs = observables(s);
        CHECK(obs.L.z == doctest::Approx(2.0 * omega).epsilon(1e-15));
        CHECK(obs.I == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(obs.K == doctest::Approx(2.0 * omega * omega).epsilon(1e-15));
        IzKz iz = iz_kz(s);
        CHECK(iz.I_z == doctest::Approx(2.0));
        CHECK(iz.K_z == doctest::Approx(2.0 * omega * omega));
    }

    SUBCASE("collision keeps K, I, L and flags V, H") {
        DnVector z = DnVector::zero(sys);
        DnVector p(sys, {-0.3, 0.3});
        AlbouyState s(z, z, z, p, z, z);
        Observables obs = observables(s);
        CHECK(obs.collision);
        CHECK_FALSE(obs.V.has_value());
        CHECK_FALSE(obs.H.has_value());
        CHECK(obs.K == doctest::Approx(0.18));
        CHECK_THROWS_AS(potential(s), CollisionError);
    }
}

TEST_CASE("dilation scales the moment of inertia by e^{4s}") {
    Rng rng(31);
    auto sys = random_gravitational(rng, 3);
    AlbouyState s = random_state(rng, sys);
    const double scale = std::exp(4.0 * 0.3);
    AlbouyState d = dilate(0.3, s);
    CHECK(observables(d).I == doctest::Approx(scale * observables(s).I).epsilon(1e-13));
}

TEST_CASE("rotation action") {
    Rng rng(41);
    auto sys = random_gravitational(rng, 4);
    AlbouyState s = random_state(rng, sys);

    SUBCASE("identity") {
        AlbouyState r = rotate(Mat3::identity(), s);
        for (std::size_t i = 0; i < 4; ++i) CHECK(r.X()[i] == s.X()[i]);
    }

    SUBCASE("pi about z flips x and y") {
        const Mat3 g = axis_angle_rotation({0.0, 0.0, 1.0}, std::acos(-1.0));
        AlbouyState r = rotate(g, s);
        Observables before = observables(s);
        Observables after = observables(r);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(r.X()[i] == doctest::Approx(-s.X()[i]).epsilon(1e-12));
            CHECK(r.Y()[i] == doctest::Approx(-s.Y()[i]).epsilon(1e-12));
            CHECK(r.Z()[i] == doctest::Approx(s.Z()[i]).epsilon(1e-12));
        }
        CHECK(after.L.z == doctest::Approx(before.L.z).epsilon(1e-12));
        CHECK(after.L.x == doctest::Approx(-before.L.x).epsilon(1e-12));
        CHECK(after.L.y == doctest::Approx(-before.L.y).epsilon(1e-12));
    }

    SUBCASE("K, I, V, H invariant; L equivariant") {
        for (int trial = 0; trial < 25; ++trial) {
            const Mat3 g = random_rotation(rng);
            AlbouyState r = rotate(g, s);
            Observables a = observables(s);
            Observables b = observables(r);
            CHECK(b.K == doctest::Approx(a.K).epsilon(1e-12));
            CHECK(b.I == doctest::Approx(a.I).epsilon(1e-12));
            CHECK(*b.V == doctest::Approx(*a.V).epsilon(1e-12));
            CHECK(*b.H == doctest::Approx(*a.H).epsilon(1e-12));
            const Vec3 gl = g * a.L;
            CHECK(norm(b.L - gl) <= 1e-12 * std::max(1.0, norm(a.L)));
        }
    }

    SUBCASE("non-orthogonal and improper matrices are rejected") {
        Mat3 bad = Mat3::identity();
        bad(0, 0) = 1.5;
        CHECK_THROWS_AS(rotate(bad, s), NonOrthogonalError);
        Mat3 reflect = Mat3::identity();
        reflect(2, 2) = -1.0;  // orthogonal but det -1
        CHECK_THROWS_AS(rotate(reflect, s), NonOrthogonalError);
    }
}

TEST_CASE("iz_kz splits planar and axial parts") {
    auto sys = BodySystem::gravitational({1.0, 1.0});
    DnVector z = DnVector::zero(sys);
    SUBCASE("planar state") {
        DnVector x(sys, {-1.0, 1.0});
        DnVector p(sys, {0.4, -0.4});
        AlbouyState s(x, x * 0.5, z, p, p * 2.0, z);
        Observables obs = observables(s);
        IzKz iz = iz_kz(s);
        CHECK(iz.I_z == doctest::Approx(obs.I));
        CHECK(iz.K_z == doctest::Approx(obs.K));
    }
    SUBCASE("collinear on z") {
        DnVector zc(sys, {-2.0, 2.0});
        AlbouyState s(z, z, zc, z, z, z);
        CHECK(iz_kz(s).I_z == 0.0);
    }
}

TEST_CASE("single body: all observables vanish") {
    auto one = BodySystem::gravitational({2.0});
    AlbouyState s = AlbouyState::zero(one);
    Observables obs = observables(s);
    CHECK(obs.K == 0.0);
    CHECK(obs.I == 0.0);
    CHECK(*obs.V == 0.0);  // empty sum
    CHECK(*obs.H == 0.0);
}
