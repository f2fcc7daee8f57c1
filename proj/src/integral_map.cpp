#include "cpinf/integral_map.hpp"

#include <cmath>
#include <vector>

namespace cpinf {

namespace {

void require_finite(const Multiplier& lambda) {
    if (!std::isfinite(lambda.lambda.x) || !std::isfinite(lambda.lambda.y) ||
        !std::isfinite(lambda.lambda.z))
        throw DomainError("multiplier entries must be finite");
}

PhaseGradient residual_from_parts(const AlbouyState& s, const PhaseGradient& grad_h,
                                  const Multiplier& lambda) {
    require_finite(lambda);
    PhaseGradient r = grad_h;
    for (int axis = 0; axis < 3; ++axis) {
        const double li = lambda.lambda[axis];
        if (li != 0.0) r = r - grad_angular_momentum(s, axis) * li;
    }
    return r;
}

Multiplier solve_normal_equations(const AlbouyState& s, const PhaseGradient& grad_h) {
    PhaseGradient grads[3] = {grad_angular_momentum(s, 0), grad_angular_momentum(s, 1),
                              grad_angular_momentum(s, 2)};
    auto inner = [](const PhaseGradient& a, const PhaseGradient& b) {
        return mass_inner(a.x, b.x) + mass_inner(a.y, b.y) + mass_inner(a.z, b.z) +
               mass_inner(a.p, b.p) + mass_inner(a.q, b.q) + mass_inner(a.r, b.r);
    };
    Mat3 gram;
    Vec3 rhs;
    for (int i = 0; i < 3; ++i) {
        rhs[i] = inner(grad_h, grads[i]);
        for (int j = i; j < 3; ++j) gram(i, j) = gram(j, i) = inner(grads[i], grads[j]);
    }
    const SymEigen3 eig = sym_eigen3(gram);
    const double lo = eig.values[0], hi = eig.values[2];
    if (!(lo > 0.0) || hi / lo > 1e12)
        throw DegenerateGramError(
            "constraint gradients are numerically dependent (angular momentum too close to "
            "the excluded zero level)");
    return Multiplier{solve_sym3(gram, rhs)};
}

} // namespace

IntegralValues reduced_integral_map(const AlbouyState& s) {
    const Observables obs = observables(s);
    if (obs.collision) throw CollisionError("H is undefined at a collision");
    IntegralValues v;
    v.H = *obs.H;
    v.L = obs.L;
    return v;
}

double bifurcation_parameter(const IntegralValues& v) {
    return -v.H * dot(v.L, v.L);
}

PhaseGradient grad_angular_momentum(const AlbouyState& s, int axis) {
    const DnVector zero = DnVector::zero(s.system());
    switch (axis) {
        case 0:
            return {zero, s.R(), s.Q() * -1.0, zero, s.Z() * -1.0, s.Y()};
        case 1:
            return {s.R() * -1.0, zero, s.P(), s.Z(), zero, s.X() * -1.0};
        case 2:
            return {s.Q(), s.P() * -1.0, zero, s.Y() * -1.0, s.X(), zero};
        default:
            throw DomainError("angular momentum axis must be 0, 1 or 2");
    }
}

PhaseGradient grad_hamiltonian(const AlbouyState& s) {
    PhaseGradient g = grad_potential(s);
    g.p = s.P();
    g.q = s.Q();
    g.r = s.R();
    return g;
}

PhaseGradient grad_kinetic(const AlbouyState& s) {
    const DnVector zero = DnVector::zero(s.system());
    return {zero, zero, zero, s.P(), s.Q(), s.R()};
}

Residual lagrange_residual(const AlbouyState& s, const Multiplier& lambda) {
    const PhaseGradient r = residual_from_parts(s, grad_hamiltonian(s), lambda);
    return {r, r.norm()};
}

Residual lagrange_residual_within(const AlbouyState& s, const Multiplier& lambda,
                                  std::span<const std::size_t> block) {
    const BodySystem& sys = *s.system();
    PhaseGradient g = grad_potential_within(s, PairCoefficients::from_system(sys),
                                            system_kernel(sys), block);
    g.p = s.P();
    g.q = s.Q();
    g.r = s.R();
    const PhaseGradient r = residual_from_parts(s, g, lambda);
    return {r, r.norm()};
}

Residual lagrange_residual_kinetic(const AlbouyState& s, const Multiplier& lambda) {
    const PhaseGradient r = residual_from_parts(s, grad_kinetic(s), lambda);
    return {r, r.norm()};
}

Multiplier best_multiplier(const AlbouyState& s) {
    return solve_normal_equations(s, grad_hamiltonian(s));
}

Multiplier best_multiplier_kinetic(const AlbouyState& s) {
    return solve_normal_equations(s, grad_kinetic(s));
}

MultiplierFrame to_multiplier_coordinates(const AlbouyState& s, const Multiplier& lambda) {
    require_finite(lambda);
    const double n = lambda.norm();
    if (n == 0.0) throw DomainError("multiplier coordinates are undefined for lambda = 0");
    const Mat3 g = rotation_taking_to_z(lambda.lambda);
    return {rotate(g, s), n, g};
}

} // namespace cpinf
