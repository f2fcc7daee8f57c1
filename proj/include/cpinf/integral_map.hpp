#ifndef CPINF_INTEGRAL_MAP_HPP
#define CPINF_INTEGRAL_MAP_HPP

#include <span>

#include "cpinf/potentials.hpp"

namespace cpinf {

/// Values of the reduced integral map (H, L). Total momentum and centre of
/// mass vanish identically in Albouy coordinates and are reported as exact
/// zeros for completeness.
struct IntegralValues {
    double H = 0.0;
    Vec3 L{};
    Vec3 momentum{0.0, 0.0, 0.0};
    Vec3 centre_of_mass{0.0, 0.0, 0.0};
};

/// One Lagrange multiplier per angular-momentum component. Momentum and
/// centre of mass have no critical points, so they never carry multipliers.
struct Multiplier {
    Vec3 lambda{};
    double norm() const { return cpinf::norm(lambda); }
};

IntegralValues reduced_integral_map(const AlbouyState& s);

/// nu = -H * |L|^2, the dilation-rotation invariant of reduced integral
/// values.
double bifurcation_parameter(const IntegralValues& v);

/// Mass gradients of the angular momentum components, axis = 0 (L_x),
/// 1 (L_y) or 2 (L_z):
///   grad L_x = ( 0,  R, -Q,  0, -Z,  Y)
///   grad L_y = (-R,  0,  P,  Z,  0, -X)
///   grad L_z = ( Q, -P,  0, -Y,  X,  0)
PhaseGradient grad_angular_momentum(const AlbouyState& s, int axis);

/// grad H = (dV/dX, dV/dY, dV/dZ, P, Q, R) in the mass inner product.
PhaseGradient grad_hamiltonian(const AlbouyState& s);

/// Kinetic-only gradient (V treated as identically zero): (0,0,0,P,Q,R).
PhaseGradient grad_kinetic(const AlbouyState& s);

struct Residual {
    PhaseGradient vec;
    double norm = 0.0;
};

/// The Lagrange expression grad H - sum_i lambda_i grad L_i, with its
/// mass-weighted norm over all six components.
Residual lagrange_residual(const AlbouyState& s, const Multiplier& lambda);

/// Residual with the potential restricted to pairs within `block`; used for
/// cluster-wise criticality.
Residual lagrange_residual_within(const AlbouyState& s, const Multiplier& lambda,
                                  std::span<const std::size_t> block);

/// Residual of K alone: grad(K)/2 - sum_i lambda_i grad L_i. (The factor 1/2
/// matches grad H, whose kinetic part is P,Q,R.)
Residual lagrange_residual_kinetic(const AlbouyState& s, const Multiplier& lambda);

/// Least-squares multiplier: the lambda minimizing |grad H - sum_i lambda_i
/// grad L_i| in the mass norm, via the 3x3 normal equations. Throws
/// DegenerateGramError when the Gram matrix has condition number above 1e12
/// (the excluded L = 0 degeneracy).
Multiplier best_multiplier(const AlbouyState& s);

/// Same with V treated as zero.
Multiplier best_multiplier_kinetic(const AlbouyState& s);

/// The state rotated so the supplied multiplier points along +z, where the
/// Lagrange expression reduces to grad H - |lambda| grad L_z. The residual
/// norm is invariant under the move. Throws on lambda = 0.
struct MultiplierFrame {
    AlbouyState state;
    double lambda_norm = 0.0;
    Mat3 rotation;
};

MultiplierFrame to_multiplier_coordinates(const AlbouyState& s, const Multiplier& lambda);

} // namespace cpinf

#endif
