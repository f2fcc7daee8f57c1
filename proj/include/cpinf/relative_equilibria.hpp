#ifndef CPINF_RELATIVE_EQUILIBRIA_HPP
#define CPINF_RELATIVE_EQUILIBRIA_HPP

#include <optional>
#include <utility>
#include <vector>

#include "cpinf/integral_map.hpp"

namespace cpinf {

/// Symplectic reduction of a two-body cluster: reduced mass mu, total mass m,
/// pair coefficient gamma and the pair kernel. The centre-of-mass part is
/// discarded (set to rest).
struct TwoBodyReduction {
    double mu = 0.0;
    double m = 0.0;
    double gamma = 0.0;
    HomogeneousKernel kernel;
};

TwoBodyReduction reduce_two_body(const BodySystem& sys, std::pair<std::size_t, std::size_t> pair);

/// Effective potential of the reduced problem, U(r) = l^2/(2 mu r^2) + gamma f(r).
double effective_potential(const TwoBodyReduction& red, double ell, double r);

/// Analytic U'(r) = -l^2/(mu r^3) + gamma f'(r).
double effective_potential_derivative(const TwoBodyReduction& red, double ell, double r);

/// A circular relative equilibrium of the reduced two-body problem.
struct RelativeEquilibrium {
    double r_star = 0.0;  ///< separation, the critical point of U
    double ell = 0.0;     ///< angular momentum of the pair
    double omega = 0.0;   ///< angular velocity, equals the Lagrange multiplier
    double h = 0.0;       ///< energy U(r_star)
    double nu = 0.0;      ///< bifurcation value -h * ell^2 = mu gamma^2 / 2 for f = 1/x
    std::vector<double> all_roots;  ///< every root of U' found (one for f = 1/x)
};

/// For f = 1/x the closed forms r* = -l^2/(mu gamma), h = -mu gamma^2/(2 l^2),
/// omega = l/(mu r*^2). Requires gamma < 0 (throws NoRelativeEquilibriumError
/// otherwise) and ell != 0. Custom kernels fall back to a bracketed root scan
/// of U'; all sign changes are reported and the smallest root is primary.
RelativeEquilibrium solve_relative_equilibrium(const TwoBodyReduction& red, double ell);

/// Pair placed in the (x,y)-plane on its circular relative equilibrium about
/// the common mass centre, at angular phase `phase`; velocities tangential so
/// that L = (0, 0, ell). With a singleton present (3-body systems) the third
/// body rests at the origin. Supported sizes: N = 2 (pair only) and N = 3.
AlbouyState embed_re(const BodySystemPtr& sys, std::pair<std::size_t, std::size_t> pair,
                     std::optional<std::size_t> singleton, const RelativeEquilibrium& re,
                     double phase = 0.0);

/// One bifurcation value of the integral map per attracting pair of a 3-body
/// system: nu = mu_ij alpha_ij^2 / 2, sorted ascending (ties keep both pairs).
struct BifurcationValue {
    std::size_t i = 0, j = 0;  ///< pair indices, i < j
    double gamma = 0.0;
    double mu = 0.0;
    double nu = 0.0;
};

std::vector<BifurcationValue> bifurcation_values(const BodySystem& sys);

} // namespace cpinf

#endif
