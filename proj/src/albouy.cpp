#include "cpinf/albouy.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "cpinf/potentials.hpp"

namespace cpinf {

namespace {

void require_shared_system(const DnVector& a, const DnVector& b) {
    if (a.size() != b.size() || !same_system(a.system(), b.system()))
        throw DimensionError("all six state components must share one body system");
}

} // namespace

AlbouyState::AlbouyState(DnVector x, DnVector y, DnVector z, DnVector p, DnVector q, DnVector r)
    : x_(std::move(x)),
      y_(std::move(y)),
      z_(std::move(z)),
      p_(std::move(p)),
      q_(std::move(q)),
      r_(std::move(r)) {
    require_shared_system(x_, y_);
    require_shared_system(x_, z_);
    require_shared_system(x_, p_);
    require_shared_system(x_, q_);
    require_shared_system(x_, r_);
}

AlbouyState AlbouyState::zero(const BodySystemPtr& system) {
    DnVector z = DnVector::zero(system);
    return AlbouyState(z, z, z, z, z, z);
}

AlbouyState to_albouy(const CartesianState& c, const BodySystemPtr& system) {
    const std::size_t n = system->size();
    if (c.positions.size() != n || c.velocities.size() != n)
        throw DimensionError("cartesian state size does not match body count");
    std::vector<double> comp[6];
    for (auto& v : comp) v.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        comp[0][i] = c.positions[i].x;
        comp[1][i] = c.positions[i].y;
        comp[2][i] = c.positions[i].z;
        comp[3][i] = c.velocities[i].x;
        comp[4][i] = c.velocities[i].y;
        comp[5][i] = c.velocities[i].z;
    }
    return AlbouyState(DnVector::centered(system, std::move(comp[0])),
                       DnVector::centered(system, std::move(comp[1])),
                       DnVector::centered(system, std::move(comp[2])),
                       DnVector::centered(system, std::move(comp[3])),
                       DnVector::centered(system, std::move(comp[4])),
                       DnVector::centered(system, std::move(comp[5])));
}

CartesianState to_cartesian(const AlbouyState& s) {
    CartesianState c;
    c.positions.resize(s.size());
    c.velocities.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        c.positions[i] = s.position(i);
        c.velocities[i] = s.velocity(i);
    }
    return c;
}

Observables observables(const AlbouyState& s) {
    Observables obs;
    const double px = mass_inner(s.P(), s.P());
    const double qx = mass_inner(s.Q(), s.Q());
    const double rx = mass_inner(s.R(), s.R());
    obs.K = px + qx + rx;
    obs.I = mass_inner(s.X(), s.X()) + mass_inner(s.Y(), s.Y()) + mass_inner(s.Z(), s.Z());
    obs.L = {mass_inner(s.Y(), s.R()) - mass_inner(s.Z(), s.Q()),
             mass_inner(s.Z(), s.P()) - mass_inner(s.X(), s.R()),
             mass_inner(s.X(), s.Q()) - mass_inner(s.Y(), s.P())};
    try {
        obs.V = potential(s);
        obs.H = 0.5 * obs.K + *obs.V;
    } catch (const CollisionError&) {
        obs.collision = true;
    }
    return obs;
}

AlbouyState rotate(const Mat3& g, const AlbouyState& s) {
    if (orthogonality_defect(g) > 1e-12)
        throw NonOrthogonalError("rotation matrix is not orthogonal to 1e-12");
    if (std::abs(g.det() - 1.0) > 1e-12)
        throw NonOrthogonalError("matrix must be a proper rotation (det +1)");
    const std::size_t n = s.size();
    std::vector<double> comp[6];
    for (auto& v : comp) v.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 q = g * s.position(i);
        const Vec3 v = g * s.velocity(i);
        comp[0][i] = q.x;
        comp[1][i] = q.y;
        comp[2][i] = q.z;
        comp[3][i] = v.x;
        comp[4][i] = v.y;
        comp[5][i] = v.z;
    }
    // Re-project each rotated component: the mix of X, Y, Z can cancel down
    // to entries far below the inputs, where inherited roundoff would break
    // the constructor's relative tolerance.
    const BodySystemPtr& sys = s.system();
    return AlbouyState(DnVector::centered(sys, std::move(comp[0])),
                       DnVector::centered(sys, std::move(comp[1])),
                       DnVector::centered(sys, std::move(comp[2])),
                       DnVector::centered(sys, std::move(comp[3])),
                       DnVector::centered(sys, std::move(comp[4])),
                       DnVector::centered(sys, std::move(comp[5])));
}

IzKz iz_kz(const AlbouyState& s) {
    IzKz out;
    out.I_z = mass_inner(s.X(), s.X()) + mass_inner(s.Y(), s.Y());
    out.K_z = mass_inner(s.P(), s.P()) + mass_inner(s.Q(), s.Q());
    return out;
}

double pair_distance(const AlbouyState& s, std::size_t i, std::size_t j) {
    const double dx = s.X()[i] - s.X()[j];
    const double dy = s.Y()[i] - s.Y()[j];
    const double dz = s.Z()[i] - s.Z()[j];
    return std::hypot(dx, dy, dz);
}

double min_pair_distance(const AlbouyState& s) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            best = std::min(best, pair_distance(s, i, j));
    return best;
}

double max_pair_distance(const AlbouyState& s) {
    double best = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            best = std::max(best, pair_distance(s, i, j));
    return best;
}

} // namespace cpinf
