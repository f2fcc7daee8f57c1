#ifndef CPINF_ALBOUY_HPP
#define CPINF_ALBOUY_HPP

#include <optional>
#include <vector>

#include "cpinf/dn_vector.hpp"
#include "cpinf/geom.hpp"

namespace cpinf {

/// Raw positions/velocities before translation reduction. I/O representation
/// only; no constraints beyond finiteness.
struct CartesianState {
    std::vector<Vec3> positions;
    std::vector<Vec3> velocities;
};

/// Translation-reduced phase point in Albouy coordinates: the six-tuple
/// S = (X, Y, Z, P, Q, R) of D_N vectors. X/Y/Z hold the position components
/// of all bodies, P/Q/R the velocity components. All six share one system.
class AlbouyState {
public:
    AlbouyState(DnVector x, DnVector y, DnVector z, DnVector p, DnVector q, DnVector r);

    static AlbouyState zero(const BodySystemPtr& system);

    const DnVector& X() const { return x_; }
    const DnVector& Y() const { return y_; }
    const DnVector& Z() const { return z_; }
    const DnVector& P() const { return p_; }
    const DnVector& Q() const { return q_; }
    const DnVector& R() const { return r_; }

    const BodySystemPtr& system() const { return x_.system(); }
    std::size_t size() const { return x_.size(); }

    Vec3 position(std::size_t i) const { return {x_[i], y_[i], z_[i]}; }
    Vec3 velocity(std::size_t i) const { return {p_[i], q_[i], r_[i]}; }

private:
    DnVector x_, y_, z_, p_, q_, r_;
};

/// Subtract the mass-weighted centre of mass from positions and the
/// mass-weighted mean velocity from velocities, then split components.
AlbouyState to_albouy(const CartesianState& c, const BodySystemPtr& system);

/// Inverse of the reduction split, for serialization and distance queries.
CartesianState to_cartesian(const AlbouyState& s);

/// K, I and L are total quantities in the mass norm; V and H are absent
/// (nullopt) when the state contains an exact collision. Kinetic energy is
/// K/2, total energy H = K/2 + V.
struct Observables {
    double K = 0.0;
    double I = 0.0;
    Vec3 L{};
    std::optional<double> V;
    std::optional<double> H;
    bool collision = false;
};

Observables observables(const AlbouyState& s);

/// Simultaneous SO(3) action on the position triple and the velocity triple
/// of every body. g must be orthogonal with det +1 (checked to 1e-12);
/// K, I, V, H are invariant and L maps to g L.
AlbouyState rotate(const Mat3& g, const AlbouyState& s);

struct IzKz {
    double I_z = 0.0;  ///< |X|^2 + |Y|^2
    double K_z = 0.0;  ///< |P|^2 + |Q|^2
};

IzKz iz_kz(const AlbouyState& s);

/// Euclidean distance between bodies i and j reconstructed from (X, Y, Z).
double pair_distance(const AlbouyState& s, std::size_t i, std::size_t j);

/// Smallest pairwise distance; +inf for a single body.
double min_pair_distance(const AlbouyState& s);

/// Largest pairwise distance (configuration diameter); 0 for a single body.
double max_pair_distance(const AlbouyState& s);

} // namespace cpinf

#endif
