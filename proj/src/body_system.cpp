#include "cpinf/body_system.hpp"

#include <cmath>
#include <utility>

namespace cpinf {

namespace {

void validate_masses(const std::vector<double>& masses) {
    if (masses.empty()) throw DomainError("body system needs at least one body");
    for (double m : masses) {
        if (!(m > 0.0) || !std::isfinite(m))
            throw DomainError("all masses must be strictly positive and finite");
    }
}

} // namespace

BodySystem::BodySystem(std::vector<double> masses, std::optional<std::vector<double>> charges,
                       Interaction kind, double degree, std::vector<double> alpha)
    : masses_(std::move(masses)),
      charges_(std::move(charges)),
      interaction_(kind),
      degree_(degree),
      alpha_(std::move(alpha)),
      total_mass_(0.0) {
    for (double m : masses_) total_mass_ += m;
}

BodySystemPtr BodySystem::gravitational(std::vector<double> masses) {
    validate_masses(masses);
    return BodySystemPtr(
        new BodySystem(std::move(masses), std::nullopt, Interaction::Gravitational, -1.0, {}));
}

BodySystemPtr BodySystem::coulomb(std::vector<double> masses, std::vector<double> charges) {
    validate_masses(masses);
    if (charges.size() != masses.size())
        throw DomainError("coulomb interaction requires one charge per body");
    for (double c : charges)
        if (!std::isfinite(c)) throw DomainError("charges must be finite");
    return BodySystemPtr(new BodySystem(std::move(masses), std::move(charges),
                                        Interaction::Coulomb, -1.0, {}));
}

BodySystemPtr BodySystem::custom_homogeneous(std::vector<double> masses, double degree,
                                             std::vector<double> alpha) {
    validate_masses(masses);
    const std::size_t n = masses.size();
    if (alpha.size() != n * n)
        throw DomainError("custom coefficient table must be N x N");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (alpha[i * n + j] != alpha[j * n + i])
                throw DomainError("custom coefficient table must be exactly symmetric");
    if (!std::isfinite(degree)) throw DomainError("kernel degree must be finite");
    return BodySystemPtr(new BodySystem(std::move(masses), std::nullopt,
                                        Interaction::CustomHomogeneous, degree,
                                        std::move(alpha)));
}

double BodySystem::pair_coefficient(std::size_t i, std::size_t j) const {
    switch (interaction_) {
        case Interaction::Gravitational:
            return -masses_[i] * masses_[j];
        case Interaction::Coulomb:
            return (*charges_)[i] * (*charges_)[j];
        case Interaction::CustomHomogeneous:
            return alpha_[i * masses_.size() + j];
    }
    return 0.0;  // unreachable
}

bool same_system(const BodySystemPtr& a, const BodySystemPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->masses() == b->masses() && a->charges() == b->charges() &&
           a->interaction() == b->interaction() && a->kernel_degree() == b->kernel_degree();
}

} // namespace cpinf
