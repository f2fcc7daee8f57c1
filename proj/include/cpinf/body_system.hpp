#ifndef CPINF_BODY_SYSTEM_HPP
#define CPINF_BODY_SYSTEM_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "cpinf/errors.hpp"

namespace cpinf {

enum class Interaction {
    Gravitational,      ///< alpha_ij = -m_i m_j, f(x) = 1/x
    Coulomb,            ///< alpha_ij = c_i c_j,  f(x) = 1/x
    CustomHomogeneous,  ///< user-supplied alpha table and homogeneity degree
};

/// Masses, optional charges and the interaction kind of an N-body problem.
/// Immutable after construction; shared by value-semantic state types via
/// shared_ptr so that vectors can cheaply verify they belong to the same
/// system.
class BodySystem {
public:
    static std::shared_ptr<const BodySystem> gravitational(std::vector<double> masses);
    static std::shared_ptr<const BodySystem> coulomb(std::vector<double> masses,
                                                     std::vector<double> charges);
    /// Custom pairwise coefficients with a declared homogeneity degree for f.
    /// `alpha` is row-major N x N and must be symmetric; the diagonal is unused.
    static std::shared_ptr<const BodySystem> custom_homogeneous(std::vector<double> masses,
                                                                double degree,
                                                                std::vector<double> alpha);

    std::size_t size() const { return masses_.size(); }
    const std::vector<double>& masses() const { return masses_; }
    double mass(std::size_t i) const { return masses_[i]; }
    double total_mass() const { return total_mass_; }
    const std::optional<std::vector<double>>& charges() const { return charges_; }
    Interaction interaction() const { return interaction_; }

    /// Homogeneity degree of the pair kernel f (always -1 for the built-in
    /// gravitational and Coulomb interactions).
    double kernel_degree() const { return degree_; }

    /// Pairwise coefficient alpha_ij; i != j.
    double pair_coefficient(std::size_t i, std::size_t j) const;

private:
    BodySystem(std::vector<double> masses, std::optional<std::vector<double>> charges,
               Interaction kind, double degree, std::vector<double> alpha);

    std::vector<double> masses_;
    std::optional<std::vector<double>> charges_;
    Interaction interaction_;
    double degree_;
    std::vector<double> alpha_;  // only populated for CustomHomogeneous
    double total_mass_;
};

using BodySystemPtr = std::shared_ptr<const BodySystem>;

/// True when the two pointers denote the same system (identity or equal
/// masses/charges/interaction).
bool same_system(const BodySystemPtr& a, const BodySystemPtr& b);

} // namespace cpinf

#endif
