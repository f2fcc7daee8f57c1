#ifndef CPINF_DN_VECTOR_HPP
#define CPINF_DN_VECTOR_HPP

#include <cstddef>
#include <vector>

#include "cpinf/body_system.hpp"

namespace cpinf {

/// An N-vector constrained to D_N, the mass-weighted zero-sum subspace:
/// sum_i m_i xi_i = 0. Construction validates the constraint to an absolute
/// tolerance of 1e-12 * (total mass) * max|xi_i|, which absorbs the roundoff
/// of centring in double precision.
///
/// One component of a translation-reduced state. Immutable value type.
class DnVector {
public:
    DnVector(BodySystemPtr system, std::vector<double> entries);

    static DnVector zero(const BodySystemPtr& system);

    /// Subtract the mass-weighted mean from raw entries, then construct.
    static DnVector centered(const BodySystemPtr& system, std::vector<double> raw);

    std::size_t size() const { return entries_.size(); }
    double operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<double>& entries() const { return entries_; }
    const BodySystemPtr& system() const { return system_; }

    DnVector operator+(const DnVector& o) const;
    DnVector operator-(const DnVector& o) const;
    DnVector operator*(double s) const;

    double max_abs() const;

private:
    BodySystemPtr system_;
    std::vector<double> entries_;
};

/// The mass inner product <X, Y> = sum_i m_i xi_i eta_i.
double mass_inner(const DnVector& a, const DnVector& b);

/// Norm induced by the mass inner product.
double mass_norm(const DnVector& a);

/// Shared dimension/system precondition used by all binary operations.
void require_same_system(const DnVector& a, const DnVector& b);

} // namespace cpinf

#endif
