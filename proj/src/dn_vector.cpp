#include "cpinf/dn_vector.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace cpinf {

DnVector::DnVector(BodySystemPtr system, std::vector<double> entries)
    : system_(std::move(system)), entries_(std::move(entries)) {
    if (!system_) throw DomainError("DnVector requires a body system");
    if (entries_.size() != system_->size())
        throw DimensionError("DnVector entry count does not match body count");
    double weighted_sum = 0.0;
    double max_entry = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (!std::isfinite(entries_[i])) throw DomainError("DnVector entries must be finite");
        weighted_sum += system_->mass(i) * entries_[i];
        max_entry = std::max(max_entry, std::abs(entries_[i]));
    }
    const double tol = 1e-12 * system_->total_mass() * max_entry;
    if (std::abs(weighted_sum) > tol)
        throw ConstraintError("mass-weighted sum violates the D_N constraint");
}

DnVector DnVector::zero(const BodySystemPtr& system) {
    return DnVector(system, std::vector<double>(system->size(), 0.0));
}

DnVector DnVector::centered(const BodySystemPtr& system, std::vector<double> raw) {
    if (raw.size() != system->size())
        throw DimensionError("entry count does not match body count");
    // Two passes: the first removes an O(1) mean, the second the roundoff
    // that subtraction leaves when the centred result is much smaller than
    // the input scale.
    for (int pass = 0; pass < 2; ++pass) {
        double weighted_sum = 0.0;
        for (std::size_t i = 0; i < raw.size(); ++i) weighted_sum += system->mass(i) * raw[i];
        const double mean = weighted_sum / system->total_mass();
        for (double& v : raw) v -= mean;
    }
    return DnVector(system, std::move(raw));
}

// Sums and differences of D_N vectors are re-projected: cancellation can
// leave a result whose entries are far smaller than the operands', so the
// inherited roundoff in the weighted sum would otherwise exceed the
// relative tolerance of the constructor.
DnVector DnVector::operator+(const DnVector& o) const {
    require_same_system(*this, o);
    std::vector<double> out(entries_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = entries_[i] + o.entries_[i];
    return DnVector::centered(system_, std::move(out));
}

DnVector DnVector::operator-(const DnVector& o) const {
    require_same_system(*this, o);
    std::vector<double> out(entries_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = entries_[i] - o.entries_[i];
    return DnVector::centered(system_, std::move(out));
}

DnVector DnVector::operator*(double s) const {
    std::vector<double> out(entries_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = entries_[i] * s;
    return DnVector(system_, std::move(out));
}

double DnVector::max_abs() const {
    double m = 0.0;
    for (double v : entries_) m = std::max(m, std::abs(v));
    return m;
}

double mass_inner(const DnVector& a, const DnVector& b) {
    require_same_system(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a.system()->mass(i) * a[i] * b[i];
    return s;
}

double mass_norm(const DnVector& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a.system()->mass(i) * a[i] * a[i];
    return std::sqrt(s);
}

void require_same_system(const DnVector& a, const DnVector& b) {
    if (a.size() != b.size() || !same_system(a.system(), b.system()))
        throw DimensionError("operands belong to different body systems");
}

} // namespace cpinf
