#include "cpinf/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace cpinf {

namespace {

constexpr double kCollisionThreshold = 1e-300;

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    return idx;
}

} // namespace

PairCoefficients::PairCoefficients(std::size_t n, std::vector<double> alpha)
    : n_(n), alpha_(std::move(alpha)) {}

PairCoefficients PairCoefficients::from_system(const BodySystem& sys) {
    const std::size_t n = sys.size();
    std::vector<double> alpha(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) alpha[i * n + j] = sys.pair_coefficient(i, j);
    return PairCoefficients(n, std::move(alpha));
}

HomogeneityReport homogeneity_degree_check(double degree,
                                           const std::function<double(double)>& f,
                                           std::span<const double> samples) {
    static const double scales[] = {0.5, 2.0, 3.0, 10.0, 100.0};
    HomogeneityReport report;
    for (double x : samples) {
        if (!(x > 0.0)) throw DomainError("homogeneity samples must be positive");
        const double fx = f(x);
        for (double lam : scales) {
            const double lhs = f(lam * x);
            const double rhs = std::pow(lam, degree) * fx;
            const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
            const double rel = std::abs(lhs - rhs) / scale;
            if (rel > report.max_relative_error) {
                report.max_relative_error = rel;
                report.worst_scale = lam;
                report.worst_sample = x;
            }
        }
    }
    report.pass = report.max_relative_error <= 1e-10;
    return report;
}

HomogeneityReport homogeneity_degree_check(const HomogeneousKernel& kernel,
                                           std::span<const double> samples) {
    return homogeneity_degree_check(kernel.degree(), [&](double x) { return kernel(x); },
                                    samples);
}

HomogeneousKernel::HomogeneousKernel(double degree, std::function<double(double)> f,
                                     std::function<double(double)> derivative)
    : degree_(degree), f_(std::move(f)), df_(std::move(derivative)) {
    static const double samples[] = {0.1, 0.7, 1.0, 3.5, 12.0};
    const auto rep = homogeneity_degree_check(degree_, f_, samples);
    if (!rep.pass)
        throw KernelError("kernel fails the declared homogeneity degree check");
    // Sampled vanishing-tail check: |f| and |f'| must be monotone
    // non-increasing over four decades and show genuine decay (a constant
    // tail fails).
    double prev_f = std::abs(f_(1e2)), prev_df = std::abs(df_(1e2));
    for (double x = 1e3; x <= 1e6; x *= 10.0) {
        const double cf = std::abs(f_(x)), cdf = std::abs(df_(x));
        if (cf > prev_f * (1.0 + 1e-9) || cdf > prev_df * (1.0 + 1e-9))
            throw KernelError("kernel tail does not decay at infinity");
        prev_f = cf;
        prev_df = cdf;
    }
    if (prev_f > 0.999 * std::abs(f_(1e2)) || prev_df > 0.999 * std::abs(df_(1e2)))
        throw KernelError("kernel does not tend to zero at infinity");
}

HomogeneousKernel HomogeneousKernel::inverse_r() {
    HomogeneousKernel k(
        -1.0, [](double x) { return 1.0 / x; }, [](double x) { return -1.0 / (x * x); });
    k.inverse_r_ = true;
    return k;
}

HomogeneousKernel HomogeneousKernel::power(double degree, double coefficient) {
    if (!(degree < 0.0))
        throw KernelError("power kernel degree must be negative for a vanishing tail");
    return HomogeneousKernel(
        degree, [=](double x) { return coefficient * std::pow(x, degree); },
        [=](double x) { return coefficient * degree * std::pow(x, degree - 1.0); });
}

HomogeneousKernel system_kernel(const BodySystem& sys) {
    switch (sys.interaction()) {
        case Interaction::Gravitational:
        case Interaction::Coulomb:
            return HomogeneousKernel::inverse_r();
        case Interaction::CustomHomogeneous:
            return HomogeneousKernel::power(sys.kernel_degree());
    }
    return HomogeneousKernel::inverse_r();  // unreachable
}

double potential_within(const AlbouyState& s, const PairCoefficients& coeffs,
                        const HomogeneousKernel& kernel, std::span<const std::size_t> block) {
    double v = 0.0;
    for (std::size_t a = 0; a < block.size(); ++a)
        for (std::size_t b = a + 1; b < block.size(); ++b) {
            const std::size_t i = block[a], j = block[b];
            const double r = pair_distance(s, i, j);
            if (r < kCollisionThreshold)
                throw CollisionError("bodies " + std::to_string(i) + " and " +
                                     std::to_string(j) + " are at identical positions");
            v += coeffs(i, j) * kernel(r);
        }
    if (!std::isfinite(v)) throw DomainError("potential evaluated to a non-finite value");
    return v;
}

double potential(const AlbouyState& s, const PairCoefficients& coeffs,
                 const HomogeneousKernel& kernel) {
    const auto idx = all_indices(s.size());
    return potential_within(s, coeffs, kernel, idx);
}

double potential(const AlbouyState& s) {
    const BodySystem& sys = *s.system();
    return potential(s, PairCoefficients::from_system(sys), system_kernel(sys));
}

double PhaseGradient::norm() const {
    const double s = mass_inner(x, x) + mass_inner(y, y) + mass_inner(z, z) +
                     mass_inner(p, p) + mass_inner(q, q) + mass_inner(r, r);
    return std::sqrt(s);
}

PhaseGradient PhaseGradient::operator-(const PhaseGradient& o) const {
    return {x - o.x, y - o.y, z - o.z, p - o.p, q - o.q, r - o.r};
}

PhaseGradient PhaseGradient::operator+(const PhaseGradient& o) const {
    return {x + o.x, y + o.y, z + o.z, p + o.p, q + o.q, r + o.r};
}

PhaseGradient PhaseGradient::operator*(double s) const {
    return {x * s, y * s, z * s, p * s, q * s, r * s};
}

PhaseGradient grad_potential_within(const AlbouyState& s, const PairCoefficients& coeffs,
                                    const HomogeneousKernel& kernel,
                                    std::span<const std::size_t> block) {
    const std::size_t n = s.size();
    std::vector<double> gx(n, 0.0), gy(n, 0.0), gz(n, 0.0);
    for (std::size_t a = 0; a < block.size(); ++a)
        for (std::size_t b = a + 1; b < block.size(); ++b) {
            const std::size_t i = block[a], j = block[b];
            const double r = pair_distance(s, i, j);
            if (r < kCollisionThreshold)
                throw CollisionError("bodies " + std::to_string(i) + " and " +
                                     std::to_string(j) + " are at identical positions");
            const double w = coeffs(i, j) * kernel.derivative(r) / r;
            const double dx = s.X()[i] - s.X()[j];
            const double dy = s.Y()[i] - s.Y()[j];
            const double dz = s.Z()[i] - s.Z()[j];
            gx[i] += w * dx;
            gx[j] -= w * dx;
            gy[i] += w * dy;
            gy[j] -= w * dy;
            gz[i] += w * dz;
            gz[j] -= w * dz;
        }
    // Mass gradient: divide each standard partial derivative by m_i.
    const BodySystemPtr& sys = s.system();
    double max_abs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        gx[i] /= sys->mass(i);
        gy[i] /= sys->mass(i);
        gz[i] /= sys->mass(i);
        max_abs = std::max({max_abs, std::abs(gx[i]), std::abs(gy[i]), std::abs(gz[i])});
    }
    // The mass gradient of a translation-invariant function lies in D_N
    // exactly; project and verify the residual stayed at roundoff level.
    const double tol = 1e-12 * sys->total_mass() * std::max(max_abs, 1.0);
    for (auto* comp : {&gx, &gy, &gz}) {
        double weighted = 0.0;
        for (std::size_t i = 0; i < n; ++i) weighted += sys->mass(i) * (*comp)[i];
        if (std::abs(weighted) > tol)
            throw DomainError("potential gradient left the D_N subspace");
        const double mean = weighted / sys->total_mass();
        for (double& v : *comp) v -= mean;
    }
    const DnVector zero = DnVector::zero(sys);
    return {DnVector(sys, std::move(gx)), DnVector(sys, std::move(gy)),
            DnVector(sys, std::move(gz)), zero, zero, zero};
}

PhaseGradient grad_potential(const AlbouyState& s, const PairCoefficients& coeffs,
                             const HomogeneousKernel& kernel) {
    const auto idx = all_indices(s.size());
    return grad_potential_within(s, coeffs, kernel, idx);
}

PhaseGradient grad_potential(const AlbouyState& s) {
    const BodySystem& sys = *s.system();
    return grad_potential(s, PairCoefficients::from_system(sys), system_kernel(sys));
}

AlbouyState dilate(double s, const AlbouyState& state, double degree) {
    const double pos_scale = std::exp(2.0 * s);
    const double vel_scale = std::exp(degree * s);
    return AlbouyState(state.X() * pos_scale, state.Y() * pos_scale, state.Z() * pos_scale,
                       state.P() * vel_scale, state.Q() * vel_scale, state.R() * vel_scale);
}

} // namespace cpinf
