#include "cpinf/relative_equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace cpinf {

namespace {

double bisect_root(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if (fmid == 0.0 || (hi - lo) < 1e-15 * hi) return mid;
        if ((flo < 0.0) == (fmid < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

TwoBodyReduction reduce_two_body(const BodySystem& sys,
                                 std::pair<std::size_t, std::size_t> pair) {
    const auto [i, j] = pair;
    if (i == j || i >= sys.size() || j >= sys.size())
        throw DomainError("two-body reduction needs two distinct body indices");
    const double m1 = sys.mass(i), m2 = sys.mass(j);
    return {m1 * m2 / (m1 + m2), m1 + m2, sys.pair_coefficient(i, j), system_kernel(sys)};
}

double effective_potential(const TwoBodyReduction& red, double ell, double r) {
    if (!(r > 0.0)) throw DomainError("effective potential requires r > 0");
    return ell * ell / (2.0 * red.mu * r * r) + red.gamma * red.kernel(r);
}

double effective_potential_derivative(const TwoBodyReduction& red, double ell, double r) {
    if (!(r > 0.0)) throw DomainError("effective potential requires r > 0");
    return -ell * ell / (red.mu * r * r * r) + red.gamma * red.kernel.derivative(r);
}

RelativeEquilibrium solve_relative_equilibrium(const TwoBodyReduction& red, double ell) {
    if (ell == 0.0) throw DomainError("relative equilibria live on nonzero levels of L");
    RelativeEquilibrium re;
    re.ell = ell;
    if (red.kernel.is_inverse_r()) {
        if (!(red.gamma < 0.0))
            throw NoRelativeEquilibriumError(
                "the reduced system has no critical point for a non-attracting pair",
                red.gamma);
        re.r_star = -ell * ell / (red.mu * red.gamma);
        re.h = -red.mu * red.gamma * red.gamma / (2.0 * ell * ell);
        re.all_roots = {re.r_star};
    } else {
        // Custom kernel: scan a wide geometric grid of U' for sign changes and
        // bisect each bracket. Uniqueness is not assumed.
        auto du = [&](double r) { return effective_potential_derivative(red, ell, r); };
        const double scale = std::max(std::abs(ell * ell / (red.mu * std::max(
                                          std::abs(red.gamma), 1e-12))),
                                      1.0);
        std::vector<double> roots;
        double prev_r = scale * 1e-6;
        double prev_f = du(prev_r);
        for (int k = 1; k <= 600; ++k) {
            const double r = scale * 1e-6 * std::pow(10.0, k / 50.0);
            const double f = du(r);
            if (std::isfinite(prev_f) && std::isfinite(f) && (prev_f < 0.0) != (f < 0.0))
                roots.push_back(bisect_root(du, prev_r, r));
            prev_r = r;
            prev_f = f;
        }
        if (roots.empty())
            throw NoRelativeEquilibriumError(
                "no critical point of the effective potential on the search grid", red.gamma);
        std::sort(roots.begin(), roots.end());
        re.r_star = roots.front();
        re.h = effective_potential(red, ell, re.r_star);
        re.all_roots = std::move(roots);
    }
    re.omega = ell / (red.mu * re.r_star * re.r_star);
    re.nu = -re.h * ell * ell;
    return re;
}

AlbouyState embed_re(const BodySystemPtr& sys, std::pair<std::size_t, std::size_t> pair,
                     std::optional<std::size_t> singleton, const RelativeEquilibrium& re,
                     double phase) {
    const std::size_t n = sys->size();
    const auto [i, j] = pair;
    if (i == j || i >= n || j >= n) throw DomainError("invalid pair indices");
    if (n == 2) {
        if (singleton) throw DomainError("a two-body system has no singleton slot");
    } else if (n == 3) {
        const std::size_t expected = 3 - i - j;
        if (!singleton || *singleton != expected)
            throw DomainError("the singleton must be the body outside the pair");
    } else {
        throw DomainError("embed_re supports two- and three-body systems");
    }
    const double m1 = sys->mass(i), m2 = sys->mass(j);
    const double d1 = m2 / (m1 + m2) * re.r_star;
    const double d2 = m1 / (m1 + m2) * re.r_star;
    const double c = std::cos(phase), s = std::sin(phase);
    std::vector<double> x(n, 0.0), y(n, 0.0), z(n, 0.0), p(n, 0.0), q(n, 0.0), r(n, 0.0);
    x[i] = d1 * c;
    y[i] = d1 * s;
    x[j] = -d2 * c;
    y[j] = -d2 * s;
    // Tangential velocities v = omega ez x q; omega carries the sign of ell.
    p[i] = -re.omega * y[i];
    q[i] = re.omega * x[i];
    p[j] = -re.omega * y[j];
    q[j] = re.omega * x[j];
    return AlbouyState(DnVector(sys, std::move(x)), DnVector(sys, std::move(y)),
                       DnVector(sys, std::move(z)), DnVector(sys, std::move(p)),
                       DnVector(sys, std::move(q)), DnVector(sys, std::move(r)));
}

std::vector<BifurcationValue> bifurcation_values(const BodySystem& sys) {
    if (sys.size() != 3)
        throw DomainError("bifurcation values at infinity are defined for 3-body systems");
    std::vector<BifurcationValue> out;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) {
            const double gamma = sys.pair_coefficient(i, j);
            if (!(gamma < 0.0)) continue;  // only attracting pairs form a cluster
            const double mu = sys.mass(i) * sys.mass(j) / (sys.mass(i) + sys.mass(j));
            out.push_back({i, j, gamma, mu, 0.5 * mu * gamma * gamma});
        }
    std::stable_sort(out.begin(), out.end(),
                     [](const BifurcationValue& a, const BifurcationValue& b) {
                         return a.nu < b.nu;
                     });
    return out;
}

} // namespace cpinf
