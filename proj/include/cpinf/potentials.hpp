#ifndef CPINF_POTENTIALS_HPP
#define CPINF_POTENTIALS_HPP

#include <functional>
#include <span>
#include <vector>

#include "cpinf/albouy.hpp"

namespace cpinf {

/// Symmetric table of pairwise coefficients alpha_ij (diagonal unused).
class PairCoefficients {
public:
    static PairCoefficients from_system(const BodySystem& sys);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return alpha_[i * n_ + j]; }

private:
    PairCoefficients(std::size_t n, std::vector<double> alpha);
    std::size_t n_;
    std::vector<double> alpha_;
};

struct HomogeneityReport {
    bool pass = true;
    double max_relative_error = 0.0;
    double worst_scale = 0.0;
    double worst_sample = 0.0;
};

/// Check f(lambda x) = lambda^degree f(x) on a grid of scales over the given
/// sample points, to 1e-10 relative.
HomogeneityReport homogeneity_degree_check(double degree,
                                           const std::function<double(double)>& f,
                                           std::span<const double> samples);

/// A homogeneous pair kernel f with its analytic derivative. Construction
/// verifies the declared degree (homogeneity check to 1e-10 relative) and the
/// vanishing of f and f' at infinity on a sampled tail.
class HomogeneousKernel {
public:
    HomogeneousKernel(double degree, std::function<double(double)> f,
                      std::function<double(double)> derivative);

    /// f(x) = 1/x, degree -1. The kernel of the gravitational and Coulomb
    /// interactions.
    static HomogeneousKernel inverse_r();

    /// f(x) = coefficient * x^degree; degree must be negative.
    static HomogeneousKernel power(double degree, double coefficient = 1.0);

    double degree() const { return degree_; }
    double operator()(double x) const { return f_(x); }
    double derivative(double x) const { return df_(x); }

    /// True for the built-in 1/x kernel, which enables closed-form solutions
    /// downstream.
    bool is_inverse_r() const { return inverse_r_; }

private:
    double degree_;
    std::function<double(double)> f_;
    std::function<double(double)> df_;
    bool inverse_r_ = false;
};

HomogeneityReport homogeneity_degree_check(const HomogeneousKernel& kernel,
                                           std::span<const double> samples);

/// Kernel implied by the system's interaction kind.
HomogeneousKernel system_kernel(const BodySystem& sys);

/// V = sum_{i<j} alpha_ij f(r_ij). Throws CollisionError when a pair sits at
/// (numerically) identical positions, DomainError when the result is not
/// finite.
double potential(const AlbouyState& s, const PairCoefficients& coeffs,
                 const HomogeneousKernel& kernel);
double potential(const AlbouyState& s);

/// Potential restricted to pairs inside `block` (a set of body indices);
/// cross pairs are ignored. Used by the cluster machinery.
double potential_within(const AlbouyState& s, const PairCoefficients& coeffs,
                        const HomogeneousKernel& kernel, std::span<const std::size_t> block);

/// Gradient of H and of the constraint functions live in the tangent space
/// D_N^6; one D_N vector per state component. Velocity components of grad V
/// are identically zero.
struct PhaseGradient {
    DnVector x, y, z, p, q, r;

    double norm() const;
    PhaseGradient operator-(const PhaseGradient& o) const;
    PhaseGradient operator+(const PhaseGradient& o) const;
    PhaseGradient operator*(double s) const;
};

/// Analytic gradient of V with respect to the mass inner product, i.e. the
/// vector field G with dV = <G, dS>. Component i of grad_X V is
/// (1/m_i) * dV/dxi_i, which is mass-orthogonal to uniform translations;
/// the result is projected onto D_N and the pre-projection residual must
/// stay below 1e-12.
PhaseGradient grad_potential(const AlbouyState& s, const PairCoefficients& coeffs,
                             const HomogeneousKernel& kernel);
PhaseGradient grad_potential(const AlbouyState& s);

/// Gradient restricted to pairs inside `block`.
PhaseGradient grad_potential_within(const AlbouyState& s, const PairCoefficients& coeffs,
                                    const HomogeneousKernel& kernel,
                                    std::span<const std::size_t> block);

/// Dilation: positions scale by e^{2s}, velocities by e^{degree * s}. For a
/// kernel of homogeneity degree mu this sends H to e^{2 mu s} H and L to
/// e^{(2 + mu) s} L.
AlbouyState dilate(double s, const AlbouyState& state, double degree = -1.0);

} // namespace cpinf

#endif
