#ifndef CPINF_ERRORS_HPP
#define CPINF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cpinf {

/// Base class for all recoverable errors raised by the library.
/// The CLI maps DomainError to exit code 1 and ParseError to exit code 2.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Mismatched body count or masses between operands.
class DimensionError : public DomainError {
public:
    explicit DimensionError(const std::string& what) : DomainError(what) {}
};

/// A vector violates the mass-weighted zero-sum constraint.
class ConstraintError : public DomainError {
public:
    explicit ConstraintError(const std::string& what) : DomainError(what) {}
};

/// Two bodies occupy the same position; the potential is singular there.
class CollisionError : public DomainError {
public:
    explicit CollisionError(const std::string& what) : DomainError(what) {}
};

/// Matrix fails the orthogonality (or det = +1) requirement.
class NonOrthogonalError : public DomainError {
public:
    explicit NonOrthogonalError(const std::string& what) : DomainError(what) {}
};

/// Kernel failed the homogeneity or vanishing-tail validation.
class KernelError : public DomainError {
public:
    explicit KernelError(const std::string& what) : DomainError(what) {}
};

/// Gram matrix of constraint gradients is numerically singular
/// (angular momentum too close to the excluded zero level).
class DegenerateGramError : public DomainError {
public:
    explicit DegenerateGramError(const std::string& what) : DomainError(what) {}
};

/// Requested a relative equilibrium for a non-attracting pair.
class NoRelativeEquilibriumError : public DomainError {
public:
    NoRelativeEquilibriumError(const std::string& what, double gamma)
        : DomainError(what), gamma(gamma) {}
    double gamma;
};

/// Partition blocks are empty, overlapping, or do not cover all bodies.
class PartitionError : public DomainError {
public:
    explicit PartitionError(const std::string& what) : DomainError(what) {}
};

/// Cluster detection found no usable scale separation.
class InconclusiveClustersError : public DomainError {
public:
    explicit InconclusiveClustersError(const std::string& what) : DomainError(what) {}
};

/// Malformed input file or JSON document.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cpinf

#endif
