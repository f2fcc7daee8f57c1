#ifndef CPINF_GEOM_HPP
#define CPINF_GEOM_HPP

#include <array>
#include <cmath>

namespace cpinf {

/// Minimal 3-vector. Heavier linear algebra is not needed anywhere in the
/// library; everything lives in R^3 or in N-vectors handled by DnVector.
struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Row-major 3x3 matrix.
struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    double& operator()(int r, int c) { return m[static_cast<std::size_t>(3 * r + c)]; }
    double operator()(int r, int c) const { return m[static_cast<std::size_t>(3 * r + c)]; }

    static Mat3 identity() { return {}; }

    Vec3 operator*(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }
    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
                r(i, j) = s;
            }
        return r;
    }
    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }
    double det() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }
};

/// Max absolute deviation of g^T g from the identity.
double orthogonality_defect(const Mat3& g);

/// Rotation by `angle` about `axis` (need not be normalized).
Mat3 axis_angle_rotation(const Vec3& axis, double angle);

/// Proper rotation g with g*v parallel to +z and |g*v| = |v|.
/// v must be nonzero.
Mat3 rotation_taking_to_z(const Vec3& v);

/// Eigen-decomposition of a symmetric 3x3 matrix by cyclic Jacobi sweeps.
/// Returns eigenvalues ascending; columns of `vectors` are the eigenvectors.
struct SymEigen3 {
    std::array<double, 3> values;
    Mat3 vectors;
};
SymEigen3 sym_eigen3(const Mat3& a);

/// Solve a * x = b for symmetric positive definite a, via sym_eigen3.
Vec3 solve_sym3(const Mat3& a, const Vec3& b);

} // namespace cpinf

#endif
