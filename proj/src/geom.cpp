#include "cpinf/geom.hpp"

#include <algorithm>
#include <cmath>

namespace cpinf {

double orthogonality_defect(const Mat3& g) {
    const Mat3 gtg = g.transposed() * g;
    double defect = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double target = (i == j) ? 1.0 : 0.0;
            defect = std::max(defect, std::abs(gtg(i, j) - target));
        }
    return defect;
}

Mat3 axis_angle_rotation(const Vec3& axis, double angle) {
    const double n = norm(axis);
    if (n == 0.0) return Mat3::identity();
    const Vec3 u = axis * (1.0 / n);
    const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
    Mat3 r;
    r(0, 0) = c + u.x * u.x * t;
    r(0, 1) = u.x * u.y * t - u.z * s;
    r(0, 2) = u.x * u.z * t + u.y * s;
    r(1, 0) = u.y * u.x * t + u.z * s;
    r(1, 1) = c + u.y * u.y * t;
    r(1, 2) = u.y * u.z * t - u.x * s;
    r(2, 0) = u.z * u.x * t - u.y * s;
    r(2, 1) = u.z * u.y * t + u.x * s;
    r(2, 2) = c + u.z * u.z * t;
    return r;
}

Mat3 rotation_taking_to_z(const Vec3& v) {
    const double n = norm(v);
    const Vec3 u = v * (1.0 / n);
    const Vec3 ez{0.0, 0.0, 1.0};
    const double c = dot(u, ez);
    if (c > 1.0 - 1e-15) return Mat3::identity();
    if (c < -1.0 + 1e-15) return axis_angle_rotation({1.0, 0.0, 0.0}, std::acos(-1.0));
    const Vec3 axis = cross(u, ez);
    return axis_angle_rotation(axis, std::atan2(norm(axis), c));
}

SymEigen3 sym_eigen3(const Mat3& input) {
    Mat3 a = input;
    Mat3 v = Mat3::identity();
    // Cyclic Jacobi; a handful of sweeps reaches machine precision for 3x3.
    for (int sweep = 0; sweep < 32; ++sweep) {
        double off = std::abs(a(0, 1)) + std::abs(a(0, 2)) + std::abs(a(1, 2));
        if (off == 0.0) break;
        for (int p = 0; p < 2; ++p)
            for (int q = p + 1; q < 3; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                Mat3 rot = Mat3::identity();
                rot(p, p) = c;
                rot(q, q) = c;
                rot(p, q) = s;
                rot(q, p) = -s;
                a = rot.transposed() * a * rot;
                a(p, q) = a(q, p) = 0.0;
                v = v * rot;
            }
    }
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });
    SymEigen3 out;
    for (int k = 0; k < 3; ++k) {
        out.values[static_cast<std::size_t>(k)] = a(order[static_cast<std::size_t>(k)],
                                                    order[static_cast<std::size_t>(k)]);
        for (int r = 0; r < 3; ++r)
            out.vectors(r, k) = v(r, order[static_cast<std::size_t>(k)]);
    }
    return out;
}

Vec3 solve_sym3(const Mat3& a, const Vec3& b) {
    const SymEigen3 e = sym_eigen3(a);
    Vec3 x{0.0, 0.0, 0.0};
    for (int k = 0; k < 3; ++k) {
        const Vec3 vk{e.vectors(0, k), e.vectors(1, k), e.vectors(2, k)};
        const double coef = dot(vk, b) / e.values[static_cast<std::size_t>(k)];
        x = x + vk * coef;
    }
    return x;
}

} // namespace cpinf
