#pragma once

#include <Eigen/Dense>

namespace magshell {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

inline Mat3 sym(const Mat3& m) { return 0.5 * (m + m.transpose()); }
inline Mat3 skew(const Mat3& m) { return 0.5 * (m - m.transpose()); }
inline Mat2 sym2(const Mat2& m) { return 0.5 * (m + m.transpose()); }

inline double frob(const Mat3& m) { return m.norm(); }
inline double ddot(const Mat3& a, const Mat3& b) { return (a.array() * b.array()).sum(); }

} // namespace magshell
