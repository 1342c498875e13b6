#pragma once

#include <array>
#include <cmath>

namespace nematic {

using Vec2 = std::array<double, 2>;

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a[0], s * a[1]}; }
inline double dot(Vec2 a, Vec2 b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm2(Vec2 a) { return std::sqrt(dot(a, a)); }

/// 2x2 matrix, row-major: m[0]=a00, m[1]=a01, m[2]=a10, m[3]=a11.
using Mat2 = std::array<double, 4>;

inline Vec2 matvec(const Mat2& m, Vec2 v) {
  return {m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1]};
}
inline Vec2 mattvec(const Mat2& m, Vec2 v) {  // transpose apply
  return {m[0] * v[0] + m[2] * v[1], m[1] * v[0] + m[3] * v[1]};
}

}  // namespace nematic
