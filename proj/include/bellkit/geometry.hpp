#pragma once

#include <cmath>

namespace bellkit {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
inline Vec3 operator*(double s, const Vec3& v) {
  return {s * v.x, s * v.y, s * v.z};
}

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
          a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

// Angle between two unit vectors, in [0, pi]. Uses atan2 of the cross and
// dot products, which stays fully conditioned near 0 and pi where the
// acos(dot) form loses half the significant digits.
double angle_between(const Vec3& a, const Vec3& b);

// Measurement layout for one CHSH evaluation: two axes per party.
struct AxisQuadruple {
  Vec3 a;
  Vec3 a_prime;
  Vec3 b;
  Vec3 b_prime;
};

// All four axes in the xy-plane: a' at angle 0, then b, a, b' at successive
// separations s1, s2, s3 (radians, each in [0, pi]).
AxisQuadruple coplanar_quadruple(double s1, double s2, double s3);

}  // namespace bellkit
