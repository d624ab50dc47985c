#include "bellkit/geometry.hpp"

#include <stdexcept>

namespace bellkit {

double angle_between(const Vec3& a, const Vec3& b) {
  const double c = norm(cross(a, b));
  const double d = dot(a, b);
  return std::atan2(c, d);
}

AxisQuadruple coplanar_quadruple(double s1, double s2, double s3) {
  for (double s : {s1, s2, s3}) {
    if (!(s >= 0.0 && s <= kPi)) {
      throw std::domain_error("coplanar separation outside [0, pi]");
    }
  }
  auto unit = [](double phi) { return Vec3{std::cos(phi), std::sin(phi), 0.0}; };
  AxisQuadruple q;
  q.a_prime = unit(0.0);
  q.b = unit(s1);
  q.a = unit(s1 + s2);
  q.b_prime = unit(s1 + s2 + s3);
  return q;
}

}  // namespace bellkit
