#include "vortexcaps/geometry.hpp"

#include <cmath>
#include <string>

#include "vortexcaps/errors.hpp"

namespace vortexcaps {

double norm(const Point3& p) { return std::hypot(p.x, p.y, p.z); }

double wrap_longitude(double phi) {
  double r = std::fmod(phi, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

Point3 chart_c1(ColatLong p) {
  if (!(p.theta > 0.0 && p.theta < pi)) {
    throw DomainError("chart_c1: colatitude " + std::to_string(p.theta) +
                      " outside (0, pi)");
  }
  const double phi = wrap_longitude(p.phi);
  const double s = std::sin(p.theta);
  return {s * std::cos(phi), s * std::sin(phi), std::cos(p.theta)};
}

double chordal_d(double theta, double theta_p, double phi, double phi_p) {
  const double a = std::sin(0.5 * (theta - theta_p));
  const double b = std::sin(0.5 * (phi - phi_p));
  return 2.0 * (a * a + std::sin(theta) * std::sin(theta_p) * b * b);
}

double chordal_d_direct(double theta, double theta_p, double phi,
                        double phi_p) {
  return 1.0 - std::cos(theta) * std::cos(theta_p) -
         std::sin(theta) * std::sin(theta_p) * std::cos(phi - phi_p);
}

double green_kernel(double theta, double theta_p, double phi, double phi_p) {
  const double d = chordal_d(theta, theta_p, phi, phi_p);
  if (d <= 0.0) {
    throw SingularityError("green_kernel: coincident points");
  }
  return (std::log(d) - std::log(2.0)) / (4.0 * pi);
}

Point3 rotate_z(double alpha, const Point3& p) {
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  return {c * p.x - s * p.y, s * p.x + c * p.y, p.z};
}

}  // namespace vortexcaps
