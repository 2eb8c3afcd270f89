#pragma once

namespace vortexcaps {

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

/// Colatitude theta in (0, pi) and longitude phi in [0, 2 pi).
struct ColatLong {
  double theta = 0.0;
  double phi = 0.0;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

double norm(const Point3& p);

/// Reduces a longitude to [0, 2 pi).
double wrap_longitude(double phi);

/// Maps (theta, phi) to (sin theta cos phi, sin theta sin phi, cos theta).
/// Throws DomainError unless theta lies in (0, pi).
Point3 chart_c1(ColatLong p);

/// D = 1 - cos t cos t' - sin t sin t' cos(phi - phi'), evaluated through
/// the half-angle form 2[sin^2((t-t')/2) + sin t sin t' sin^2((phi-phi')/2)].
double chordal_d(double theta, double theta_p, double phi, double phi_p);

/// Direct cosine form of chordal_d, kept for cross-checks.
double chordal_d_direct(double theta, double theta_p, double phi,
                        double phi_p);

/// G = log(D) / (4 pi) - log(2) / (4 pi). Throws SingularityError at D = 0.
double green_kernel(double theta, double theta_p, double phi, double phi_p);

/// Rotation by alpha about the z axis.
Point3 rotate_z(double alpha, const Point3& p);

}  // namespace vortexcaps
