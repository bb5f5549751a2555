#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nilgeom {

/// Failure raised by any geometric routine that cannot produce a result.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Vec3 = std::array<double, 3>;

/// Affine coordinates of the model point with homogeneous coordinates (1, x, y, z).
struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline constexpr Point kOrigin{};

/// Left translation carrying the origin to (a, b, c).
///
/// Acting on a point p it gives (a + x, b + y, c + z + a*y); this is the row
/// vector (1, x, y, z) multiplied by the homogeneous matrix of to_matrix().
/// The action preserves the metric dx^2 + dy^2 + (dz - x dy)^2.
struct Translation {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  friend bool operator==(const Translation&, const Translation&) = default;
};

inline constexpr Translation kIdentity{};

/// Longitude, altitude and arc length of a translation curve leaving the origin.
struct CurveParams {
  double phi = 0.0;    // in [-pi, pi]
  double theta = 0.0;  // in [-pi/2, pi/2]
  double r = 0.0;
};

/// Initial velocity (x'(0), y'(0), z'(0)) of a translation curve at the origin.
struct Tangent {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;
};

/// 4x4 matrix acting on homogeneous row vectors (1, x, y, z) from the right.
using Matrix4 = std::array<std::array<double, 4>, 4>;

Matrix4 to_matrix(const Translation& t);
Translation from_matrix(const Matrix4& m);
Matrix4 multiply(const Matrix4& lhs, const Matrix4& rhs);
/// Row vector (1, p) times m, dehomogenised.
Point apply(const Point& p, const Matrix4& m);

Point translate(const Point& p, const Translation& t);

/// Group product t1 * t2, i.e. translate(p, compose(t1, t2)) ==
/// translate(translate(p, t2), t1).
Translation compose(const Translation& t1, const Translation& t2);
Translation inverse(const Translation& t);

/// The translation carrying the origin onto p.
inline Translation translation_to(const Point& p) { return {p.x, p.y, p.z}; }

/// Image of p under the inverse of translation_to(base); moves base to the origin.
Point relative_to(const Point& base, const Point& p);

/// Rotation through omega about the fibre through the origin.
Point rotate_about_origin(const Point& p, double omega);

/// (x, y, z) -> (x, y, z - xy/2). In this frame the distance from the origin
/// is the Euclidean norm and rotations about the z axis are linear.
Vec3 shear_to_canonical(const Point& p);
/// Inverse of shear_to_canonical.
Point canonical_to_point(const Vec3& v);

Point translation_curve(const Tangent& v, double t);
Tangent unit_tangent(double phi, double theta);
Point sphere_point(double r, double phi, double theta);

/// Curve parameters of the translation segment from the origin to p, by the
/// coordinate-pattern case analysis. Throws Error for p at the origin.
CurveParams curve_params_from_point(const Point& p);

double distance_from_origin(const Point& p);
double distance(const Point& p, const Point& q);

/// Squared distance; a polynomial in the coordinates of q, used by the solvers.
double distance_squared(const Point& p, const Point& q);
/// Gradient of distance_squared(p, q) with respect to q.
Vec3 distance_squared_gradient(const Point& p, const Point& q);

/// Translation balls have the Euclidean volume formula.
inline double ball_volume(double r) { return 4.0 / 3.0 * std::numbers::pi * r * r * r; }

/// Balls are convex in the model exactly for radius in [0, 2].
inline bool is_ball_convex(double r) { return r >= 0.0 && r <= 2.0; }

/// arccot with values in (0, pi); arccot(0) = pi/2.
double arccot(double x);

bool is_finite(const Point& p);

}  // namespace nilgeom
