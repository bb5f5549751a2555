#pragma once

#include <array>
#include <optional>
#include <vector>

#include "nilgeom/core.hpp"

namespace nilgeom {

struct Triangle {
  Point a1, a2, a3;
};

struct Tetrahedron {
  std::array<Point, 4> v;
};

/// Side lengths (a1, a2, a3); a_k is the side opposite vertex A_k.
std::array<double, 3> side_lengths(const Triangle& tri);

bool triangle_inequality_holds(const Triangle& tri);

/// Interior angles (w1, w2, w3) at A1, A2, A3.
///
/// At each vertex the triangle is moved so the vertex sits at the origin; the
/// translation curves to the other two vertices then start with unit tangents
/// proportional to the canonical-frame images of those vertices, and the angle
/// is the arccos of their dot product. Throws Error on a zero-length side.
std::array<double, 3> interior_angles(const Triangle& tri);

/// All distinct points (x3, y, z) with d(O, A3) = d(a2, A3) = side, found by
/// multi-start Newton; sorted by (y, z).
std::vector<Point> equilateral_completions(const Point& a2, double x3, double side);

/// First entry of equilateral_completions. Throws Error when there is none.
Point solve_equilateral_third_vertex(const Point& a2, double x3, double side);

struct CircumsphereResult {
  Point center;
  double radius = 0.0;
  double residual = 0.0;  // max_i |d(A_i, center) - radius|
  int iterations = 0;     // Newton steps for the selected root
  int roots = 0;          // distinct equidistant points found
};

struct CircumsphereOptions {
  /// Also polish candidates from an algebraic elimination of the system so
  /// that far equidistant points, and hence the smallest sphere, are found.
  bool global_search = true;
  int max_iterations = 100;
  /// Largest accepted spread of the four vertex distances, times max(1, radius).
  double tolerance = 1e-9;
};

/// Translation sphere through the four vertices.
///
/// The equidistance system can have several real solutions; the one of least
/// radius is returned. Some non-degenerate tetrahedra have no equidistant point
/// at all. Throws Error for degenerate input or when no solution is found.
CircumsphereResult circumsphere(const Tetrahedron& tet, const CircumsphereOptions& options = {});

/// All equidistant points found by the multi-start search, sorted by radius.
std::vector<CircumsphereResult> circumsphere_roots(const Tetrahedron& tet,
                                                   const CircumsphereOptions& options = {});

/// Euclidean circumcentre of four points; empty when they are coplanar.
std::optional<Vec3> euclidean_circumcenter(const std::array<Vec3, 4>& v);

/// Signed Euclidean volume of the tetrahedron in model coordinates.
double euclidean_signed_volume(const Tetrahedron& tet);

}  // namespace nilgeom
