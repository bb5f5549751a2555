#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "nilgeom/core.hpp"

namespace nilgeom {

/// Zero pattern of the far endpoint (a, b, c) of a bisector with the origin.
enum class BisectorCase { abc, ab, ac, bc, a_only, b_only, c_only };

/// Exact-zero classification. Throws Error for the origin.
BisectorCase classify_bisector(const Point& p2);
const char* to_string(BisectorCase c);

/// z of the point above (x, y) equidistant from the origin and p2.
///
/// Equating squared distances cancels the quadratic term in z, leaving a
/// linear equation; empty when its coefficient vanishes. Throws Error
/// ("bisector undefined") when p2 is the origin.
std::optional<double> bisector_z(const Point& p2, double x, double y);

/// The coefficient of z in the linear bisector equation at (x, y). The
/// surface has a pole wherever it changes sign.
double bisector_pole_function(const Point& p2, double x, double y);

/// Explicit rational form of the bisector for each zero pattern of p2.
/// Empty where the form's denominator vanishes.
std::optional<double> bisector_z_closed_form(const Point& p2, double x, double y);

/// Bisector of two arbitrary points, as z over (x, y). Throws Error when p1 == p2.
std::optional<double> bisector_general(const Point& p1, const Point& p2, double x, double y);

/// distance(p1, p) - distance(p2, p).
double implicit_residual(const Point& p1, const Point& p2, const Point& p);

/// Point of the equidistant locus of (0,0,0), (0,b2,b3), (0,c2,c3) over x.
Point equidistant_locus_yz(double b2, double b3, double c2, double c3, double x);

/// Point of the equidistant locus of (0,0,0), (b1,0,b3), (c1,0,c3) over y.
Point equidistant_locus_xz(double b1, double b3, double c1, double c3, double y);

enum class SweepAxis { x, y };

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Trace the locus of points equidistant from three vertices.
///
/// The sweep coordinate runs over `range` in `samples` steps; at each step the
/// other two coordinates are found by Newton iteration seeded from the
/// previous point, falling back to a bracketing scan. Steps with no root are
/// dropped, so the result may be empty.
std::vector<Point> equidistant_locus_general(const Point& a1, const Point& a2, const Point& a3,
                                             Interval range, std::size_t samples,
                                             SweepAxis axis = SweepAxis::x);

/// Largest pairwise |d(A_i, P) - d(A_j, P)| over the three vertices.
double locus_residual(const Point& a1, const Point& a2, const Point& a3, const Point& p);

struct SurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::size_t, 3>> faces;  // 0-based
  std::size_t holes = 0;                          // skipped grid cells
};

struct MeshOptions {
  double clamp = 1e3;
};

/// Triangulated samples of the bisector of p1 and p2 over a regular grid.
/// Cells with a missing corner, a corner beyond the clamp, or a pole crossing
/// are skipped and counted as holes.
SurfaceMesh mesh_bisector(const Point& p1, const Point& p2, Interval x_range, Interval y_range,
                          std::size_t nx, std::size_t ny, const MeshOptions& options = {});

/// Wavefront OBJ: "v x y z" lines then "f i j k" lines, 1-based, 9 significant digits.
void write_obj(std::ostream& out, const SurfaceMesh& mesh);

}  // namespace nilgeom
