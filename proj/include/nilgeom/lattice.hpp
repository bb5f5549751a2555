#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "nilgeom/core.hpp"
#include "nilgeom/simplex.hpp"

namespace nilgeom {

/// Point lattice generated by tau1 = (t11, 0, t13) and tau2 = (t21, t22, t23),
/// with the fibre translation tau3 defined by tau3^k = [tau1, tau2].
struct Lattice {
  double t11 = 1.0;
  double t13 = 0.0;
  double t21 = 0.0;
  double t22 = 1.0;
  double t23 = 0.0;
  int k = 1;

  Translation tau1() const { return {t11, 0.0, t13}; }
  Translation tau2() const { return {t21, t22, t23}; }
};

/// Throws Error when k < 1, t11*t22 == 0 or a parameter is not finite.
void validate(const Lattice& lat);

Translation fiber_translation(const Lattice& lat);

/// tau2^-1 tau1^-1 tau2 tau1 as a product of homogeneous matrices.
Matrix4 commutator_matrix(const Lattice& lat);

/// Vertices of the fundamental parallelepiped of the lattice.
struct Parallelepiped {
  Point o, t1, t2, t3, t12, t21, t23, t213, t13;
};

Parallelepiped parallelepiped_vertices(const Lattice& lat);

/// (t11 t22)^2 / k.
double parallelepiped_volume(const Lattice& lat);

/// Euclidean volume of the parallelepiped spanned by T1, T2, T3 from the origin.
double euclidean_parallelepiped_volume(const Lattice& lat);

/// The six tetrahedra filling the parallelepiped, all sharing the edge T1-T23
/// except the corner tetrahedron at the origin. Throws Error unless k == 1.
std::array<Tetrahedron, 6> decompose_tetrahedra(const Lattice& lat);

struct VerificationRecord {
  std::size_t samples = 0;
  double max_min_distance = 0.0;
  int neighbor_window = 0;
  bool pass = false;
};

struct CoveringReport {
  Lattice lattice;
  std::array<double, 6> tetra_radii{};
  std::array<Point, 6> tetra_centers{};
  double covering_radius = 0.0;
  double ball_volume = 0.0;
  double cell_volume = 0.0;
  double density = 0.0;
  bool convex = false;
  std::optional<VerificationRecord> verification;
};

/// Covering radius as the largest circumradius of the six tetrahedra, with the
/// resulting ball volume and density. Circumsphere failures propagate.
CoveringReport covering_radius(const Lattice& lat, const CircumsphereOptions& options = {});

/// Orbit of the origin under tau3^l tau2^j tau1^i for |i|, |j|, |l| <= window.
std::vector<Point> lattice_orbit(const Lattice& lat, int window);

/// Sample the parallelepiped with a scrambled low-discrepancy sequence and
/// record the largest distance from a sample to its nearest orbit point.
VerificationRecord verify_covering(const Lattice& lat, double radius, std::size_t n, int window,
                                   std::uint64_t seed = 0);

}  // namespace nilgeom
