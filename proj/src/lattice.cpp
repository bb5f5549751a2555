#include "nilgeom/lattice.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace nilgeom {

void validate(const Lattice& lat) {
  for (double v : {lat.t11, lat.t13, lat.t21, lat.t22, lat.t23})
    if (!std::isfinite(v)) throw Error("lattice parameters must be finite");
  if (lat.k < 1) throw Error("lattice exponent k must be a positive integer");
  if (lat.t11 * lat.t22 == 0.0) throw Error("degenerate lattice: t11*t22 == 0");
}

Translation fiber_translation(const Lattice& lat) { return {0.0, 0.0, lat.t11 * lat.t22 / lat.k}; }

Matrix4 commutator_matrix(const Lattice& lat) {
  const Matrix4 m1 = to_matrix(lat.tau1());
  const Matrix4 m2 = to_matrix(lat.tau2());
  const Matrix4 m1i = to_matrix(inverse(lat.tau1()));
  const Matrix4 m2i = to_matrix(inverse(lat.tau2()));
  return multiply(multiply(multiply(m2i, m1i), m2), m1);
}

Parallelepiped parallelepiped_vertices(const Lattice& lat) {
  validate(lat);
  const double f = lat.t11 * lat.t22 / lat.k;
  const double s1 = lat.t11 + lat.t21;
  Parallelepiped p;
  p.o = kOrigin;
  p.t1 = {lat.t11, 0.0, lat.t13};
  p.t2 = {lat.t21, lat.t22, lat.t23};
  p.t3 = {0.0, 0.0, f};
  p.t13 = {lat.t11, 0.0, f + lat.t13};
  p.t12 = {s1, lat.t22, lat.t23 + lat.t13};
  p.t21 = {s1, lat.t22, lat.t11 * lat.t22 + lat.t13 + lat.t23};
  p.t23 = {lat.t21, lat.t22, lat.t23 + f};
  p.t213 = {s1, lat.t22, (lat.k + 1) * f + lat.t13 + lat.t23};
  return p;
}

double parallelepiped_volume(const Lattice& lat) {
  validate(lat);
  const double s = lat.t11 * lat.t22;
  return s * s / lat.k;
}

double euclidean_parallelepiped_volume(const Lattice& lat) {
  const auto p = parallelepiped_vertices(lat);
  return 6.0 * euclidean_signed_volume({{p.o, p.t1, p.t2, p.t3}});
}

// With k = 1, T21 = T1 + T2 + T3 in model coordinates, so O..T21 are the eight
// corners of a Euclidean parallelepiped; the cut below runs along its
// diagonal T1-T23 apart from the corner at O.
std::array<Tetrahedron, 6> decompose_tetrahedra(const Lattice& lat) {
  if (lat.k != 1) throw Error("decomposition defined for k=1");
  const auto p = parallelepiped_vertices(lat);
  return {{{{p.o, p.t1, p.t2, p.t3}},
           {{p.t3, p.t1, p.t23, p.t13}},
           {{p.t3, p.t1, p.t23, p.t2}},
           {{p.t12, p.t1, p.t23, p.t2}},
           {{p.t21, p.t1, p.t23, p.t13}},
           {{p.t12, p.t21, p.t23, p.t1}}}};
}

CoveringReport covering_radius(const Lattice& lat, const CircumsphereOptions& options) {
  const auto tets = decompose_tetrahedra(lat);
  CoveringReport report;
  report.lattice = lat;
  for (std::size_t i = 0; i < tets.size(); ++i) {
    const auto cs = circumsphere(tets[i], options);
    report.tetra_radii[i] = cs.radius;
    report.tetra_centers[i] = cs.center;
  }
  report.covering_radius = *std::max_element(report.tetra_radii.begin(), report.tetra_radii.end());
  report.convex = is_ball_convex(report.covering_radius);
  report.ball_volume = ball_volume(report.covering_radius);
  report.cell_volume = parallelepiped_volume(lat);
  report.density = report.ball_volume / report.cell_volume;
  return report;
}

std::vector<Point> lattice_orbit(const Lattice& lat, int window) {
  validate(lat);
  if (window < 1) throw Error("orbit window must be at least 1");
  auto power = [](const Translation& t, int n) {
    const Matrix4 base = to_matrix(n >= 0 ? t : inverse(t));
    Matrix4 out = to_matrix(kIdentity);
    for (int i = 0; i < std::abs(n); ++i) out = multiply(out, base);
    return out;
  };
  std::vector<Point> pts;
  for (int l = -window; l <= window; ++l) {
    const Matrix4 m3 = power(fiber_translation(lat), l);
    for (int j = -window; j <= window; ++j) {
      const Matrix4 m32 = multiply(m3, power(lat.tau2(), j));
      for (int i = -window; i <= window; ++i)
        pts.push_back(nilgeom::apply(kOrigin, multiply(m32, power(lat.tau1(), i))));
    }
  }
  auto less = [](const Point& p, const Point& q) {
    if (p.x != q.x) return p.x < q.x;
    if (p.y != q.y) return p.y < q.y;
    return p.z < q.z;
  };
  std::sort(pts.begin(), pts.end(), less);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point& p, const Point& q) {
                          return std::abs(p.x - q.x) + std::abs(p.y - q.y) + std::abs(p.z - q.z) < 1e-12;
                        }),
            pts.end());
  return pts;
}

namespace {

double radical_inverse(std::uint64_t i, std::uint64_t base) {
  double inv = 1.0 / double(base), f = inv, out = 0.0;
  while (i > 0) {
    out += f * double(i % base);
    i /= base;
    f *= inv;
  }
  return out;
}

}  // namespace

VerificationRecord verify_covering(const Lattice& lat, double radius, std::size_t n, int window,
                                   std::uint64_t seed) {
  if (lat.k != 1) throw Error("covering verification defined for k=1");
  if (n == 0) throw Error("verification needs at least one sample");
  const auto orbit = lattice_orbit(lat, window);
  const auto p = parallelepiped_vertices(lat);

  // Halton points under a seeded Cranley-Patterson rotation.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::array<double, 3> shift{unit(rng), unit(rng), unit(rng)};

  VerificationRecord rec;
  rec.samples = n;
  rec.neighbor_window = window;
  for (std::size_t s = 0; s < n; ++s) {
    std::array<double, 3> u{radical_inverse(s + 1, 2), radical_inverse(s + 1, 3), radical_inverse(s + 1, 5)};
    for (int k = 0; k < 3; ++k) u[k] = std::fmod(u[k] + shift[k], 1.0);
    const Point q{u[0] * p.t1.x + u[1] * p.t2.x + u[2] * p.t3.x, u[0] * p.t1.y + u[1] * p.t2.y + u[2] * p.t3.y,
                  u[0] * p.t1.z + u[1] * p.t2.z + u[2] * p.t3.z};
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& o : orbit) nearest = std::min(nearest, distance_squared(o, q));
    rec.max_min_distance = std::max(rec.max_min_distance, std::sqrt(nearest));
  }
  rec.pass = rec.max_min_distance <= radius + 1e-6;
  return rec;
}

}  // namespace nilgeom
