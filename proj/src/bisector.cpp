#include "nilgeom/bisector.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace nilgeom {

BisectorCase classify_bisector(const Point& p2) {
  const bool a = p2.x != 0.0, b = p2.y != 0.0, c = p2.z != 0.0;
  if (!a && !b && !c) throw Error("bisector undefined");
  if (a && b) return c ? BisectorCase::abc : BisectorCase::ab;
  if (a) return c ? BisectorCase::ac : BisectorCase::a_only;
  if (b) return c ? BisectorCase::bc : BisectorCase::b_only;
  return BisectorCase::c_only;
}

const char* to_string(BisectorCase c) {
  switch (c) {
    case BisectorCase::abc: return "abc";
    case BisectorCase::ab: return "ab";
    case BisectorCase::ac: return "ac";
    case BisectorCase::bc: return "bc";
    case BisectorCase::a_only: return "a-only";
    case BisectorCase::b_only: return "b-only";
    case BisectorCase::c_only: return "c-only";
  }
  return "?";
}

double bisector_pole_function(const Point& p2, double x, double y) {
  const double a = p2.x, b = p2.y, c = p2.z;
  return -(c - 0.5 * a * b) + 0.5 * (x * b - y * a);
}

// With w = z - xy/2 the squared distances are x^2 + y^2 + w^2 from the origin
// and (x-a)^2 + (y-b)^2 + (w + L)^2 from (a, b, c); their difference is linear in w.
std::optional<double> bisector_z(const Point& p2, double x, double y) {
  if (p2 == kOrigin) throw Error("bisector undefined");
  const double a = p2.x, b = p2.y, c = p2.z;
  const double lin = bisector_pole_function(p2, x, y);
  const double scale = std::abs(c) + 0.5 * (std::abs(a * b) + std::abs(x * b) + std::abs(y * a));
  if (std::abs(lin) <= 4 * std::numeric_limits<double>::epsilon() * scale) return std::nullopt;
  const double w = (2 * a * x + 2 * b * y - a * a - b * b - lin * lin) / (2 * lin);
  return w + 0.5 * x * y;
}

std::optional<double> bisector_z_closed_form(const Point& p2, double x, double y) {
  const double a = p2.x, b = p2.y, c = p2.z;
  auto ratio = [](double num, double den) -> std::optional<double> {
    if (den == 0.0) return std::nullopt;
    return num / den;
  };
  switch (classify_bisector(p2)) {
    case BisectorCase::abc: {
      // Note a^3 - a b^2: the look-alike a^3 - a b does not satisfy the
      // equidistance condition.
      const double den = a * (b * (a + x) - a * y - 2 * c);
      if (den == 0.0) return std::nullopt;
      return 0.25 * ((8 * x * (a * a + b * b) - 4 * (a * a * a - a * b * b + 4 * b * c)) / den -
                     b * (a * (a + x) + 8) / a + y * (a + 2 * x) + 2 * c);
    }
    case BisectorCase::ab: {
      const double den = 4 * (a * (b - y) + b * x);
      const double q = b * b - 2 * b * y + y * y;
      return ratio(-(a * a * (q + 4) + 2 * a * x * (q - 4)) - b * (x * x + 4) * (b - 2 * y), den);
    }
    case BisectorCase::ac:
      return ratio(a * a * (y * y + 4) + 2 * a * (2 * c * y + x * (y * y - 4)) + 4 * c * (c + x * y),
                   4 * a * y + 8 * c);
    case BisectorCase::bc:
      return ratio(b * b * (x * x + 4) - 2 * b * (2 * c * x + (x * x + 4) * y) + 4 * c * (c + x * y),
                   8 * c - 4 * b * x);
    case BisectorCase::a_only:
      return ratio(a * (y * y + 4) + 2 * x * (y * y - 4), 4 * y);
    case BisectorCase::b_only:
      return ratio(-(x * x + 4) * (b - 2 * y), 4 * x);
    case BisectorCase::c_only:
      return 0.5 * (c + x * y);
  }
  return std::nullopt;
}

std::optional<double> bisector_general(const Point& p1, const Point& p2, double x, double y) {
  if (p1 == p2) throw Error("bisector undefined: coincident points");
  const Point q2 = relative_to(p1, p2);
  const double xs = x - p1.x, ys = y - p1.y;
  const auto zs = bisector_z(q2, xs, ys);
  if (!zs) return std::nullopt;
  return translate(Point{xs, ys, *zs}, translation_to(p1)).z;
}

double implicit_residual(const Point& p1, const Point& p2, const Point& p) {
  return distance(p1, p) - distance(p2, p);
}

Point equidistant_locus_yz(double b2, double b3, double c2, double c3, double x) {
  const double det = b2 * c3 - b3 * c2;
  if (det == 0.0) throw Error("degenerate vertex triple");
  const double x2 = x * x, q = x2 + 4;
  const double f = -2 * b3 * (-2 * c2 * x * (b2 * x + 2 * c3) + 4 * c3 * (b2 * x + c3) + c2 * c2 * q) +
                   b2 * (b2 * q * (2 * c3 - c2 * x) + x * (c2 * c2 * q - 4 * c2 * c3 * x + 4 * c3 * c3)) +
                   b3 * b3 * (8 * c3 - 4 * c2 * x);
  const double g = b2 * b2 * q * (c2 * q - 2 * c3 * x) -
                   b2 * (4 * c2 * x * q * (b3 - c3) + 4 * c3 * (c3 * q - 2 * b3 * x2) + c2 * c2 * q * q) +
                   2 * b3 * (2 * b3 * (c2 * q - 2 * c3 * x) + x * (c2 * c2 * q - 4 * c2 * c3 * x + 4 * c3 * c3));
  return {x, f / (16 * det), g / (-32 * det)};
}

// Derived from the two bisector equations by eliminating z and x in turn; the
// x numerator carries b3^2, and the z numerator is a separate polynomial
// rather than a rescaled copy of it.
Point equidistant_locus_xz(double b1, double b3, double c1, double c3, double y) {
  const double det = b1 * c3 - b3 * c1;
  if (det == 0.0) throw Error("degenerate vertex triple");
  const double y2 = y * y, y3 = y2 * y, y4 = y2 * y2, q = y2 + 4;
  const double f = -2 * b3 * (-2 * c1 * y * (b1 * y - 2 * c3) + 4 * c3 * (c3 - b1 * y) + c1 * c1 * q) +
                   b1 * (b1 * q * (c1 * y + 2 * c3) - y * (c1 * c1 * q + 4 * c1 * c3 * y + 4 * c3 * c3)) +
                   4 * b3 * b3 * (c1 * y + 2 * c3);
  const double g = b1 * b1 * (c1 * y4 - 16 * c1 + 2 * c3 * y3 + 8 * c3 * y) +
                   b1 * b3 * (4 * c1 * y3 - 16 * c1 * y + 8 * c3 * y2) +
                   b1 * (-c1 * c1 * y4 + 16 * c1 * c1 - 4 * c1 * c3 * y3 + 16 * c1 * c3 * y -
                         4 * c3 * c3 * y2 + 16 * c3 * c3) +
                   b3 * b3 * (4 * c1 * y2 - 16 * c1 + 8 * c3 * y) +
                   b3 * (-2 * c1 * c1 * y3 - 8 * c1 * c1 * y - 8 * c1 * c3 * y2 - 8 * c3 * c3 * y);
  return {f / (16 * det), y, g / (32 * det)};
}

double locus_residual(const Point& a1, const Point& a2, const Point& a3, const Point& p) {
  const double d1 = distance(a1, p), d2 = distance(a2, p), d3 = distance(a3, p);
  return std::max({std::abs(d1 - d2), std::abs(d1 - d3), std::abs(d2 - d3)});
}

namespace {

constexpr double kLocusTolerance = 1e-8;

struct LocusSystem {
  Point a1, a2, a3;
  SweepAxis axis;

  Point point(double t, double s, double z) const {
    return axis == SweepAxis::x ? Point{t, s, z} : Point{s, t, z};
  }
  std::array<double, 2> residual(const Point& p) const {
    const double d1 = distance_squared(a1, p);
    return {d1 - distance_squared(a2, p), d1 - distance_squared(a3, p)};
  }
  // Newton on (s, z) with t fixed.
  std::optional<Point> refine(double t, double s, double z) const {
    const int si = axis == SweepAxis::x ? 1 : 0;
    for (int it = 0; it < 60; ++it) {
      const Point p = point(t, s, z);
      const auto f = residual(p);
      if (locus_residual(a1, a2, a3, p) < 0.1 * kLocusTolerance) return p;
      const Vec3 g1 = distance_squared_gradient(a1, p);
      const Vec3 g2 = distance_squared_gradient(a2, p);
      const Vec3 g3 = distance_squared_gradient(a3, p);
      const double j00 = g1[si] - g2[si], j01 = g1[2] - g2[2];
      const double j10 = g1[si] - g3[si], j11 = g1[2] - g3[2];
      const double det = j00 * j11 - j01 * j10;
      if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
      double ds = (f[0] * j11 - f[1] * j01) / det;
      double dz = (j00 * f[1] - j10 * f[0]) / det;
      const double norm0 = std::hypot(f[0], f[1]);
      double step = 1.0;
      for (int h = 0; h < 30; ++h, step *= 0.5) {
        const auto fn = residual(point(t, s - step * ds, z - step * dz));
        if (std::hypot(fn[0], fn[1]) < norm0) break;
      }
      s -= step * ds;
      z -= step * dz;
      if (!std::isfinite(s) || !std::isfinite(z)) return std::nullopt;
    }
    const Point p = point(t, s, z);
    if (locus_residual(a1, a2, a3, p) < kLocusTolerance) return p;
    return std::nullopt;
  }
  // Eliminate z with the first (z-linear) equation and bracket sign changes of
  // the second along s.
  std::vector<Point> scan(double t, double s_lo, double s_hi, int steps) const {
    std::vector<Point> roots;
    auto z_of = [&](double s) -> std::optional<double> {
      const auto f0 = residual(point(t, s, 0.0))[0];
      const auto f1 = residual(point(t, s, 1.0))[0];
      if (f1 == f0) return std::nullopt;
      return -f0 / (f1 - f0);
    };
    auto g = [&](double s) -> std::optional<double> {
      const auto z = z_of(s);
      if (!z) return std::nullopt;
      return residual(point(t, s, *z))[1];
    };
    double prev_s = s_lo;
    auto prev_g = g(prev_s);
    for (int i = 1; i <= steps; ++i) {
      const double s = s_lo + (s_hi - s_lo) * i / steps;
      const auto gs = g(s);
      if (prev_g && gs && (*prev_g) * (*gs) <= 0.0) {
        double lo = prev_s, hi = s, glo = *prev_g;
        for (int k = 0; k < 80; ++k) {
          const double mid = 0.5 * (lo + hi);
          const auto gm = g(mid);
          if (!gm) break;
          if ((glo <= 0.0) == (*gm <= 0.0)) {
            lo = mid;
            glo = *gm;
          } else {
            hi = mid;
          }
        }
        const double sm = 0.5 * (lo + hi);
        if (const auto z = z_of(sm)) {
          if (auto p = refine(t, sm, *z)) roots.push_back(*p);
        }
      }
      prev_s = s;
      prev_g = gs;
    }
    return roots;
  }
};

double squared_gap(const Point& p, const Point& q) {
  return (p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y) + (p.z - q.z) * (p.z - q.z);
}

}  // namespace

std::vector<Point> equidistant_locus_general(const Point& a1, const Point& a2, const Point& a3,
                                             Interval range, std::size_t samples, SweepAxis axis) {
  if (a1 == a2 || a1 == a3 || a2 == a3) throw Error("degenerate vertex triple");
  std::vector<Point> out;
  if (samples == 0) return out;
  const LocusSystem sys{a1, a2, a3, axis};

  auto other = [&](const Point& p) { return axis == SweepAxis::x ? p.y : p.x; };
  const double lo = std::min({other(a1), other(a2), other(a3)});
  const double hi = std::max({other(a1), other(a2), other(a3)});
  const double extent = std::max({hi - lo, std::abs(a1.z - a2.z), std::abs(a1.z - a3.z), 1.0});
  const double s_lo = lo - 8 * extent, s_hi = hi + 8 * extent;

  std::optional<Point> prev;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t =
        samples == 1 ? range.lo : range.lo + (range.hi - range.lo) * double(i) / double(samples - 1);
    std::optional<Point> found;
    if (prev) found = sys.refine(t, other(*prev), prev->z);
    if (!found) {
      const auto roots = sys.scan(t, s_lo, s_hi, 800);
      if (!roots.empty()) {
        const Point ref = prev ? *prev : sys.point(t, 0.5 * (lo + hi), (a1.z + a2.z + a3.z) / 3);
        found = *std::min_element(roots.begin(), roots.end(), [&](const Point& p, const Point& q) {
          return squared_gap(p, ref) < squared_gap(q, ref);
        });
      }
    }
    if (found) {
      out.push_back(*found);
      prev = found;
    }
  }
  return out;
}

SurfaceMesh mesh_bisector(const Point& p1, const Point& p2, Interval x_range, Interval y_range,
                          std::size_t nx, std::size_t ny, const MeshOptions& options) {
  if (nx < 2 || ny < 2) throw Error("mesh grid needs at least 2x2 nodes");
  if (p1 == p2) throw Error("bisector undefined: coincident points");
  const Point q2 = relative_to(p1, p2);

  constexpr std::size_t kMissing = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(nx * ny, kMissing);
  std::vector<double> pole(nx * ny, 0.0);
  SurfaceMesh mesh;
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const double x = x_range.lo + (x_range.hi - x_range.lo) * double(i) / double(nx - 1);
      const double y = y_range.lo + (y_range.hi - y_range.lo) * double(j) / double(ny - 1);
      pole[j * nx + i] = bisector_pole_function(q2, x - p1.x, y - p1.y);
      const auto z = bisector_general(p1, p2, x, y);
      if (!z || !std::isfinite(*z) || std::abs(*z) > options.clamp) continue;
      index[j * nx + i] = mesh.vertices.size();
      mesh.vertices.push_back({x, y, *z});
    }
  for (std::size_t j = 0; j + 1 < ny; ++j)
    for (std::size_t i = 0; i + 1 < nx; ++i) {
      const std::array<std::size_t, 4> ids{j * nx + i, j * nx + i + 1, (j + 1) * nx + i + 1,
                                           (j + 1) * nx + i};
      bool ok = true;
      bool positive = false, negative = false;
      for (auto id : ids) {
        ok = ok && index[id] != kMissing;
        positive = positive || pole[id] > 0.0;
        negative = negative || pole[id] < 0.0;
      }
      if (!ok || (positive && negative)) {
        ++mesh.holes;
        continue;
      }
      mesh.faces.push_back({index[ids[0]], index[ids[1]], index[ids[2]]});
      mesh.faces.push_back({index[ids[0]], index[ids[2]], index[ids[3]]});
    }
  return mesh;
}

void write_obj(std::ostream& out, const SurfaceMesh& mesh) {
  char buf[128];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "v %.9g %.9g %.9g\n", v[0], v[1], v[2]);
    out << buf;
  }
  for (const auto& f : mesh.faces) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

}  // namespace nilgeom
