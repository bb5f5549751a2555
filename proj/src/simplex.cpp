#include "nilgeom/simplex.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace nilgeom {

namespace {

using Mat3 = std::array<Vec3, 3>;

// Generic rotation angle for the algebraic circumcentre search.
constexpr double kEliminationAngle = 0.4142135623730950;

double det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Cramer's rule; empty when the matrix is numerically singular.
std::optional<Vec3> solve3(const Mat3& m, const Vec3& rhs) {
  const double d = det3(m);
  double scale = 0.0;
  for (const auto& row : m)
    for (double e : row) scale = std::max(scale, std::abs(e));
  if (!std::isfinite(d) || std::abs(d) <= 1e-14 * scale * scale * scale) return std::nullopt;
  Vec3 out{};
  for (int c = 0; c < 3; ++c) {
    Mat3 mc = m;
    for (int r = 0; r < 3; ++r) mc[r][c] = rhs[r];
    out[c] = det3(mc) / d;
  }
  return out;
}

Vec3 unit_direction(const Point& from, const Point& to) {
  const Vec3 v = shear_to_canonical(relative_to(from, to));
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (n == 0.0) throw Error("zero-length side");
  return {v[0] / n, v[1] / n, v[2] / n};
}

double angle_between(const Vec3& u, const Vec3& v) {
  const double dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
  return std::acos(std::clamp(dot, -1.0, 1.0));
}

struct NewtonOutcome {
  Point center;
  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

double max_spread(const Tetrahedron& tet, const Point& c) {
  const double r = distance(tet.v[0], c);
  double worst = 0.0;
  for (int i = 1; i < 4; ++i) worst = std::max(worst, std::abs(distance(tet.v[i], c) - r));
  return worst;
}

// Damped Newton on d^2(A1, C) - d^2(Ai, C) = 0, i = 2..4.
NewtonOutcome newton_circumcenter(const Tetrahedron& tet, Point c, int max_iterations) {
  auto system = [&](const Point& p) {
    const double d1 = distance_squared(tet.v[0], p);
    return Vec3{d1 - distance_squared(tet.v[1], p), d1 - distance_squared(tet.v[2], p),
                d1 - distance_squared(tet.v[3], p)};
  };
  auto norm = [](const Vec3& f) { return std::sqrt(f[0] * f[0] + f[1] * f[1] + f[2] * f[2]); };

  NewtonOutcome out;
  Vec3 f = system(c);
  int it = 0;
  for (; it < max_iterations; ++it) {
    const Vec3 g1 = distance_squared_gradient(tet.v[0], c);
    Mat3 jac{};
    for (int i = 0; i < 3; ++i) {
      const Vec3 gi = distance_squared_gradient(tet.v[i + 1], c);
      for (int k = 0; k < 3; ++k) jac[i][k] = g1[k] - gi[k];
    }
    const auto step = solve3(jac, f);
    if (!step) break;
    const double f0 = norm(f);
    double lambda = 1.0;
    Point trial{};
    Vec3 ft{};
    for (int h = 0; h < 40; ++h, lambda *= 0.5) {
      trial = {c.x - lambda * (*step)[0], c.y - lambda * (*step)[1], c.z - lambda * (*step)[2]};
      ft = system(trial);
      if (norm(ft) < f0) break;
    }
    if (!(norm(ft) < f0)) break;  // no further progress
    c = trial;
    f = ft;
    if (!is_finite(c)) break;
    if (norm(f) <= 1e-15 * (1.0 + distance_squared(tet.v[0], c))) {
      ++it;
      break;
    }
  }
  out.center = c;
  out.iterations = it;
  if (is_finite(c)) out.residual = max_spread(tet, c);
  return out;
}

// Coefficients, lowest degree first, of polynomials in y.
using Cubic = std::array<double, 4>;

double det6(std::array<std::array<double, 6>, 6> m) {
  double det = 1.0;
  for (int c = 0; c < 6; ++c) {
    int piv = c;
    for (int r = c + 1; r < 6; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (m[piv][c] == 0.0) return 0.0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < 6; ++r) {
      const double f = m[r][c] / m[c][c];
      for (int k = c; k < 6; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

// Real roots of c0 + c1 y + c2 y^2 + c3 y^3, polished by Newton.
std::vector<double> real_roots(const Cubic& c) {
  const double scale = std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2]), std::abs(c[3])});
  std::vector<double> out;
  if (scale == 0.0) return out;
  auto eval = [&](double y) { return ((c[3] * y + c[2]) * y + c[1]) * y + c[0]; };
  auto deriv = [&](double y) { return (3 * c[3] * y + 2 * c[2]) * y + c[1]; };
  // A tiny leading coefficient still matters: it carries one far root.
  if (c[3] != 0.0) {
    const double a = c[2] / c[3], b = c[1] / c[3], d = c[0] / c[3];
    const double q = (a * a - 3 * b) / 9, r = (2 * a * a * a - 9 * a * b + 27 * d) / 54;
    if (r * r < q * q * q) {
      const double t = std::acos(std::clamp(r / std::sqrt(q * q * q), -1.0, 1.0));
      const double m = -2 * std::sqrt(q);
      for (int k = 0; k < 3; ++k) out.push_back(m * std::cos((t + 2 * std::numbers::pi * k) / 3) - a / 3);
    } else {
      const double big = -std::copysign(std::cbrt(std::abs(r) + std::sqrt(r * r - q * q * q)), r);
      out.push_back(big + (big == 0.0 ? 0.0 : q / big) - a / 3);
    }
  } else if (std::abs(c[2]) > 1e-12 * scale) {
    const double disc = c[1] * c[1] - 4 * c[2] * c[0];
    if (disc >= 0) {
      const double s = -0.5 * (c[1] + std::copysign(std::sqrt(disc), c[1]));
      if (s != 0.0) out.push_back(c[0] / s);
      out.push_back(s / c[2]);
    }
  } else if (c[1] != 0.0) {
    out.push_back(-c[0] / c[1]);
  }
  for (double& y : out)
    for (int it = 0; it < 4; ++it) {
      const double d = deriv(y);
      if (d == 0.0) break;
      y -= eval(y) / d;
    }
  return out;
}

// Every equidistant point of the four vertices, up to the resolution of a
// sign-change scan.
//
// With A1 moved to the origin and w = z - xy/2, the equation
// d^2(A1, C) = d^2(Ai, C) reads Q_i(x, y) = 2 L_i(x, y) w, where L_i is affine
// and Q_i quadratic in (x, y). Eliminating w leaves two cubic curves
// Q_2 L_1 = Q_1 L_2 and Q_3 L_1 = Q_1 L_3. Their resultant in y is scanned for
// sign changes along x on a sinh-spaced grid reaching far from the vertices;
// each root gives candidates that are polished by the caller. A rotation about
// the fibre keeps the elimination away from special directions.
std::optional<std::vector<Point>> algebraic_circumcenter_candidates(const Tetrahedron& tet, double omega) {
  struct Vertex {
    double a, b, c;
  };
  std::array<Vertex, 3> v{};
  double extent = 0.5;
  for (int i = 0; i < 3; ++i) {
    const Point r = rotate_about_origin(relative_to(tet.v[0], tet.v[i + 1]), omega);
    v[i] = {r.x, r.y, r.z};
    extent = std::max({extent, std::abs(r.x), std::abs(r.y)});
  }
  // L_i = p + q y and Q_i = m0 + m1 y + m2 y^2 at fixed x.
  struct Row {
    double p, q, m0, m1, m2;
  };
  auto rows = [&](double x) {
    std::array<Row, 3> out{};
    for (int i = 0; i < 3; ++i) {
      const auto [a, b, c] = v[i];
      const double p = -(c - 0.5 * a * b) + 0.5 * b * x, q = -0.5 * a;
      out[i] = {p, q, 2 * a * x - a * a - b * b - p * p, 2 * b - 2 * p * q, -q * q};
    }
    return out;
  };
  auto curve = [](const Row& k, const Row& one) {
    // Q_k L_1 - Q_1 L_k
    return Cubic{k.m0 * one.p - one.m0 * k.p, k.m0 * one.q + k.m1 * one.p - one.m0 * k.q - one.m1 * k.p,
                 k.m1 * one.q + k.m2 * one.p - one.m1 * k.q - one.m2 * k.p, k.m2 * one.q - one.m2 * k.q};
  };
  auto resultant = [&](double x) {
    const auto r = rows(x);
    const Cubic f = curve(r[1], r[0]), g = curve(r[2], r[0]);
    std::array<std::array<double, 6>, 6> m{};
    for (int s = 0; s < 3; ++s)
      for (int k = 0; k < 4; ++k) {
        m[s][s + k] = f[3 - k];
        m[s + 3][s + k] = g[3 - k];
      }
    return det6(m);
  };

  std::vector<double> xs;
  const double t_max = std::asinh(1e7 / extent);
  constexpr double kStep = 0.01;
  double prev_x = -extent * std::sinh(t_max);
  double prev_r = resultant(prev_x);
  for (double t = -t_max + kStep; t <= t_max; t += kStep) {
    const double x = extent * std::sinh(t);
    const double r = resultant(x);
    if (r == 0.0) {
      xs.push_back(x);
    } else if (prev_r != 0.0 && (r < 0) != (prev_r < 0)) {
      double lo = prev_x, hi = x, rlo = prev_r;
      for (int k = 0; k < 100 && hi - lo > 1e-15 * (1 + std::abs(lo)); ++k) {
        const double mid = 0.5 * (lo + hi);
        const double rm = resultant(mid);
        if ((rm < 0) == (rlo < 0)) {
          lo = mid;
          rlo = rm;
        } else {
          hi = mid;
        }
      }
      xs.push_back(0.5 * (lo + hi));
    }
    prev_x = x;
    prev_r = r;
  }

  std::vector<Point> out;
  // The resultant has degree at most 9 in x; more sign changes mean it vanishes
  // identically (the two curves share a component) and only noise was seen.
  if (xs.size() > 9) return std::nullopt;
  for (double x : xs) {
    const auto r = rows(x);
    std::vector<double> ys = real_roots(curve(r[1], r[0]));
    const auto more = real_roots(curve(r[2], r[0]));
    ys.insert(ys.end(), more.begin(), more.end());
    for (double y : ys) {
      int best = 0;
      double best_l = 0.0;
      for (int i = 0; i < 3; ++i) {
        const double l = std::abs(r[i].p + r[i].q * y);
        if (l > best_l) {
          best_l = l;
          best = i;
        }
      }
      if (best_l == 0.0) continue;
      const Row& k = r[best];
      const double w = (k.m0 + k.m1 * y + k.m2 * y * y) / (2 * (k.p + k.q * y));
      const Point local = rotate_about_origin({x, y, w + 0.5 * x * y}, -omega);
      const Point c = translate(local, translation_to(tet.v[0]));
      if (is_finite(c)) out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::array<double, 3> side_lengths(const Triangle& tri) {
  return {distance(tri.a2, tri.a3), distance(tri.a1, tri.a3), distance(tri.a1, tri.a2)};
}

bool triangle_inequality_holds(const Triangle& tri) {
  const auto s = side_lengths(tri);
  return s[0] <= s[1] + s[2] && s[1] <= s[0] + s[2] && s[2] <= s[0] + s[1];
}

std::array<double, 3> interior_angles(const Triangle& tri) {
  const Point& a = tri.a1;
  const Point& b = tri.a2;
  const Point& c = tri.a3;
  return {angle_between(unit_direction(a, b), unit_direction(a, c)),
          angle_between(unit_direction(b, a), unit_direction(b, c)),
          angle_between(unit_direction(c, a), unit_direction(c, b))};
}

std::vector<Point> equilateral_completions(const Point& a2, double x3, double side) {
  if (!(side > 0.0)) throw Error("side length must be positive");
  auto residual = [&](double y, double z) {
    const Point p{x3, y, z};
    return std::array<double, 2>{distance_squared(kOrigin, p) - side * side,
                                 distance_squared(a2, p) - side * side};
  };

  std::vector<Point> found;
  const std::array<double, 4> offsets{-side, -side / 2, side / 2, side};
  for (double y0 : offsets)
    for (double z0 : offsets) {
      double y = y0, z = z0;
      for (int it = 0; it < 100; ++it) {
        const auto f = residual(y, z);
        const Point p{x3, y, z};
        const Vec3 g1 = distance_squared_gradient(kOrigin, p);
        const Vec3 g2 = distance_squared_gradient(a2, p);
        const double det = g1[1] * g2[2] - g1[2] * g2[1];
        if (det == 0.0 || !std::isfinite(det)) break;
        const double dy = (f[0] * g2[2] - f[1] * g1[2]) / det;
        const double dz = (g1[1] * f[1] - g2[1] * f[0]) / det;
        const double f0 = std::hypot(f[0], f[1]);
        double lambda = 1.0;
        for (int h = 0; h < 30; ++h, lambda *= 0.5) {
          const auto ft = residual(y - lambda * dy, z - lambda * dz);
          if (std::hypot(ft[0], ft[1]) < f0) break;
        }
        y -= lambda * dy;
        z -= lambda * dz;
        if (std::abs(lambda * dy) + std::abs(lambda * dz) < 1e-15 * (1 + std::abs(y) + std::abs(z))) break;
      }
      const Point p{x3, y, z};
      if (!is_finite(p)) continue;
      if (std::abs(distance(kOrigin, p) - side) > 1e-10 || std::abs(distance(a2, p) - side) > 1e-10) continue;
      const bool duplicate = std::any_of(found.begin(), found.end(), [&](const Point& q) {
        return std::abs(q.y - p.y) < 1e-7 && std::abs(q.z - p.z) < 1e-7;
      });
      if (!duplicate) found.push_back(p);
    }
  std::sort(found.begin(), found.end(),
            [](const Point& p, const Point& q) { return p.y != q.y ? p.y < q.y : p.z < q.z; });
  return found;
}

Point solve_equilateral_third_vertex(const Point& a2, double x3, double side) {
  const auto all = equilateral_completions(a2, x3, side);
  if (all.empty()) throw Error("no equilateral completion found");
  return all.front();
}

std::optional<Vec3> euclidean_circumcenter(const std::array<Vec3, 4>& v) {
  // 2 (v_i - v_0) . c = |v_i|^2 - |v_0|^2
  Mat3 m{};
  Vec3 rhs{};
  auto sq = [](const Vec3& p) { return p[0] * p[0] + p[1] * p[1] + p[2] * p[2]; };
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) m[i][k] = 2 * (v[i + 1][k] - v[0][k]);
    rhs[i] = sq(v[i + 1]) - sq(v[0]);
  }
  return solve3(m, rhs);
}

double euclidean_signed_volume(const Tetrahedron& tet) {
  Mat3 m{};
  for (int i = 0; i < 3; ++i) {
    m[i] = {tet.v[i + 1].x - tet.v[0].x, tet.v[i + 1].y - tet.v[0].y, tet.v[i + 1].z - tet.v[0].z};
  }
  return det3(m) / 6.0;
}

namespace {

std::vector<CircumsphereResult> solve_circumsphere_roots(const Tetrahedron& tet,
                                                         const CircumsphereOptions& options) {
  // Work relative to A1 in the sheared frame, where distances from A1 are Euclidean.
  std::array<Vec3, 4> rel{};
  for (int i = 0; i < 4; ++i) rel[i] = shear_to_canonical(relative_to(tet.v[0], tet.v[i]));
  const auto seed = euclidean_circumcenter(rel);
  if (!seed) throw Error("degenerate tetrahedron");

  const Translation back = translation_to(tet.v[0]);
  auto to_model = [&](const Vec3& v) { return translate(canonical_to_point(v), back); };

  std::vector<Vec3> starts{*seed};
  for (int s = 0; s < 8; ++s)
    starts.push_back({(*seed)[0] + ((s & 1) ? 0.5 : -0.5), (*seed)[1] + ((s & 2) ? 0.5 : -0.5),
                      (*seed)[2] + ((s & 4) ? 0.5 : -0.5)});
  std::vector<CircumsphereResult> roots;
  double best_failed = std::numeric_limits<double>::infinity();
  auto polish = [&](const Point& start) {
    const auto out = newton_circumcenter(tet, start, options.max_iterations);
    // Absolute for spheres up to unit radius, relative beyond: a centre
    // thousands of units away cannot be located to 1e-9 in double precision.
    const double spread_limit = options.tolerance * std::max(1.0, distance(tet.v[0], out.center));
    if (!(out.residual <= spread_limit)) {
      best_failed = std::min(best_failed, out.residual);
      return;
    }
    const double r = distance(tet.v[0], out.center);
    const bool duplicate = std::any_of(roots.begin(), roots.end(), [&](const CircumsphereResult& q) {
      return std::abs(q.center.x - out.center.x) + std::abs(q.center.y - out.center.y) +
                 std::abs(q.center.z - out.center.z) <
             1e-7 * (1.0 + r);
    });
    if (!duplicate) roots.push_back({out.center, r, out.residual, out.iterations, 0});
  };
  for (const auto& s : starts) polish(to_model(s));
  if (options.global_search) {
    // Eliminate from each vertex in turn until the elimination is regular.
    for (int base = 0; base < 4; ++base) {
      const Tetrahedron t{{tet.v[base], tet.v[(base + 1) % 4], tet.v[(base + 2) % 4], tet.v[(base + 3) % 4]}};
      if (const auto cands = algebraic_circumcenter_candidates(t, kEliminationAngle)) {
        for (const auto& c : *cands) polish(c);
        break;
      }
    }
  }
  if (roots.empty()) {
    char msg[160];
    std::snprintf(msg, sizeof msg, "no circumscribed sphere found (best vertex-distance spread %.3g)", best_failed);
    throw Error(msg);
  }
  std::sort(roots.begin(), roots.end(), [](const CircumsphereResult& p, const CircumsphereResult& q) {
    if (p.radius != q.radius) return p.radius < q.radius;
    if (p.center.x != q.center.x) return p.center.x < q.center.x;
    if (p.center.y != q.center.y) return p.center.y < q.center.y;
    return p.center.z < q.center.z;
  });
  for (auto& r : roots) r.roots = static_cast<int>(roots.size());
  return roots;
}

}  // namespace

std::vector<CircumsphereResult> circumsphere_roots(const Tetrahedron& tet,
                                                   const CircumsphereOptions& options) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (tet.v[i] == tet.v[j]) throw Error("degenerate tetrahedron: repeated vertex");

  // Solve with A1 at the origin so that translated tetrahedra give the same
  // arithmetic, then carry the centres back.
  Tetrahedron local;
  for (int i = 0; i < 4; ++i) local.v[i] = relative_to(tet.v[0], tet.v[i]);
  auto roots = solve_circumsphere_roots(local, options);
  const Translation back = translation_to(tet.v[0]);
  for (auto& r : roots) r.center = translate(r.center, back);
  return roots;
}

CircumsphereResult circumsphere(const Tetrahedron& tet, const CircumsphereOptions& options) {
  return circumsphere_roots(tet, options).front();
}

}  // namespace nilgeom
