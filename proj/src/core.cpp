#include "nilgeom/core.hpp"

#include <limits>

namespace nilgeom {

namespace {

constexpr double kPi = std::numbers::pi;

// Shift an angle by whole turns of pi until its cosine has the requested sign.
double with_nonnegative_cos(double theta) {
  if (theta > kPi / 2) return theta - kPi;
  if (theta < -kPi / 2) return theta + kPi;
  return theta;
}

}  // namespace

Matrix4 to_matrix(const Translation& t) {
  return {{{1.0, t.a, t.b, t.c},
           {0.0, 1.0, 0.0, 0.0},
           {0.0, 0.0, 1.0, t.a},
           {0.0, 0.0, 0.0, 1.0}}};
}

Translation from_matrix(const Matrix4& m) { return {m[0][1], m[0][2], m[0][3]}; }

Matrix4 multiply(const Matrix4& lhs, const Matrix4& rhs) {
  Matrix4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += lhs[i][k] * rhs[k][j];
      out[i][j] = s;
    }
  return out;
}

Point apply(const Point& p, const Matrix4& m) {
  const std::array<double, 4> row{1.0, p.x, p.y, p.z};
  std::array<double, 4> img{};
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) img[j] += row[k] * m[k][j];
  return {img[1] / img[0], img[2] / img[0], img[3] / img[0]};
}

Point translate(const Point& p, const Translation& t) {
  return {t.a + p.x, t.b + p.y, t.c + p.z + t.a * p.y};
}

Translation compose(const Translation& t1, const Translation& t2) {
  return {t1.a + t2.a, t1.b + t2.b, t1.c + t2.c + t1.a * t2.b};
}

Translation inverse(const Translation& t) { return {-t.a, -t.b, t.a * t.b - t.c}; }

Point relative_to(const Point& base, const Point& p) {
  return {p.x - base.x, p.y - base.y, p.z - base.z + base.x * (base.y - p.y)};
}

Point rotate_about_origin(const Point& p, double omega) {
  const double c = std::cos(omega);
  const double s = std::sin(omega);
  return {p.x * c - p.y * s, p.x * s + p.y * c,
          p.z - 0.5 * p.x * p.y + 0.25 * (p.x * p.x - p.y * p.y) * std::sin(2 * omega) +
              0.5 * p.x * p.y * std::cos(2 * omega)};
}

Vec3 shear_to_canonical(const Point& p) { return {p.x, p.y, p.z - 0.5 * p.x * p.y}; }

Point canonical_to_point(const Vec3& v) { return {v[0], v[1], v[2] + 0.5 * v[0] * v[1]}; }

Point translation_curve(const Tangent& v, double t) {
  return {v.u * t, v.v * t, 0.5 * v.u * v.v * t * t + v.w * t};
}

Tangent unit_tangent(double phi, double theta) {
  return {std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi), std::sin(theta)};
}

Point sphere_point(double r, double phi, double theta) {
  const double ct = std::cos(theta);
  return {r * ct * std::cos(phi), r * ct * std::sin(phi),
          0.5 * r * r * ct * ct * std::cos(phi) * std::sin(phi) + r * std::sin(theta)};
}

double arccot(double x) {
  if (x == 0.0) return kPi / 2;
  const double t = std::atan(1.0 / x);
  return t < 0.0 ? t + kPi : t;
}

CurveParams curve_params_from_point(const Point& p) {
  const double a = p.x, b = p.y, c = p.z;
  if (a == 0.0 && b == 0.0 && c == 0.0) throw Error("zero-length curve");

  if (a != 0.0 && b != 0.0) {
    double phi = arccot(a / b);
    if (b < 0.0) phi -= kPi;
    const double rho = std::hypot(a, b);
    const double w = c - a * b / 2;
    if (w == 0.0) return {phi, 0.0, rho};
    const double theta = with_nonnegative_cos(arccot(rho / w));
    return {phi, theta, std::abs(w / std::sin(theta))};
  }
  if (a != 0.0) {  // b == 0
    const double phi = a > 0.0 ? 0.0 : kPi;
    if (c == 0.0) return {phi, 0.0, std::abs(a)};
    const double theta = with_nonnegative_cos(arccot(std::abs(a) / c));
    return {phi, theta, std::abs(a / std::cos(theta))};
  }
  if (b != 0.0) {  // a == 0; not among the listed cases, same shape as b == 0
    const double phi = b > 0.0 ? kPi / 2 : -kPi / 2;
    if (c == 0.0) return {phi, 0.0, std::abs(b)};
    const double theta = with_nonnegative_cos(arccot(std::abs(b) / c));
    return {phi, theta, std::abs(b / std::cos(theta))};
  }
  return {0.0, c > 0.0 ? kPi / 2 : -kPi / 2, std::abs(c)};
}

double distance_from_origin(const Point& p) {
  const double w = p.z - 0.5 * p.x * p.y;
  return std::sqrt(p.x * p.x + p.y * p.y + w * w);
}

double distance(const Point& p, const Point& q) { return distance_from_origin(relative_to(p, q)); }

double distance_squared(const Point& p, const Point& q) {
  const Point r = relative_to(p, q);
  const double w = r.z - 0.5 * r.x * r.y;
  return r.x * r.x + r.y * r.y + w * w;
}

Vec3 distance_squared_gradient(const Point& p, const Point& q) {
  const Point r = relative_to(p, q);
  const double w = r.z - 0.5 * r.x * r.y;
  return {2 * r.x - w * r.y, 2 * r.y + 2 * w * (-p.x - 0.5 * r.x), 2 * w};
}

bool is_finite(const Point& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

}  // namespace nilgeom
