#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nilgeom/bisector.hpp"
#include "nilgeom/simplex.hpp"

using namespace nilgeom;
using std::numbers::pi;

namespace {

const Point kA2{1, 0.5, -0.75};

Triangle equilateral_triangle() { return {kOrigin, kA2, solve_equilateral_third_vertex(kA2, 0.0, 1.5)}; }

Point random_point(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return {u(rng), u(rng), u(rng)};
}

Tetrahedron random_tetrahedron(std::mt19937_64& rng) {
  for (;;) {
    Tetrahedron t{{random_point(rng, -1.5, 1.5), random_point(rng, -1.5, 1.5), random_point(rng, -1.5, 1.5),
                   random_point(rng, -1.5, 1.5)}};
    // Keep reasonably shaped simplices; slivers have huge circumspheres.
    if (std::abs(euclidean_signed_volume(t)) > 0.1) return t;
  }
}

}  // namespace

TEST_CASE("side lengths") {
  const Triangle t{kOrigin, {-1, 3, 1}, {0.25, 0.5, 0.5}};
  const auto s = side_lengths(t);
  CHECK(s[0] == doctest::Approx(3.14307).epsilon(1e-5));
  CHECK(s[1] == doctest::Approx(0.70986).epsilon(1e-5));
  CHECK(s[2] == doctest::Approx(4.03113).epsilon(1e-5));
  // The longest side exceeds the sum of the other two.
  CHECK_FALSE(triangle_inequality_holds(t));
}

TEST_CASE("small planar triangles satisfy the triangle inequality") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const Triangle t{{u(rng), u(rng), 0}, {u(rng), u(rng), 0}, {u(rng), u(rng), 0}};
    // Nearly collinear triangles can violate it by a hair: the distance is not a metric.
    const double ab = std::hypot(t.a2.x - t.a1.x, t.a2.y - t.a1.y);
    const double bc = std::hypot(t.a3.x - t.a2.x, t.a3.y - t.a2.y);
    const double ca = std::hypot(t.a1.x - t.a3.x, t.a1.y - t.a3.y);
    const double slack = std::min({ab + bc - ca, bc + ca - ab, ca + ab - bc});
    if (slack < 0.05 * (ab + bc + ca)) continue;
    ++checked;
    CHECK(triangle_inequality_holds(t));
  }
  CHECK(checked > 500);
}

TEST_CASE("equilateral completion") {
  const Point a3 = solve_equilateral_third_vertex(kA2, 0.0, 1.5);
  CHECK(a3.x == 0.0);
  CHECK(std::abs(a3.y - -0.6164636) < 1e-5);
  CHECK(std::abs(a3.z - -1.367469) < 1e-5);
  CHECK(std::abs(distance_from_origin(a3) - 1.5) < 1e-10);
  CHECK(std::abs(distance(kA2, a3) - 1.5) < 1e-10);
  CHECK(std::abs(distance_from_origin(kA2) - 1.5) < 1e-12);

  const auto all = equilateral_completions(kA2, 0.0, 1.5);
  CHECK(all.size() == 2);
  for (const auto& p : all) {
    CHECK(std::abs(distance_from_origin(p) - 1.5) < 1e-10);
    CHECK(std::abs(distance(kA2, p) - 1.5) < 1e-10);
  }
  CHECK(all[0].y < all[1].y);

  const Triangle t = equilateral_triangle();
  for (double s : side_lengths(t)) CHECK(std::abs(s - 1.5) < 1e-8);
  CHECK(triangle_inequality_holds(t));
  // The third vertex of an isosceles triangle lies on the bisector of the base.
  CHECK(std::abs(implicit_residual(t.a1, t.a2, t.a3)) < 1e-9);

  SUBCASE("mirror branches of a symmetric configuration") {
    // A2 on the fibre: the problem is symmetric under (x, y, z) -> (-x, -y, z) about the fibre, so
    // the completions over x = 0 come in pairs y <-> -y.
    const auto sym = equilateral_completions({0, 0, 1}, 0.0, 1.0);
    REQUIRE(sym.size() == 2);
    CHECK(std::abs(sym[0].y + sym[1].y) < 1e-9);
    CHECK(std::abs(sym[0].z - sym[1].z) < 1e-9);
  }

  CHECK_THROWS_AS(solve_equilateral_third_vertex(kA2, 0.0, 0.1), Error);
}

TEST_CASE("interior angles") {
  const auto w = interior_angles(equilateral_triangle());
  CHECK(std::abs(w[0] - 1.08063) < 1e-3);
  CHECK(std::abs(w[1] - 0.84167) < 1e-3);
  CHECK(std::abs(w[2] - 1.22186) < 1e-3);
  CHECK(std::abs(w[0] + w[1] + w[2] - 3.14416) < 1e-3);
  CHECK(w[0] + w[1] + w[2] > pi);
  // Equal sides but pairwise different angles.
  CHECK(std::abs(w[0] - w[1]) > 0.1);
  CHECK(std::abs(w[1] - w[2]) > 0.1);
  CHECK(std::abs(w[0] - w[2]) > 0.1);

  const auto right = interior_angles({kOrigin, {1, 0, 0}, {0, 1, 0}});
  CHECK(std::abs(right[0] - pi / 2) < 1e-12);

  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const double p = u(rng), q = u(rng);
    const auto a = interior_angles({kOrigin, {p, 0, 0}, {0, q, 0}});
    CHECK(std::abs(a[0] - pi / 2) < 1e-12);
    const auto b = interior_angles({kOrigin, {p, 0, 0}, {-q, 0, 0}});
    CHECK(std::abs(b[0] - pi) < 1e-7);
  }
  CHECK_THROWS_AS(interior_angles({kOrigin, kOrigin, {0, 1, 0}}), Error);
}

TEST_CASE("reference circumspheres") {
  const Tetrahedron small_tet{{kOrigin, Point{1.4, 0, 1}, Point{0.5, 1, 1}, Point{0, 0, 1.5}}};
  const auto c6 = circumsphere(small_tet);
  CHECK(std::abs(c6.radius - 0.92804) < 1e-4);
  CHECK(c6.residual < 1e-9);

  const Tetrahedron large_tet{{kOrigin, Point{4, 2, 1}, Point{1, 3, 0}, Point{0, -2, 1}}};
  const auto c7 = circumsphere(large_tet);
  CHECK(std::abs(c7.radius - 7.96825) < 1e-4);
  CHECK(c7.residual < 1e-9);
  // This tetrahedron has further, larger equidistant points; the smallest sphere is chosen.
  const auto roots = circumsphere_roots(large_tet);
  CHECK(roots.size() >= 2);
  CHECK(roots.front().radius == doctest::Approx(c7.radius));
  for (std::size_t i = 1; i < roots.size(); ++i) CHECK(roots[i].radius > roots[i - 1].radius);

  const Tetrahedron lattice_corner{
      {kOrigin, Point{1.31225, 0, 0.74565}, Point{0.65613, 1.13644, 1.11847}, Point{0, 0, 1.31225 * 1.13644}}};
  const auto cl = circumsphere(lattice_corner);
  CHECK(std::abs(cl.radius - 0.91257) < 1e-4);
  CHECK(std::abs(cl.center.x - 0.45563) < 1e-4);
  CHECK(std::abs(cl.center.y - 0.26306) < 1e-4);
  CHECK(std::abs(cl.center.z - 0.80558) < 1e-4);
}

TEST_CASE("circumsphere properties on random tetrahedra") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const Tetrahedron t = random_tetrahedron(rng);
    const auto c = circumsphere(t);
    REQUIRE(c.residual < 1e-9 * std::max(1.0, c.radius));
    for (const auto& v : t.v) CHECK(std::abs(distance(v, c.center) - c.radius) < 1e-9 * (1 + c.radius));
    for (int k = 1; k < 4; ++k) CHECK(std::abs(implicit_residual(t.v[0], t.v[k], c.center)) < 1e-9 * (1 + c.radius));

    // Equivariance under a translation of all vertices.
    const Translation tr{u(rng), u(rng), u(rng)};
    Tetrahedron moved;
    for (int k = 0; k < 4; ++k) moved.v[k] = translate(t.v[k], tr);
    const auto cm = circumsphere(moved);
    const Point expect = translate(c.center, tr);
    CHECK(std::abs(cm.radius - c.radius) < 1e-10 * (1 + c.radius));
    CHECK(std::abs(cm.center.x - expect.x) < 1e-8 * (1 + c.radius));
    CHECK(std::abs(cm.center.y - expect.y) < 1e-8 * (1 + c.radius));
    CHECK(std::abs(cm.center.z - expect.z) < 1e-8 * (1 + c.radius * c.radius));
  }
}

TEST_CASE("degenerate tetrahedra") {
  const Tetrahedron flat{{kOrigin, Point{1, 0, 0}, Point{0, 1, 0}, Point{1, 1, 0}}};
  CHECK_THROWS_AS(circumsphere({{kOrigin, kOrigin, Point{0, 1, 0}, Point{0, 0, 1}}}), Error);
  CHECK_FALSE(euclidean_circumcenter({Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{1, 1, 0}}).has_value());
  CHECK(euclidean_signed_volume(flat) == 0.0);
  CHECK(euclidean_signed_volume({{kOrigin, Point{1, 0, 0}, Point{0, 1, 0}, Point{0, 0, 1}}}) ==
        doctest::Approx(1.0 / 6));
}

TEST_CASE("euclidean circumcentre") {
  const auto c = euclidean_circumcenter({Vec3{0, 0, 0}, Vec3{2, 0, 0}, Vec3{0, 2, 0}, Vec3{0, 0, 2}});
  REQUIRE(c);
  CHECK((*c)[0] == doctest::Approx(1));
  CHECK((*c)[1] == doctest::Approx(1));
  CHECK((*c)[2] == doctest::Approx(1));
}
