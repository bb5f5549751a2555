#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nilgeom/optimize.hpp"

using namespace nilgeom;

namespace {

const Lattice kOnes{1, 1, 1, 1, 1, 1};
const Lattice kRow3{1.3, 0.74, 0.65, 1.13, 1.12, 1};

SearchConfig config(const Lattice& seed, int max_evals) {
  SearchConfig cfg;
  cfg.seed_lattice = seed;
  cfg.max_evals = max_evals;
  return cfg;
}

}  // namespace

TEST_CASE("search method names") {
  CHECK(parse_search_method("nelder-mead") == SearchMethod::nelder_mead);
  CHECK(parse_search_method("coordinate-descent") == SearchMethod::coordinate_descent);
  CHECK(std::string(to_string(SearchMethod::nelder_mead)) == "nelder-mead");
  CHECK(std::string(to_string(SearchMethod::coordinate_descent)) == "coordinate-descent");
  CHECK_THROWS_AS(parse_search_method("simplex"), Error);
}

TEST_CASE("parameter packing") {
  const Lattice lat{1.1, 0.2, 0.3, 0.9, -0.4, 1};
  const Lattice back = lattice_from(params_of(lat));
  CHECK(back.t11 == lat.t11);
  CHECK(back.t13 == lat.t13);
  CHECK(back.t21 == lat.t21);
  CHECK(back.t22 == lat.t22);
  CHECK(back.t23 == lat.t23);
  CHECK(back.k == 1);
}

TEST_CASE("zero budget returns the seed") {
  const auto r = optimize_density(config(kOnes, 0));
  CHECK(r.evals == 1);
  CHECK(r.trace.size() == 1);
  CHECK(r.best_lattice.t11 == 1.0);
  CHECK(r.best_lattice.t23 == 1.0);
  CHECK(std::abs(r.best_report.density - covering_radius(kOnes).density) < 1e-15);
}

TEST_CASE("search from the unit lattice") {
  for (auto method : {SearchMethod::nelder_mead, SearchMethod::coordinate_descent}) {
    auto cfg = config(kOnes, 300);
    cfg.method = method;
    const auto r = optimize_density(cfg);
    CHECK(r.evals <= 300);
    CHECK(r.trace.size() == static_cast<std::size_t>(r.evals));
    CHECK(r.best_report.density < 2.91980);
    CHECK(r.best_report.density <= r.trace.front().density);

    // Best-so-far never increases and matches the best value seen.
    double best = INFINITY;
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
      const auto& e = r.trace[i];
      CHECK(e.eval_index == static_cast<int>(i));
      best = std::min(best, e.density);
      CHECK(e.best_density == best);
      if (i > 0) CHECK(e.best_density <= r.trace[i - 1].best_density);
    }
    CHECK(r.best_report.density == best);

    // The accepted optimum is a proper covering report.
    CHECK(r.best_report.covering_radius <= 2.0);
    CHECK(r.best_report.convex);
    const auto again = covering_radius(r.best_lattice);
    for (int i = 0; i < 6; ++i) CHECK(std::abs(again.tetra_radii[i] - r.best_report.tetra_radii[i]) < 1e-9);
  }
}

TEST_CASE("feasibility of every finite evaluation") {
  auto cfg = config(kRow3, 150);
  const auto r = optimize_density(cfg);
  for (const auto& e : r.trace) {
    if (!std::isfinite(e.density)) continue;
    CHECK(e.radius <= 2.0);
    const auto rep = covering_radius(lattice_from(e.params));
    CHECK(rep.density == e.density);
  }
}

TEST_CASE("bounds reject evaluations") {
  auto cfg = config(kOnes, 50);
  cfg.bounds[0] = {0.99, 1.01};
  cfg.initial_step = 0.5;
  const auto r = optimize_density(cfg);
  bool rejected = false;
  for (const auto& e : r.trace)
    if (e.params[0] > 1.01 || e.params[0] < 0.99) {
      CHECK(std::isinf(e.density));
      rejected = true;
    }
  CHECK(rejected);
}

TEST_CASE("infeasible seed") {
  CHECK_THROWS_AS(optimize_density(config({1, 1, 1, 1, 1, 2}, 10)), Error);
  CHECK_THROWS_AS(optimize_density(config({8, 0, 0, 8, 0, 1}, 10)), Error);
}

TEST_CASE("reproducibility") {
  auto cfg = config(kOnes, 120);
  cfg.rng_seed = 5;
  cfg.restarts = 3;
  const auto a = optimize_density(cfg);
  const auto b = optimize_density(cfg);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].params == b.trace[i].params);
    CHECK(a.trace[i].density == b.trace[i].density);
  }
}

TEST_CASE("local optimality witness") {
  auto cfg = config(kRow3, 2000);
  const auto r = optimize_density(cfg);
  const double best = r.best_report.density;
  const LatticeParams x = params_of(r.best_lattice);
  for (int i = 0; i < 5; ++i)
    for (double h : {-1e-3, 1e-3}) {
      LatticeParams y = x;
      y[i] += h;
      double d = INFINITY;
      try {
        d = covering_radius(lattice_from(y)).density;
      } catch (const Error&) {
      }
      CHECK(d > best - 1e-5);
    }
}

TEST_CASE("reference lattices") {
  const auto lats = table1_lattices();
  REQUIRE(lats.size() == 7);
  CHECK(lats[1].t11 == packing_lattice().t11);
  const auto rows = table1_harness();
  REQUIRE(rows.size() == 7);
  CHECK(std::abs(rows[0].report.covering_radius - 0.88666) < 1e-4);
  CHECK(std::abs(rows[0].report.density - 2.91980) < 1e-4);
  CHECK(std::abs(rows[1].report.covering_radius - 0.91257) < 1e-4);
  CHECK(std::abs(rows[1].report.density - 1.43141) < 1e-4);
  CHECK(std::abs(rows[4].report.covering_radius - 0.77177) < 1e-4);
  CHECK(std::abs(rows[4].report.density - 1.59134) < 1e-4);
  for (const auto& row : rows) CHECK(row.report.convex);
}
