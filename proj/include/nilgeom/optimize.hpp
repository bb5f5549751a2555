#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nilgeom/lattice.hpp"

namespace nilgeom {

enum class SearchMethod { nelder_mead, coordinate_descent };

SearchMethod parse_search_method(const std::string& name);
const char* to_string(SearchMethod m);

/// Free parameters in the order (t11, t13, t21, t22, t23).
using LatticeParams = std::array<double, 5>;

LatticeParams params_of(const Lattice& lat);
Lattice lattice_from(const LatticeParams& p, int k = 1);

struct SearchConfig {
  Lattice seed_lattice;
  SearchMethod method = SearchMethod::nelder_mead;
  int max_evals = 2000;
  double tolerance = 1e-10;  // simplex spread in density that ends a restart
  std::array<std::pair<double, double>, 5> bounds{{{0.05, 5.0}, {-5.0, 5.0}, {-5.0, 5.0}, {0.05, 5.0}, {-5.0, 5.0}}};
  int restarts = 2;
  double initial_step = 0.05;
  std::uint64_t rng_seed = 0;  // jitters restart simplices; 0 keeps them axis-aligned
};

struct TraceEntry {
  int eval_index = 0;
  LatticeParams params{};
  double radius = 0.0;   // +inf when infeasible
  double density = 0.0;  // +inf when infeasible
  double best_density = 0.0;
};

struct SearchResult {
  Lattice best_lattice;
  CoveringReport best_report;
  int evals = 0;
  std::vector<TraceEntry> trace;
};

/// Minimise covering density over the five lattice parameters from the seed.
///
/// Evaluations are sequential and recorded in order. An evaluation scores +inf
/// when it leaves the bounds, a circumsphere solve fails or the covering radius
/// exceeds 2. Throws Error when the seed is infeasible.
SearchResult optimize_density(const SearchConfig& cfg);

struct Table1Row {
  Lattice lattice;
  CoveringReport report;
};

/// The seven reference lattices of locally optimal coverings, in a fixed order.
std::vector<Lattice> table1_lattices();
std::vector<Table1Row> table1_harness();

/// Generators of the densest lattice-like packing, used as a covering seed.
Lattice packing_lattice();

}  // namespace nilgeom
