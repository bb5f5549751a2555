#include "nilgeom/optimize.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

namespace nilgeom {

SearchMethod parse_search_method(const std::string& name) {
  if (name == "nelder-mead") return SearchMethod::nelder_mead;
  if (name == "coordinate-descent") return SearchMethod::coordinate_descent;
  throw Error("unknown search method: " + name);
}

const char* to_string(SearchMethod m) {
  return m == SearchMethod::nelder_mead ? "nelder-mead" : "coordinate-descent";
}

LatticeParams params_of(const Lattice& lat) { return {lat.t11, lat.t13, lat.t21, lat.t22, lat.t23}; }

Lattice lattice_from(const LatticeParams& p, int k) { return {p[0], p[1], p[2], p[3], p[4], k}; }

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kDim = 5;

class Objective {
 public:
  explicit Objective(const SearchConfig& cfg) : cfg_(cfg) {}

  bool exhausted() const { return evals_ >= cfg_.max_evals; }

  double operator()(const LatticeParams& x) {
    TraceEntry e;
    e.eval_index = evals_++;
    e.params = x;
    e.radius = kInf;
    e.density = kInf;
    if (auto report = evaluate(x)) {
      e.radius = report->covering_radius;
      e.density = report->density;
      if (e.density < best_density_) {
        best_density_ = e.density;
        best_ = *report;
      }
    }
    e.best_density = best_density_;
    trace_.push_back(e);
    return e.density;
  }

  bool has_best() const { return best_.has_value(); }
  const CoveringReport& best() const { return *best_; }
  int evals() const { return evals_; }
  std::vector<TraceEntry> take_trace() { return std::move(trace_); }

 private:
  std::optional<CoveringReport> evaluate(const LatticeParams& x) const {
    for (int i = 0; i < kDim; ++i)
      if (!(x[i] >= cfg_.bounds[i].first && x[i] <= cfg_.bounds[i].second)) return std::nullopt;
    try {
      auto report = covering_radius(lattice_from(x, cfg_.seed_lattice.k));
      if (!report.convex) return std::nullopt;
      return report;
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  const SearchConfig& cfg_;
  int evals_ = 0;
  double best_density_ = kInf;
  std::optional<CoveringReport> best_;
  std::vector<TraceEntry> trace_;
};

LatticeParams affine(const LatticeParams& base, const LatticeParams& toward, double t) {
  LatticeParams out{};
  for (int i = 0; i < kDim; ++i) out[i] = base[i] + t * (toward[i] - base[i]);
  return out;
}

// Reflection 1, expansion 2, contraction 0.5, shrink 0.5.
void nelder_mead(Objective& f, const LatticeParams& start, double step, double tolerance,
                 std::mt19937_64* jitter) {
  std::array<LatticeParams, kDim + 1> x{};
  std::array<double, kDim + 1> fx{};
  x[0] = start;
  fx[0] = f(start);
  for (int i = 0; i < kDim && !f.exhausted(); ++i) {
    x[i + 1] = start;
    double h = step;
    if (jitter) h *= std::uniform_real_distribution<double>(0.5, 1.5)(*jitter);
    x[i + 1][i] += h;
    fx[i + 1] = f(x[i + 1]);
  }
  if (f.exhausted()) return;

  std::array<int, kDim + 1> order{};
  while (!f.exhausted()) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fx[a] < fx[b]; });
    const int best = order[0], worst = order[kDim], second = order[kDim - 1];
    if (std::isfinite(fx[worst]) && fx[worst] - fx[best] <= tolerance) return;

    LatticeParams centroid{};
    for (int j = 0; j < kDim; ++j)
      for (int i = 0; i < kDim; ++i) centroid[i] += x[order[j]][i] / kDim;

    const LatticeParams xr = affine(centroid, x[worst], -1.0);
    const double fr = f(xr);
    if (fr < fx[best]) {
      if (f.exhausted()) {
        x[worst] = xr;
        fx[worst] = fr;
        return;
      }
      const LatticeParams xe = affine(centroid, x[worst], -2.0);
      const double fe = f(xe);
      if (fe < fr) {
        x[worst] = xe;
        fx[worst] = fe;
      } else {
        x[worst] = xr;
        fx[worst] = fr;
      }
      continue;
    }
    if (fr < fx[second]) {
      x[worst] = xr;
      fx[worst] = fr;
      continue;
    }
    if (f.exhausted()) return;
    const bool outside = fr < fx[worst];
    const LatticeParams xc = outside ? affine(centroid, xr, 0.5) : affine(centroid, x[worst], 0.5);
    const double fc = f(xc);
    if (fc < (outside ? fr : fx[worst])) {
      x[worst] = xc;
      fx[worst] = fc;
      continue;
    }
    for (int j = 1; j <= kDim && !f.exhausted(); ++j) {
      const int idx = order[j];
      x[idx] = affine(x[best], x[idx], 0.5);
      fx[idx] = f(x[idx]);
    }
  }
}

void coordinate_descent(Objective& f, const LatticeParams& start, double step, double tolerance) {
  LatticeParams x = start;
  double fx = f(x);
  while (!f.exhausted() && step > 1e-9) {
    bool improved = false;
    for (int i = 0; i < kDim && !f.exhausted(); ++i)
      for (double sign : {1.0, -1.0}) {
        if (f.exhausted()) break;
        LatticeParams y = x;
        y[i] += sign * step;
        const double fy = f(y);
        if (fy < fx - tolerance) {
          x = y;
          fx = fy;
          improved = true;
          break;
        }
      }
    if (!improved) step *= 0.5;
  }
}

}  // namespace

SearchResult optimize_density(const SearchConfig& cfg) {
  if (cfg.seed_lattice.k != 1) throw Error("density optimisation defined for k=1");
  validate(cfg.seed_lattice);

  // The seed is always evaluated, even with a zero budget.
  SearchConfig seeded = cfg;
  seeded.max_evals = std::max(cfg.max_evals, 1);
  Objective f(seeded);
  const LatticeParams seed = params_of(cfg.seed_lattice);
  f(seed);
  if (!f.has_best()) throw Error("seed lattice is infeasible");

  std::mt19937_64 rng(cfg.rng_seed);
  for (int r = 0; r <= cfg.restarts && !f.exhausted(); ++r) {
    const LatticeParams start = params_of(f.best().lattice);
    const int before = f.evals();
    if (cfg.method == SearchMethod::nelder_mead)
      nelder_mead(f, start, cfg.initial_step, cfg.tolerance, (r > 0 && cfg.rng_seed != 0) ? &rng : nullptr);
    else
      coordinate_descent(f, start, cfg.initial_step, cfg.tolerance);
    if (f.evals() == before) break;
  }

  SearchResult out;
  out.best_report = f.best();
  out.best_lattice = out.best_report.lattice;
  out.evals = f.evals();
  out.trace = f.take_trace();
  return out;
}

Lattice packing_lattice() {
  // t13 is half the fibre period, which is twice the packing radius 0.74565.
  return {1.31225, 0.74565, 0.65613, 1.13644, 1.11847, 1};
}

std::vector<Lattice> table1_lattices() {
  return {
      {1.0, 1.0, 1.0, 1.0, 1.0, 1},        packing_lattice(),
      {1.3, 0.74, 0.65, 1.13, 1.12, 1},    {1.29, 0.74, 0.64, 1.13, 1.12, 1},
      {1.1, 0.5, 0.5, 1.0, 1.0, 1},        {1.1, 0.5, 0.4, 1.0, 1.0, 1},
      {1.31, 0.74, 0.65, 1.13, 1.12, 1},
  };
}

std::vector<Table1Row> table1_harness() {
  std::vector<Table1Row> rows;
  for (const auto& lat : table1_lattices()) rows.push_back({lat, covering_radius(lat)});
  return rows;
}

}  // namespace nilgeom
