#include "nilgeom/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

namespace nilgeom::io {

namespace {

std::string fmt12(double v) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_params(std::ostream& out, const LatticeParams& p) {
  for (double v : p) out << ',' << fmt12(v);
}

}  // namespace

json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(fmt12(v).c_str(), nullptr);
}

json to_json(const Point& p) { return json::array({number(p.x), number(p.y), number(p.z)}); }

json to_json(const CurveParams& c) {
  return {{"phi", number(c.phi)}, {"theta", number(c.theta)}, {"r", number(c.r)}};
}

json to_json(const Lattice& lat) {
  return {{"t11", number(lat.t11)}, {"t13", number(lat.t13)}, {"t21", number(lat.t21)},
          {"t22", number(lat.t22)}, {"t23", number(lat.t23)}, {"k", lat.k}};
}

json to_json(const CircumsphereResult& c) {
  return {{"center", to_json(c.center)},
          {"radius", number(c.radius)},
          {"residual", number(c.residual)},
          {"iterations", c.iterations},
          {"roots", c.roots}};
}

json to_json(const VerificationRecord& v) {
  return {{"samples", v.samples},
          {"window", v.neighbor_window},
          {"max_min_distance", number(v.max_min_distance)},
          {"pass", v.pass}};
}

json to_json(const CoveringReport& r) {
  json radii = json::array();
  json centers = json::array();
  for (std::size_t i = 0; i < r.tetra_radii.size(); ++i) {
    radii.push_back(number(r.tetra_radii[i]));
    centers.push_back(to_json(r.tetra_centers[i]));
  }
  return {{"lattice", to_json(r.lattice)},
          {"tetra_radii", radii},
          {"tetra_centers", centers},
          {"covering_radius", number(r.covering_radius)},
          {"ball_volume", number(r.ball_volume)},
          {"cell_volume", number(r.cell_volume)},
          {"density", number(r.density)},
          {"convex", r.convex},
          {"verification", r.verification ? to_json(*r.verification) : json(nullptr)}};
}

json to_json(const SearchResult& r) {
  return {{"best_lattice", to_json(r.best_lattice)}, {"best_report", to_json(r.best_report)}, {"evals", r.evals}};
}

json polyline_json(const std::vector<Point>& pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back(to_json(p));
  return {{"count", pts.size()}, {"points", arr}};
}

void write_trace_csv(std::ostream& out, const std::vector<TraceEntry>& trace) {
  out << "eval_index,t11,t13,t21,t22,t23,R,density\n";
  for (const auto& e : trace) {
    out << e.eval_index;
    write_params(out, e.params);
    out << ',' << fmt12(e.radius) << ',' << fmt12(e.density) << '\n';
  }
}

void write_table1_csv(std::ostream& out, const std::vector<Table1Row>& rows) {
  out << "row,t11,t13,t21,t22,t23,R,density\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << i + 1;
    write_params(out, params_of(rows[i].lattice));
    out << ',' << fmt12(rows[i].report.covering_radius) << ',' << fmt12(rows[i].report.density) << '\n';
  }
}

}  // namespace nilgeom::io
