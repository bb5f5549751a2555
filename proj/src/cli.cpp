#include "nilgeom/cli.hpp"

#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "nilgeom/bisector.hpp"
#include "nilgeom/io.hpp"
#include "nilgeom/lattice.hpp"
#include "nilgeom/optimize.hpp"
#include "nilgeom/simplex.hpp"

namespace nilgeom::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, std::size_t expected, char sep, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError(std::string("invalid ") + what + ": '" + text + "'");
    }
    if (used != item.size() || !std::isfinite(v)) throw UsageError(std::string("invalid ") + what + ": '" + text + "'");
    out.push_back(v);
  }
  if (out.size() != expected) throw UsageError(std::string("invalid ") + what + ": '" + text + "'");
  return out;
}

Point parse_point(const std::string& text) {
  const auto v = parse_list(text, 3, ',', "point");
  return {v[0], v[1], v[2]};
}

Interval parse_range(const std::string& text) {
  const auto v = parse_list(text, 2, ':', "range");
  return {v[0], v[1]};
}

Lattice parse_lattice(const std::string& text, int k) {
  const auto v = parse_list(text, 5, ',', "lattice");
  return {v[0], v[1], v[2], v[3], v[4], k};
}

void emit_json(std::ostream& out, const io::json& j) { out << j.dump(2) << '\n'; }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Translation distance, bisectors, circumspheres and lattice coverings in Nil geometry", "nilgeom"};
  app.require_subcommand(1);
  std::string output_path;
  app.add_option("-o,--output", output_path, "Write the result to PATH instead of stdout");

  std::function<void(std::ostream&)> action;

  // dist
  auto* dist = app.add_subcommand("dist", "Translation distance between two points");
  std::string p_text, q_text;
  dist->add_option("--p", p_text, "x,y,z")->required();
  dist->add_option("--q", q_text, "x,y,z")->required();
  dist->callback([&] {
    action = [&](std::ostream& o) {
      emit_json(o, {{"distance", io::number(distance(parse_point(p_text), parse_point(q_text)))}});
    };
  });

  // curve
  auto* curve = app.add_subcommand("curve", "Translation curve parameters from the origin to a point");
  curve->add_option("--p", p_text, "x,y,z")->required();
  curve->callback([&] {
    action = [&](std::ostream& o) { emit_json(o, io::to_json(curve_params_from_point(parse_point(p_text)))); };
  });

  // bisector
  auto* bis = app.add_subcommand("bisector", "Mesh of the bisector surface of two points");
  std::string p1_text, p2_text, xr_text = "-2:2", yr_text = "-2:2", obj_path;
  std::size_t nx = 41, ny = 41;
  double clamp = 1e3;
  bis->add_option("--p1", p1_text, "x,y,z")->required();
  bis->add_option("--p2", p2_text, "x,y,z")->required();
  bis->add_option("--xrange", xr_text, "a:b")->capture_default_str();
  bis->add_option("--yrange", yr_text, "a:b")->capture_default_str();
  bis->add_option("--nx", nx)->capture_default_str()->check(CLI::Range(2, 100000));
  bis->add_option("--ny", ny)->capture_default_str()->check(CLI::Range(2, 100000));
  bis->add_option("--clamp", clamp, "Drop vertices with |z| above this")->capture_default_str();
  bis->add_option("--obj", obj_path, "Write the mesh as Wavefront OBJ to PATH");
  bis->callback([&] {
    action = [&](std::ostream& o) {
      const auto mesh = mesh_bisector(parse_point(p1_text), parse_point(p2_text), parse_range(xr_text),
                                      parse_range(yr_text), nx, ny, MeshOptions{clamp});
      if (obj_path.empty()) {
        write_obj(o, mesh);
        return;
      }
      std::ofstream f(obj_path, std::ios::binary);
      if (!f) throw Error("cannot open " + obj_path);
      write_obj(f, mesh);
      emit_json(o, {{"obj", obj_path},
                    {"vertices", mesh.vertices.size()},
                    {"faces", mesh.faces.size()},
                    {"holes", mesh.holes}});
    };
  });

  // locus
  auto* locus = app.add_subcommand("locus", "Points equidistant from three vertices");
  std::string a1_text, a2_text, a3_text, range_text = "-2:2", axis_text = "x";
  std::size_t samples = 101;
  locus->add_option("--a1", a1_text, "x,y,z")->required();
  locus->add_option("--a2", a2_text, "x,y,z")->required();
  locus->add_option("--a3", a3_text, "x,y,z")->required();
  locus->add_option("--range", range_text, "a:b")->capture_default_str();
  locus->add_option("--samples", samples)->capture_default_str();
  locus->add_option("--axis", axis_text, "Sweep coordinate")->check(CLI::IsMember({"x", "y"}))->capture_default_str();
  locus->callback([&] {
    action = [&](std::ostream& o) {
      const auto pts = equidistant_locus_general(parse_point(a1_text), parse_point(a2_text), parse_point(a3_text),
                                                 parse_range(range_text), samples,
                                                 axis_text == "y" ? SweepAxis::y : SweepAxis::x);
      emit_json(o, io::polyline_json(pts));
    };
  });

  // triangle
  auto* tri = app.add_subcommand("triangle", "Sides and interior angles of a translation triangle");
  tri->add_option("--a1", a1_text, "x,y,z")->required();
  tri->add_option("--a2", a2_text, "x,y,z")->required();
  tri->add_option("--a3", a3_text, "x,y,z")->required();
  tri->callback([&] {
    action = [&](std::ostream& o) {
      const Triangle t{parse_point(a1_text), parse_point(a2_text), parse_point(a3_text)};
      const auto s = side_lengths(t);
      const auto w = interior_angles(t);
      emit_json(o, {{"sides", {io::number(s[0]), io::number(s[1]), io::number(s[2])}},
                    {"angles", {io::number(w[0]), io::number(w[1]), io::number(w[2])}},
                    {"angle_sum", io::number(w[0] + w[1] + w[2])},
                    {"triangle_inequality", triangle_inequality_holds(t)}});
    };
  });

  // circumsphere
  auto* circ = app.add_subcommand("circumsphere", "Circumscribed translation sphere of a tetrahedron");
  std::vector<std::string> vertex_texts;
  circ->add_option("--v", vertex_texts, "x,y,z (give four times)")->required()->expected(1)->multi_option_policy(
      CLI::MultiOptionPolicy::TakeAll);
  circ->callback([&] {
    action = [&](std::ostream& o) {
      if (vertex_texts.size() != 4) throw UsageError("circumsphere needs exactly four --v options");
      Tetrahedron tet;
      for (int i = 0; i < 4; ++i) tet.v[i] = parse_point(vertex_texts[i]);
      emit_json(o, io::to_json(circumsphere(tet)));
    };
  });

  // cover
  auto* cover = app.add_subcommand("cover", "Covering radius and density of a lattice");
  std::string lattice_text;
  int k = 1, window = 2;
  std::size_t verify_n = 0;
  std::uint64_t rng_seed = 0;
  cover->add_option("--lattice", lattice_text, "t11,t13,t21,t22,t23")->required();
  cover->add_option("--k", k)->capture_default_str();
  cover->add_option("--verify", verify_n, "Check the covering with N samples");
  cover->add_option("--window", window)->capture_default_str();
  cover->add_option("--rng-seed", rng_seed)->capture_default_str();
  cover->callback([&] {
    action = [&](std::ostream& o) {
      const Lattice lat = parse_lattice(lattice_text, k);
      auto report = covering_radius(lat);
      if (verify_n > 0 && report.convex)
        report.verification = verify_covering(lat, report.covering_radius, verify_n, window, rng_seed);
      emit_json(o, io::to_json(report));
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Sample-based check that a radius covers the lattice");
  double radius = std::numeric_limits<double>::quiet_NaN();
  std::size_t verify_samples = 100000;
  verify->add_option("--lattice", lattice_text, "t11,t13,t21,t22,t23")->required();
  verify->add_option("--radius", radius, "Defaults to the computed covering radius");
  verify->add_option("--samples", verify_samples)->capture_default_str();
  verify->add_option("--window", window)->capture_default_str();
  verify->add_option("--rng-seed", rng_seed)->capture_default_str();
  verify->callback([&] {
    action = [&](std::ostream& o) {
      const Lattice lat = parse_lattice(lattice_text, 1);
      const double r = std::isnan(radius) ? covering_radius(lat).covering_radius : radius;
      auto j = io::to_json(verify_covering(lat, r, verify_samples, window, rng_seed));
      j["radius"] = io::number(r);
      emit_json(o, j);
    };
  });

  // table1
  auto* table = app.add_subcommand("table1", "Covering radius and density of the reference lattices (CSV)");
  table->callback([&] { action = [&](std::ostream& o) { io::write_table1_csv(o, table1_harness()); }; });

  // optimize
  auto* opt = app.add_subcommand("optimize", "Minimise covering density from a seed lattice");
  std::string seed_text, method_text = "nelder-mead", trace_path;
  int max_evals = 2000, restarts = 2;
  double step = 0.05;
  opt->add_option("--seed", seed_text, "t11,t13,t21,t22,t23")->required();
  opt->add_option("--method", method_text)
      ->check(CLI::IsMember({"nelder-mead", "coordinate-descent"}))
      ->capture_default_str();
  opt->add_option("--max-evals", max_evals)->capture_default_str()->check(CLI::NonNegativeNumber);
  opt->add_option("--restarts", restarts)->capture_default_str()->check(CLI::NonNegativeNumber);
  opt->add_option("--step", step, "Initial simplex edge")->capture_default_str();
  opt->add_option("--rng-seed", rng_seed)->capture_default_str();
  opt->add_option("--trace", trace_path, "Write the evaluation trace as CSV to PATH");
  opt->callback([&] {
    action = [&](std::ostream& o) {
      SearchConfig cfg;
      cfg.seed_lattice = parse_lattice(seed_text, 1);
      cfg.method = parse_search_method(method_text);
      cfg.max_evals = max_evals;
      cfg.restarts = restarts;
      cfg.initial_step = step;
      cfg.rng_seed = rng_seed;
      const auto result = optimize_density(cfg);
      auto j = io::to_json(result);
      j["method"] = method_text;
      if (!trace_path.empty()) {
        std::ofstream f(trace_path, std::ios::binary);
        if (!f) throw Error("cannot open " + trace_path);
        io::write_trace_csv(f, result.trace);
        j["trace"] = trace_path;
      }
      emit_json(o, j);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (output_path.empty()) {
      action(out);
    } else {
      std::ostringstream buf;
      action(buf);
      std::ofstream f(output_path, std::ios::binary);
      if (!f) throw Error("cannot open " + output_path);
      f << buf.str();
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"nilgeom"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace nilgeom::cli
