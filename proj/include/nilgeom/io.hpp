#pragma once

#include <ostream>
#include <vector>

#include <json.hpp>

#include "nilgeom/bisector.hpp"
#include "nilgeom/lattice.hpp"
#include "nilgeom/optimize.hpp"
#include "nilgeom/simplex.hpp"

namespace nilgeom::io {

using json = nlohmann::json;

/// v rounded to 12 significant digits; non-finite values become null.
json number(double v);

json to_json(const Point& p);
json to_json(const CurveParams& c);
json to_json(const Lattice& lat);
json to_json(const CircumsphereResult& c);
json to_json(const VerificationRecord& v);
json to_json(const CoveringReport& r);
json to_json(const SearchResult& r);
json polyline_json(const std::vector<Point>& pts);

/// eval_index,t11,t13,t21,t22,t23,R,density
void write_trace_csv(std::ostream& out, const std::vector<TraceEntry>& trace);
/// row,t11,t13,t21,t22,t23,R,density
void write_table1_csv(std::ostream& out, const std::vector<Table1Row>& rows);

}  // namespace nilgeom::io
