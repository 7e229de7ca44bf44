#pragma once

#include <iosfwd>
#include <string>

#include "cardot/cardinal.hpp"
#include "cardot/errors.hpp"
#include "cardot/measures.hpp"

namespace cardot::io {

/// Malformed input file (CSV or JSON).
struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

/// Shortest decimal string that round-trips the value exactly.
std::string format_double(double v);

// Measures. CSV: one atom per line, `x1,x2,weight` (2D) or `x,weight` (1D),
// `#` starts a comment. JSON mirror: {"atoms":[{"x":[x1,x2],"w":w},...]}
// with a scalar "x" in the 1D variant.
DiscreteMeasure2D read_measure_2d_csv(std::istream& in);
DiscreteMeasure1D read_measure_1d_csv(std::istream& in);
void write_measure_2d_csv(const DiscreteMeasure2D& m, std::ostream& out);
void write_measure_1d_csv(const DiscreteMeasure1D& m, std::ostream& out);

DiscreteMeasure2D read_measure_2d_json(std::istream& in);
DiscreteMeasure1D read_measure_1d_json(std::istream& in);
void write_measure_2d_json(const DiscreteMeasure2D& m, std::ostream& out);
void write_measure_1d_json(const DiscreteMeasure1D& m, std::ostream& out);

/// Reads a 2D measure, dispatching on the file extension (.json vs CSV).
DiscreteMeasure2D load_measure_2d(const std::string& path);

// Cardinal flows. CSV rows: `1,x1,x2,y1,mass` for f1 and `2,x2,y1,y2,mass`
// for f2.
CardinalFlow read_flow_csv(std::istream& in);
void write_flow_csv(const CardinalFlow& f, std::ostream& out);

// Transport plans. CSV rows: `x1,x2,y1,y2,mass`.
TransportPlan read_plan_csv(std::istream& in);
void write_plan_csv(const TransportPlan& p, std::ostream& out);

// Pivot measures. CSV rows: `y1,x2,weight`.
PivotMeasure read_pivot_csv(std::istream& in);
void write_pivot_csv(const PivotMeasure& z, std::ostream& out);

}  // namespace cardot::io
