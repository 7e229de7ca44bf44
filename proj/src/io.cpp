#include "cardot/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace cardot::io {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_field(const std::string& tok, int line_no) {
  std::string t = trim(tok);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw ParseError("line " + std::to_string(line_no) +
                     ": not a number: '" + tok + "'");
  return v;
}

// Yields the numeric fields of each non-comment, non-blank line.
std::vector<std::vector<double>> read_rows(std::istream& in,
                                           std::size_t min_fields,
                                           std::size_t max_fields) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    std::vector<double> fields;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ','))
      fields.push_back(parse_field(tok, line_no));
    if (fields.size() < min_fields || fields.size() > max_fields)
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(min_fields) +
                       (min_fields == max_fields
                            ? ""
                            : "-" + std::to_string(max_fields)) +
                       " fields, got " + std::to_string(fields.size()));
    rows.push_back(std::move(fields));
  }
  return rows;
}

nlohmann::json parse_json(std::istream& in) {
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

DiscreteMeasure2D read_measure_2d_csv(std::istream& in) {
  std::vector<Eigen::Vector2d> pts;
  std::vector<double> w;
  for (const auto& row : read_rows(in, 3, 3)) {
    pts.emplace_back(row[0], row[1]);
    w.push_back(row[2]);
  }
  if (pts.empty()) throw ParseError("measure file has no atoms");
  return make_measure_2d(pts, w);
}

DiscreteMeasure1D read_measure_1d_csv(std::istream& in) {
  std::vector<double> x, w;
  for (const auto& row : read_rows(in, 2, 2)) {
    x.push_back(row[0]);
    w.push_back(row[1]);
  }
  if (x.empty()) throw ParseError("measure file has no atoms");
  return make_measure_1d(x, w);
}

void write_measure_2d_csv(const DiscreteMeasure2D& m, std::ostream& out) {
  out << "# x1,x2,weight\n";
  for (const Atom2D& a : m.atoms())
    out << format_double(a.x.x()) << ',' << format_double(a.x.y()) << ','
        << format_double(a.w) << '\n';
}

void write_measure_1d_csv(const DiscreteMeasure1D& m, std::ostream& out) {
  out << "# x,weight\n";
  for (const Atom1D& a : m.atoms())
    out << format_double(a.x) << ',' << format_double(a.w) << '\n';
}

DiscreteMeasure2D read_measure_2d_json(std::istream& in) {
  nlohmann::json j = parse_json(in);
  if (!j.contains("atoms") || !j["atoms"].is_array())
    throw ParseError("expected {\"atoms\": [...]}");
  std::vector<Eigen::Vector2d> pts;
  std::vector<double> w;
  for (const auto& atom : j["atoms"]) {
    if (!atom.contains("x") || !atom.contains("w") || !atom["x"].is_array() ||
        atom["x"].size() != 2)
      throw ParseError("each atom needs \"x\": [x1, x2] and \"w\"");
    pts.emplace_back(atom["x"][0].get<double>(), atom["x"][1].get<double>());
    w.push_back(atom["w"].get<double>());
  }
  if (pts.empty()) throw ParseError("measure has no atoms");
  return make_measure_2d(pts, w);
}

DiscreteMeasure1D read_measure_1d_json(std::istream& in) {
  nlohmann::json j = parse_json(in);
  if (!j.contains("atoms") || !j["atoms"].is_array())
    throw ParseError("expected {\"atoms\": [...]}");
  std::vector<double> x, w;
  for (const auto& atom : j["atoms"]) {
    if (!atom.contains("x") || !atom.contains("w") || !atom["x"].is_number())
      throw ParseError("each atom needs scalar \"x\" and \"w\"");
    x.push_back(atom["x"].get<double>());
    w.push_back(atom["w"].get<double>());
  }
  if (x.empty()) throw ParseError("measure has no atoms");
  return make_measure_1d(x, w);
}

void write_measure_2d_json(const DiscreteMeasure2D& m, std::ostream& out) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const Atom2D& a : m.atoms())
    atoms.push_back({{"x", {a.x.x(), a.x.y()}}, {"w", a.w}});
  out << nlohmann::json{{"atoms", atoms}}.dump(2) << '\n';
}

void write_measure_1d_json(const DiscreteMeasure1D& m, std::ostream& out) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const Atom1D& a : m.atoms())
    atoms.push_back({{"x", a.x}, {"w", a.w}});
  out << nlohmann::json{{"atoms", atoms}}.dump(2) << '\n';
}

DiscreteMeasure2D load_measure_2d(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
    return read_measure_2d_json(in);
  return read_measure_2d_csv(in);
}

CardinalFlow read_flow_csv(std::istream& in) {
  CardinalFlow f;
  for (const auto& row : read_rows(in, 5, 5)) {
    if (row[0] == 1.0)
      f.f1.push_back({row[1], row[2], row[3], row[4]});
    else if (row[0] == 2.0)
      f.f2.push_back({row[1], row[2], row[3], row[4]});
    else
      throw ParseError("flow rows must start with component 1 or 2");
  }
  return f;
}

void write_flow_csv(const CardinalFlow& f, std::ostream& out) {
  out << "# component,coords...,mass: 1,x1,x2,y1,mass / 2,x2,y1,y2,mass\n";
  for (const FlowAtom1& a : f.f1)
    out << "1," << format_double(a.x1) << ',' << format_double(a.x2) << ','
        << format_double(a.y1) << ',' << format_double(a.mass) << '\n';
  for (const FlowAtom2& a : f.f2)
    out << "2," << format_double(a.x2) << ',' << format_double(a.y1) << ','
        << format_double(a.y2) << ',' << format_double(a.mass) << '\n';
}

TransportPlan read_plan_csv(std::istream& in) {
  TransportPlan p;
  for (const auto& row : read_rows(in, 5, 5))
    p.entries.push_back({row[0], row[1], row[2], row[3], row[4]});
  return p;
}

void write_plan_csv(const TransportPlan& p, std::ostream& out) {
  out << "# x1,x2,y1,y2,mass\n";
  for (const PlanAtom& e : p.entries)
    out << format_double(e.x1) << ',' << format_double(e.x2) << ','
        << format_double(e.y1) << ',' << format_double(e.y2) << ','
        << format_double(e.mass) << '\n';
}

PivotMeasure read_pivot_csv(std::istream& in) {
  PivotMeasure z;
  for (const auto& row : read_rows(in, 3, 3))
    z.atoms.push_back({row[0], row[1], row[2]});
  return z;
}

void write_pivot_csv(const PivotMeasure& z, std::ostream& out) {
  out << "# y1,x2,weight\n";
  for (const PivotAtom& a : z.atoms)
    out << format_double(a.y1) << ',' << format_double(a.x2) << ','
        << format_double(a.w) << '\n';
}

}  // namespace cardot::io
