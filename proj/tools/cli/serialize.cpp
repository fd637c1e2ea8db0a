#include "cli/serialize.hpp"

#include <bandedge/error.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace bandedge::cli {

namespace {

void write(std::ostream& out, const Json& v, int indent, int depth) {
  const std::string pad(std::size_t(indent) * std::size_t(depth + 1), ' ');
  const std::string close(std::size_t(indent) * std::size_t(depth), ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out << ",\n";
        first = false;
        out << pad << Json(key).dump() << ": ";
        write(out, item, indent, depth + 1);
      }
      out << "\n" << close << "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(v.begin(), v.end(), [](const Json& e) { return e.is_structured(); });
      if (flat) {
        out << "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out << ", ";
          write(out, v[i], indent, depth + 1);
        }
        out << "]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ",\n";
        out << pad;
        write(out, v[i], indent, depth + 1);
      }
      out << "\n" << close << "]";
      return;
    }
    case Json::value_t::number_float:
      out << format_double(v.get<double>());
      return;
    default:
      out << v.dump();
  }
}

Json vec_json(const Vec2& v) { return Json::array({number(v.x()), number(v.y())}); }
Vec2 vec_of(const Json& j) { return Vec2(number_of(j.at(0)), number_of(j.at(1))); }

Json mat_json(const Mat2& m) {
  return Json::array({Json::array({number(m(0, 0)), number(m(0, 1))}), Json::array({number(m(1, 0)), number(m(1, 1))})});
}
Mat2 mat_of(const Json& j) {
  Mat2 m;
  m << number_of(j.at(0).at(0)), number_of(j.at(0).at(1)), number_of(j.at(1).at(0)), number_of(j.at(1).at(1));
  return m;
}

LevelGeometry geometry_of(const std::string& s) {
  if (s == "isolated") return LevelGeometry::Isolated;
  if (s == "extended") return LevelGeometry::Extended;
  return LevelGeometry::Unresolved;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "\"NaN\"";
  if (std::isinf(v)) return v > 0 ? "\"Infinity\"" : "\"-Infinity\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_json(std::ostream& out, const Json& value, int indent) {
  write(out, value, indent, 0);
  out << "\n";
}

Json number(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
  return v;
}

double number_of(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "NaN") return std::nan("");
    if (s == "Infinity") return HUGE_VAL;
    if (s == "-Infinity") return -HUGE_VAL;
  }
  throw Error(ErrorCode::InvalidArgument, "expected a number in report JSON");
}

Json complex_json(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }
Complex complex_of(const Json& j) { return Complex(number_of(j.at(0)), number_of(j.at(1))); }

Json to_json(const BandGrid& grid) {
  Json values = Json::array();
  for (double v : grid.values) values.push_back(number(v));
  return Json{{"g1", vec_json(grid.g1)}, {"g2", vec_json(grid.g2)}, {"n1", grid.n1},
              {"n2", grid.n2},           {"count", grid.count},     {"N", grid.N},
              {"values", values}};
}

BandGrid band_grid_of(const Json& j) {
  BandGrid g;
  g.g1 = vec_of(j.at("g1"));
  g.g2 = vec_of(j.at("g2"));
  g.n1 = j.at("n1").get<int>();
  g.n2 = j.at("n2").get<int>();
  g.count = j.at("count").get<int>();
  g.N = j.at("N").get<int>();
  for (const Json& v : j.at("values")) g.values.push_back(number_of(v));
  return g;
}

Json to_json(const ExtremumReport& r) {
  Json points = Json::array();
  for (const ExtremumPoint& p : r.points)
    points.push_back(Json{{"k", vec_json(p.k)},
                          {"t", vec_json(p.t)},
                          {"value", number(p.value)},
                          {"gradient_norm", number(p.gradient_norm)},
                          {"iterations", p.iterations}});
  Json diameters = Json::array();
  for (double d : r.diameters) diameters.push_back(number(d));
  Json masses = Json::array();
  for (const EffectiveMass& m : r.masses)
    masses.push_back(Json{{"inverse_mass", mat_json(m.inverse_mass)},
                          {"hessian", mat_json(m.hessian)},
                          {"step", number(m.step)},
                          {"richardson_error", number(m.richardson_error)},
                          {"degenerate", m.degenerate}});
  return Json{{"band", r.band},
              {"kind", to_string(r.kind)},
              {"value", number(r.value)},
              {"grid_value", number(r.grid_value)},
              {"eps", number(r.eps)},
              {"points", points},
              {"classification", to_string(r.classification)},
              {"diameters", diameters},
              {"masses", masses}};
}

ExtremumReport extremum_report_of(const Json& j) {
  ExtremumReport r;
  r.band = j.at("band").get<int>();
  r.kind = j.at("kind").get<std::string>() == "max" ? ExtremumKind::Max : ExtremumKind::Min;
  r.value = number_of(j.at("value"));
  r.grid_value = number_of(j.at("grid_value"));
  r.eps = number_of(j.at("eps"));
  for (const Json& p : j.at("points"))
    r.points.push_back({vec_of(p.at("k")), vec_of(p.at("t")), number_of(p.at("value")),
                        number_of(p.at("gradient_norm")), p.at("iterations").get<int>()});
  r.classification = geometry_of(j.at("classification").get<std::string>());
  for (const Json& d : j.at("diameters")) r.diameters.push_back(number_of(d));
  for (const Json& m : j.at("masses")) {
    EffectiveMass e;
    e.inverse_mass = mat_of(m.at("inverse_mass"));
    e.hessian = mat_of(m.at("hessian"));
    e.step = number_of(m.at("step"));
    e.richardson_error = number_of(m.at("richardson_error"));
    e.degenerate = m.at("degenerate").get<bool>();
    r.masses.push_back(e);
  }
  return r;
}

Json to_json(const DiscriminantScan& scan) {
  Json entries = Json::array();
  for (const ScanEntry& e : scan.entries)
    entries.push_back(Json{{"k2", number(e.k2)},
                           {"ok", e.ok},
                           {"error", e.error},
                           {"window", Json{{"re_min", number(e.window.re_min)},
                                           {"re_max", number(e.window.re_max)},
                                           {"im_min", number(e.window.im_min)},
                                           {"im_max", number(e.window.im_max)}}},
                           {"delta", complex_json(e.delta)},
                           {"abs", number(e.abs)},
                           {"log10_abs", number(e.log10_abs)},
                           {"count", e.count},
                           {"min_pair", number(e.min_pair)},
                           {"pair_midpoint", complex_json(e.pair_midpoint)},
                           {"flag", e.flag}});
  return Json{{"lambda", complex_json(scan.lambda)}, {"entries", entries}};
}

DiscriminantScan discriminant_scan_of(const Json& j) {
  DiscriminantScan s;
  s.lambda = complex_of(j.at("lambda"));
  for (const Json& e : j.at("entries")) {
    ScanEntry x;
    x.k2 = number_of(e.at("k2"));
    x.ok = e.at("ok").get<bool>();
    x.error = e.at("error").get<std::string>();
    const Json& w = e.at("window");
    x.window = {number_of(w.at("re_min")), number_of(w.at("re_max")), number_of(w.at("im_min")),
                number_of(w.at("im_max"))};
    x.delta = complex_of(e.at("delta"));
    x.abs = number_of(e.at("abs"));
    x.log10_abs = number_of(e.at("log10_abs"));
    x.count = e.at("count").get<std::size_t>();
    x.min_pair = number_of(e.at("min_pair"));
    x.pair_midpoint = complex_of(e.at("pair_midpoint"));
    x.flag = e.at("flag").get<bool>();
    s.entries.push_back(x);
  }
  return s;
}

}  // namespace bandedge::cli
