#include "cli/config.hpp"

#include <bandedge/error.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace bandedge::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ConfigError, where + ": " + what);
}

void require_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(where, "expected an object");
  const std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items())
    if (!known.contains(key)) fail(where, "unknown key '" + key + "'");
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

int positive(const json& j, const std::string& where) {
  const int v = integer(j, where);
  if (v < 1) fail(where, "must be positive");
  return v;
}

double positive_number(const json& j, const std::string& where) {
  const double v = number(j, where);
  if (!(v > 0.0)) fail(where, "must be positive");
  return v;
}

double non_negative(const json& j, const std::string& where) {
  const double v = number(j, where);
  if (!(v >= 0.0)) fail(where, "must be non-negative");
  return v;
}

Vec2 vec2(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where, "expected [x, y]");
  return Vec2(number(j[0], where), number(j[1], where));
}

Complex complex_value(const json& j, const std::string& where) {
  if (j.is_number()) return number(j, where);
  if (!j.is_array() || j.size() != 2) fail(where, "expected a number or [re, im]");
  return Complex(number(j[0], where), number(j[1], where));
}

std::vector<Term> terms(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a list of [m1, m2, re, im]");
  std::vector<Term> out;
  for (const json& t : j) {
    if (!t.is_array() || t.size() != 4) fail(where, "expected [m1, m2, re, im]");
    out.push_back({integer(t[0], where), integer(t[1], where), number(t[2], where), number(t[3], where)});
  }
  return out;
}

std::vector<double> k2_values(const json& j, const std::string& where) {
  if (j.is_array()) {
    std::vector<double> out;
    for (const json& v : j) out.push_back(number(v, where));
    if (out.empty()) fail(where, "empty list");
    return out;
  }
  require_keys(j, where, {"start", "stop", "count"});
  if (!j.contains("start") || !j.contains("stop") || !j.contains("count"))
    fail(where, "range needs start, stop and count");
  const double a = number(j["start"], where + ".start");
  const double b = number(j["stop"], where + ".stop");
  const int n = positive(j["count"], where + ".count");
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  return out;
}

void parse_tolerances(const json& j, JobConfig& c) {
  require_keys(j, "tolerances",
               {"tol_gradient", "max_iterations", "fd_step", "isolated_spacings", "extended_fraction",
                "max_candidates", "mass_step", "hessian_tol", "tol_cluster", "tol_pair", "tol_boundary", "tol_disc",
                "tol_real", "im_cap", "re_center", "window_probes"});
  const auto get = [&j](const char* key) -> const json* { return j.contains(key) ? &j[key] : nullptr; };
  const std::string w = "tolerances.";
  if (auto v = get("tol_gradient")) c.extremum.tol_gradient = positive_number(*v, w + "tol_gradient");
  if (auto v = get("max_iterations")) c.extremum.max_iterations = positive(*v, w + "max_iterations");
  if (auto v = get("fd_step")) c.extremum.fd_step = number(*v, w + "fd_step");
  if (auto v = get("isolated_spacings")) c.extremum.isolated_spacings = positive_number(*v, w + "isolated_spacings");
  if (auto v = get("extended_fraction")) c.extremum.extended_fraction = positive_number(*v, w + "extended_fraction");
  if (auto v = get("max_candidates")) c.extremum.max_candidates = std::size_t(positive(*v, w + "max_candidates"));
  if (auto v = get("mass_step")) c.extremum.mass_step = positive_number(*v, w + "mass_step");
  if (auto v = get("hessian_tol")) c.extremum.hessian_tol = non_negative(*v, w + "hessian_tol");
  if (auto v = get("tol_cluster")) c.scan.tol_cluster = non_negative(*v, w + "tol_cluster");
  if (auto v = get("tol_pair")) c.scan.discriminant.tol_pair = non_negative(*v, w + "tol_pair");
  if (auto v = get("tol_boundary")) c.scan.discriminant.tol_boundary = non_negative(*v, w + "tol_boundary");
  if (auto v = get("tol_disc")) c.scan.tol_disc = non_negative(*v, w + "tol_disc");
  if (auto v = get("tol_real")) c.scan.tol_real = non_negative(*v, w + "tol_real");
  if (auto v = get("im_cap")) c.scan.window.im_cap = positive_number(*v, w + "im_cap");
  if (auto v = get("re_center")) c.scan.window.re_center = number(*v, w + "re_center");
  if (auto v = get("window_probes")) c.scan.window.probes = positive(*v, w + "window_probes");
}

}  // namespace

const char* to_string(JobKind kind) {
  switch (kind) {
    case JobKind::Bands: return "bands";
    case JobKind::Extrema: return "extrema";
    case JobKind::T1Scan: return "t1scan";
    case JobKind::Discriminant: return "discriminant";
    case JobKind::Discrete: return "discrete";
    case JobKind::SelfCheck: return "selfcheck";
  }
  return "bands";
}

const char* to_string(Format format) { return format == Format::Csv ? "csv" : "json"; }

JobKind parse_job_kind(std::string_view name) {
  for (JobKind k : {JobKind::Bands, JobKind::Extrema, JobKind::T1Scan, JobKind::Discriminant, JobKind::Discrete,
                    JobKind::SelfCheck})
    if (name == to_string(k)) return k;
  fail("job", "unknown job kind '" + std::string(name) + "'");
}

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  fail("output.format", "expected csv or json, got '" + std::string(name) + "'");
}

JobConfig parse_config(const json& doc) {
  require_keys(doc, "config",
               {"job", "lattice", "coefficients", "truncation", "grid", "band_count", "extrema", "t1", "discrete",
                "tolerances", "output"});
  JobConfig c;
  if (doc.contains("job")) {
    if (!doc["job"].is_string()) fail("job", "expected a string");
    c.job = parse_job_kind(doc["job"].get<std::string>());
  }
  if (doc.contains("lattice")) {
    const json& l = doc["lattice"];
    require_keys(l, "lattice", {"b1", "b2"});
    if (l.contains("b1")) c.b1 = vec2(l["b1"], "lattice.b1");
    if (l.contains("b2")) c.b2 = vec2(l["b2"], "lattice.b2");
  }
  if (doc.contains("coefficients")) {
    const json& co = doc["coefficients"];
    require_keys(co, "coefficients", {"V", "A1", "A2", "omega"});
    if (co.contains("V")) c.V = terms(co["V"], "coefficients.V");
    if (co.contains("A1")) c.A1 = terms(co["A1"], "coefficients.A1");
    if (co.contains("A2")) c.A2 = terms(co["A2"], "coefficients.A2");
    if (co.contains("omega")) c.omega = terms(co["omega"], "coefficients.omega");
  }
  if (doc.contains("truncation")) {
    c.truncation = integer(doc["truncation"], "truncation");
    if (c.truncation < 0) fail("truncation", "must be non-negative");
  }
  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    require_keys(g, "grid", {"n1", "n2"});
    if (g.contains("n1")) c.n1 = positive(g["n1"], "grid.n1");
    if (g.contains("n2")) c.n2 = positive(g["n2"], "grid.n2");
  }
  if (doc.contains("band_count")) c.band_count = positive(doc["band_count"], "band_count");
  if (doc.contains("extrema")) {
    const json& e = doc["extrema"];
    require_keys(e, "extrema", {"band", "kind", "eps"});
    if (e.contains("band")) c.band = positive(e["band"], "extrema.band");
    if (e.contains("kind")) {
      const std::string k = e["kind"].is_string() ? e["kind"].get<std::string>() : "";
      if (k == "min") c.kind = ExtremumKind::Min;
      else if (k == "max") c.kind = ExtremumKind::Max;
      else fail("extrema.kind", "expected min or max");
    }
    if (e.contains("eps")) c.eps = non_negative(e["eps"], "extrema.eps");
  }
  if (doc.contains("t1")) {
    const json& t = doc["t1"];
    require_keys(t, "t1", {"lambda", "k2"});
    if (t.contains("lambda")) c.lambda = complex_value(t["lambda"], "t1.lambda");
    if (t.contains("k2")) c.k2 = k2_values(t["k2"], "t1.k2");
  }
  if (doc.contains("discrete")) {
    const json& d = doc["discrete"];
    require_keys(d, "discrete", {"v0", "v1", "surface_resolution", "adapter_resolution", "torus_sizes", "level_eps"});
    if (d.contains("v0")) c.discrete.model.v0 = number(d["v0"], "discrete.v0");
    if (d.contains("v1")) c.discrete.model.v1 = number(d["v1"], "discrete.v1");
    if (d.contains("surface_resolution"))
      c.discrete.surface_resolution = positive(d["surface_resolution"], "discrete.surface_resolution");
    if (d.contains("adapter_resolution"))
      c.discrete.adapter_resolution = positive(d["adapter_resolution"], "discrete.adapter_resolution");
    if (d.contains("torus_sizes")) {
      if (!d["torus_sizes"].is_array()) fail("discrete.torus_sizes", "expected a list");
      c.discrete.torus_sizes.clear();
      for (const json& v : d["torus_sizes"]) c.discrete.torus_sizes.push_back(positive(v, "discrete.torus_sizes"));
    }
    if (d.contains("level_eps")) c.discrete.level_eps = non_negative(d["level_eps"], "discrete.level_eps");
  }
  if (doc.contains("tolerances")) parse_tolerances(doc["tolerances"], c);
  if (doc.contains("output")) {
    const json& o = doc["output"];
    require_keys(o, "output", {"path", "format"});
    if (o.contains("path")) {
      if (!o["path"].is_string()) fail("output.path", "expected a string");
      c.out_path = o["path"].get<std::string>();
    }
    if (o.contains("format")) {
      if (!o["format"].is_string()) fail("output.format", "expected a string");
      c.format = parse_format(o["format"].get<std::string>());
    }
  }
  return c;
}

JobConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

CoefficientSet build_coefficients(const JobConfig& config) {
  Lattice2D lat = Lattice2D::canonicalize(config.b1, config.b2);
  CoefficientSet cs(lat);
  const auto field = [](const std::vector<Term>& ts) {
    FourierField f;
    for (const Term& t : ts) f.add({t.m1, t.m2}, Complex(t.re, t.im));
    return f;
  };
  cs.V = field(config.V);
  cs.A.c1 = field(config.A1);
  cs.A.c2 = field(config.A2);
  cs.omega = field(config.omega);
  return certified(cs);
}

}  // namespace bandedge::cli
