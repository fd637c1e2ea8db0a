#include "cli/jobs.hpp"

#include <bandedge/error.hpp>
#include <bandedge/parallel.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli/selfcheck.hpp"

namespace bandedge::cli {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string describe_lattice(const CoefficientSet& cs) {
  std::ostringstream s;
  s << "lattice alpha = " << fmt(cs.lattice.alpha()) << ", beta = " << fmt(cs.lattice.beta() + 0.0)
    << " (canonical frame; hbar = 1)";
  return s.str();
}

Json lattice_json(const CoefficientSet& cs) {
  return Json{{"alpha", number(cs.lattice.alpha())},
              {"beta", number(cs.lattice.beta() + 0.0)},
              {"m_g", number(cs.m_g)}};
}

JobResult bands_job(const JobConfig& c, unsigned workers) {
  const CoefficientSet cs = build_coefficients(c);
  const PlaneWaveBasis basis(c.truncation);
  const BandGrid grid = scan(cs, c.n1, c.n2, basis, c.band_count, workers);

  JobResult r;
  Table t{"bands", {"bandedge bands: lowest eigenvalues of H_N(k) on k(t) = t1 g1 + t2 g2", describe_lattice(cs),
                    "N = " + std::to_string(c.truncation) + ", grid " + std::to_string(c.n1) + " x " +
                        std::to_string(c.n2)},
          {"t1", "t2", "k1", "k2"}, {}};
  for (int j = 1; j <= c.band_count; ++j) t.columns.push_back("lambda_" + std::to_string(j));
  for (int i1 = 0; i1 < grid.n1; ++i1)
    for (int i2 = 0; i2 < grid.n2; ++i2) {
      const Vec2 tt = grid.t_at(i1, i2), k = grid.k_at(i1, i2);
      std::vector<Cell> row{tt.x(), tt.y(), k.x(), k.y()};
      for (int j = 1; j <= c.band_count; ++j) row.emplace_back(grid.value(i1, i2, j));
      t.rows.push_back(std::move(row));
    }
  r.tables.push_back(std::move(t));
  r.document = Json{{"job", "bands"}, {"lattice", lattice_json(cs)}, {"grid", to_json(grid)}};
  r.summary.push_back("bands: " + std::to_string(grid.n1 * grid.n2) + " nodes, " + std::to_string(c.band_count) +
                      " bands, N = " + std::to_string(c.truncation));
  return r;
}

JobResult extrema_job(const JobConfig& c, unsigned workers) {
  const CoefficientSet cs = build_coefficients(c);
  const PlaneWaveBasis basis(c.truncation);
  const BandGrid grid = scan(cs, c.n1, c.n2, basis, std::max(c.band_count, c.band), workers);
  const ExtremumReport rep = locate_extrema(grid, c.band, c.kind, c.eps, cs, basis, c.extremum);

  JobResult r;
  Table t{"extrema",
          {"bandedge extrema: refined extremal points and inverse effective masses", describe_lattice(cs),
           "band = " + std::to_string(rep.band) + ", kind = " + to_string(rep.kind) + ", value = " + fmt(rep.value) +
               ", grid_value = " + fmt(rep.grid_value) + ", eps = " + fmt(rep.eps),
           std::string("classification = ") + to_string(rep.classification)},
          {"point", "k1", "k2", "t1", "t2", "value", "gradient_norm", "iterations", "minv_11", "minv_12", "minv_22",
           "richardson_error", "degenerate"},
          {}};
  std::string diam = "cluster diameters =";
  for (double d : rep.diameters) diam += " " + fmt(d);
  t.comments.push_back(diam);
  for (std::size_t i = 0; i < rep.points.size(); ++i) {
    const ExtremumPoint& p = rep.points[i];
    std::vector<Cell> row{std::int64_t(i), p.k.x(), p.k.y(), p.t.x(), p.t.y(), p.value, p.gradient_norm,
                          std::int64_t(p.iterations)};
    if (i < rep.masses.size()) {
      const EffectiveMass& m = rep.masses[i];
      row.insert(row.end(), {Cell(m.inverse_mass(0, 0)), Cell(m.inverse_mass(0, 1)), Cell(m.inverse_mass(1, 1)),
                             Cell(m.richardson_error), Cell(std::int64_t(m.degenerate))});
    } else {
      row.insert(row.end(), {Cell(std::string()), Cell(std::string()), Cell(std::string()), Cell(std::string()),
                             Cell(std::string())});
    }
    t.rows.push_back(std::move(row));
  }
  r.tables.push_back(std::move(t));
  r.document = Json{{"job", "extrema"}, {"lattice", lattice_json(cs)}, {"report", to_json(rep)}};
  r.summary.push_back(std::string("extrema: band ") + std::to_string(rep.band) + " " + to_string(rep.kind) + " = " +
                      fmt(rep.value) + ", " + to_string(rep.classification) + ", " +
                      std::to_string(rep.points.size()) + " point(s)");
  return r;
}

JobResult t1scan_job(const JobConfig& c, unsigned workers) {
  const CoefficientSet cs = build_coefficients(c);
  const PlaneWaveBasis basis(c.truncation);
  std::vector<T1Spectrum> spectra(c.k2.size());
  std::vector<double> conditions(c.k2.size());
  parallel_for(c.k2.size(), workers, [&](std::size_t i) {
    try {
      const LinearizedOperator T = assemble_t1(cs, c.k2[i], c.lambda, basis);
      conditions[i] = T.mass_condition;
      spectra[i] = t1_spectrum(T, false, c.scan.tol_cluster);
    } catch (const Error& e) {
      throw Error(e.code(), e.message() + " at k2 = " + fmt(c.k2[i]));
    }
  });

  JobResult r;
  Table t{"t1",
          {"bandedge t1scan: eigenvalues of the companion matrix T1(k2, lambda), sorted by (Re, Im)",
           describe_lattice(cs),
           "lambda = (" + fmt(c.lambda.real()) + ", " + fmt(c.lambda.imag()) + "), N = " + std::to_string(c.truncation)},
          {"k2", "index", "re", "im", "multiplicity"},
          {}};
  Json list = Json::array();
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    std::vector<int> mult(spectra[i].eigenvalues.size(), 1);
    for (const RootCluster& cl : spectra[i].clusters)
      for (std::size_t m : cl.members) mult[m] = cl.multiplicity();
    Json eig = Json::array(), mj = Json::array();
    for (std::size_t e = 0; e < spectra[i].eigenvalues.size(); ++e) {
      const Complex z = spectra[i].eigenvalues[e];
      t.rows.push_back({c.k2[i], std::int64_t(e), z.real(), z.imag(), std::int64_t(mult[e])});
      eig.push_back(complex_json(z));
      mj.push_back(mult[e]);
    }
    list.push_back(Json{{"k2", number(c.k2[i])},
                        {"mass_condition", number(conditions[i])},
                        {"eigenvalues", eig},
                        {"multiplicities", mj}});
  }
  r.tables.push_back(std::move(t));
  r.document = Json{{"job", "t1scan"}, {"lattice", lattice_json(cs)}, {"lambda", complex_json(c.lambda)},
                    {"spectra", list}};
  r.summary.push_back("t1scan: " + std::to_string(c.k2.size()) + " k2 value(s), " +
                      std::to_string(2 * basis.size()) + " eigenvalues each");
  return r;
}

JobResult discriminant_job(const JobConfig& c, unsigned workers) {
  const CoefficientSet cs = build_coefficients(c);
  const PlaneWaveBasis basis(c.truncation);
  const DiscriminantScan s = degeneracy_scan(cs, c.lambda, c.k2, c.scan, basis, workers);

  JobResult r;
  Table t{"discriminant",
          {"bandedge discriminant: restricted discriminant of T1(k2, lambda) per k2", describe_lattice(cs),
           "lambda = (" + fmt(c.lambda.real()) + ", " + fmt(c.lambda.imag()) + "), N = " +
               std::to_string(c.truncation) + ", tol_pair = " + fmt(c.scan.discriminant.tol_pair) +
               ", tol_disc = " + fmt(c.scan.tol_disc) + ", tol_real = " + fmt(c.scan.tol_real)},
          {"k2", "re", "im", "abs", "flag", "log10_abs", "count", "min_pair", "ok", "error"},
          {}};
  std::size_t flagged = 0, failed = 0;
  for (const ScanEntry& e : s.entries) {
    flagged += e.flag;
    failed += !e.ok;
    t.rows.push_back({e.k2, e.delta.real(), e.delta.imag(), e.abs, std::int64_t(e.flag), e.log10_abs,
                      std::int64_t(e.count), e.min_pair, std::int64_t(e.ok), e.error});
  }
  r.tables.push_back(std::move(t));
  r.document = Json{{"job", "discriminant"}, {"lattice", lattice_json(cs)}, {"scan", to_json(s)}};
  r.summary.push_back("discriminant: " + std::to_string(s.entries.size()) + " k2 value(s), " +
                      std::to_string(flagged) + " flagged, " + std::to_string(failed) + " rejected windows");
  return r;
}

JobResult discrete_job(const JobConfig& c, unsigned workers) {
  const DiscreteJob& d = c.discrete;
  const DiatomicModel& model = d.model;
  const BandEdges e = band_edges(model);
  JobResult r;
  const std::string model_line = "v0 = " + fmt(model.v0) + ", v1 = " + fmt(model.v1);

  r.tables.push_back(Table{"edges",
                           {"bandedge discrete: chessboard model, fiber [[v0, c], [c, v1]], c = cos k1 + cos k2",
                            model_line,
                            "min lambda_- = (v0+v1)/2 - sqrt(((v0-v1)/2)^2 + 4), max lambda_- = min(v0, v1), "
                            "min lambda_+ = max(v0, v1), max lambda_+ = (v0+v1)/2 + sqrt(((v0-v1)/2)^2 + 4)"},
                           {"min_minus", "max_minus", "min_plus", "max_plus", "gap"},
                           {{e.min_minus, e.max_minus, e.min_plus, e.max_plus, std::int64_t(e.has_gap())}}});

  // Band surface over [-pi, pi]^2.
  Table surface{"surface", {"band surface: lambda_-(k) and lambda_+(k) over [-pi, pi]^2", model_line},
                {"k1", "k2", "lambda_minus", "lambda_plus"}, {}};
  const int n = d.surface_resolution;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double k1 = n == 1 ? 0.0 : -kPi + kTwoPi * i / (n - 1);
      const double k2 = n == 1 ? 0.0 : -kPi + kTwoPi * j / (n - 1);
      const BandPair p = lambda_pm(model, Vec2(k1, k2));
      surface.rows.push_back({k1, k2, p.minus, p.plus});
    }
  r.tables.push_back(std::move(surface));

  const BandGrid grid = grid_adapter(model, d.adapter_resolution, workers);
  const BandEvaluator eval = discrete_evaluator(model);

  Table level{"levelset",
              {"gap-edge level sets on the sheared grid k(t) = t1 (pi, pi) + t2 (pi, -pi)", model_line,
               "eps = " + fmt(d.level_eps)},
              {"edge", "cluster", "t1", "t2", "k1", "k2"},
              {}};
  Json level_json = Json::array();
  const std::pair<const char*, std::pair<int, double>> edges_of_gap[] = {{"max_lambda_minus", {1, e.max_minus}},
                                                                          {"min_lambda_plus", {2, e.min_plus}}};
  for (const auto& [label, edge] : edges_of_gap) {
    const std::vector<LevelCluster> clusters = level_set(grid, edge.first, edge.second, d.level_eps);
    const LevelLines lines = level_lines(model, edge.second);
    level.comments.push_back(std::string(label) + ": " + lines.description);
    Json cj = Json::array();
    for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
      for (const auto& [i1, i2] : clusters[ci].nodes) {
        const Vec2 tt = grid.t_at(i1, i2), k = grid.k_at(i1, i2);
        level.rows.push_back({std::string(label), std::int64_t(ci), tt.x(), tt.y(), k.x(), k.y()});
      }
      cj.push_back(Json{{"nodes", clusters[ci].nodes.size()},
                        {"diameter", number(clusters[ci].diameter)},
                        {"wraps", clusters[ci].wraps}});
    }
    level_json.push_back(Json{{"edge", label}, {"value", number(edge.second)}, {"description", lines.description},
                              {"clusters", cj}});
  }
  r.tables.push_back(std::move(level));

  Table extrema{"extrema", {"extrema through the grid adapter", model_line},
                {"band", "kind", "value", "expected", "classification", "clusters", "max_diameter"}, {}};
  Json extrema_json = Json::array();
  const struct {
    int band;
    ExtremumKind kind;
    double expected;
  } cases[] = {{1, ExtremumKind::Min, e.min_minus},
               {1, ExtremumKind::Max, e.max_minus},
               {2, ExtremumKind::Min, e.min_plus},
               {2, ExtremumKind::Max, e.max_plus}};
  for (const auto& cs : cases) {
    const ExtremumReport rep = locate_extrema(grid, cs.band, cs.kind, d.level_eps, eval, c.extremum);
    double dmax = 0.0;
    for (double v : rep.diameters) dmax = std::max(dmax, v);
    extrema.rows.push_back({std::int64_t(cs.band), std::string(to_string(cs.kind)), rep.value, cs.expected,
                            std::string(to_string(rep.classification)), std::int64_t(rep.diameters.size()), dmax});
    extrema_json.push_back(to_json(rep));
  }
  r.tables.push_back(std::move(extrema));

  // Hessians at k = 0, where c = 2 and dc = 0: d2 lambda_pm / dk_i^2 = -+ 2 / sqrt(((v0-v1)/2)^2 + 4).
  Table mass{"mass", {"Hessian at k = 0 against the closed form", model_line},
             {"band", "kind", "h11", "h12", "h22", "analytic_diagonal", "richardson_error"}, {}};
  Json mass_json = Json::array();
  const double root = std::hypot(0.5 * (model.v0 - model.v1), 2.0);
  for (const auto& [band, kind, sign] : {std::tuple{1, ExtremumKind::Min, 1.0}, std::tuple{2, ExtremumKind::Max, -1.0}}) {
    const EffectiveMass m = effective_mass(eval, band, kind, Vec2::Zero(), c.extremum.mass_step, c.extremum.hessian_tol);
    const double analytic = sign * 2.0 / root;
    mass.rows.push_back({std::int64_t(band), std::string(to_string(kind)), m.hessian(0, 0), m.hessian(0, 1),
                         m.hessian(1, 1), analytic, m.richardson_error});
    mass_json.push_back(Json{{"band", band},
                             {"kind", to_string(kind)},
                             {"hessian", Json::array({Json::array({number(m.hessian(0, 0)), number(m.hessian(0, 1))}),
                                                      Json::array({number(m.hessian(1, 0)), number(m.hessian(1, 1))})})},
                             {"analytic_diagonal", number(analytic)},
                             {"richardson_error", number(m.richardson_error)}});
  }
  r.tables.push_back(std::move(mass));

  Table torus{"torus", {"finite torus: Floquet fibers against dense diagonalisation", model_line},
              {"L", "eigenvalues", "max_difference"}, {}};
  Json torus_json = Json::array();
  for (int L : d.torus_sizes) {
    const TorusSpectrum s = torus_spectrum(model, L);
    torus.rows.push_back({std::int64_t(L), std::int64_t(s.dense.size()), s.max_difference});
    torus_json.push_back(Json{{"L", L}, {"eigenvalues", s.dense.size()}, {"max_difference", number(s.max_difference)}});
  }
  r.tables.push_back(std::move(torus));

  r.document = Json{{"job", "discrete"},
                    {"model", Json{{"v0", number(model.v0)}, {"v1", number(model.v1)}}},
                    {"edges", Json{{"min_minus", number(e.min_minus)},
                                   {"max_minus", number(e.max_minus)},
                                   {"min_plus", number(e.min_plus)},
                                   {"max_plus", number(e.max_plus)},
                                   {"gap", e.has_gap()}}},
                    {"level_sets", level_json},
                    {"extrema", extrema_json},
                    {"mass", mass_json},
                    {"torus", torus_json}};
  r.summary.push_back("discrete: edges " + fmt(e.min_minus) + ", " + fmt(e.max_minus) + ", " + fmt(e.min_plus) +
                      ", " + fmt(e.max_plus));
  return r;
}

JobResult selfcheck_job(unsigned workers) {
  const std::vector<SelfCheckEntry> entries = run_selfcheck(workers);
  JobResult r;
  Table t{"selfcheck", {"bandedge selfcheck: module invariants at default tolerances"},
          {"module", "check", "pass", "residual", "tolerance"}, {}};
  Json checks = Json::array();
  std::size_t failed = 0;
  for (const SelfCheckEntry& e : entries) {
    failed += !e.pass;
    t.rows.push_back({e.module, e.name, std::int64_t(e.pass), e.residual, e.tolerance});
    checks.push_back(Json{{"module", e.module},
                          {"check", e.name},
                          {"pass", e.pass},
                          {"residual", number(e.residual)},
                          {"tolerance", number(e.tolerance)}});
    char line[256];
    std::snprintf(line, sizeof line, "%-4s %-14s %-48s %.3e (tol %.1e)", e.pass ? "PASS" : "FAIL", e.module.c_str(),
                  e.name.c_str(), e.residual, e.tolerance);
    r.summary.push_back(line);
  }
  r.tables.push_back(std::move(t));
  r.document = Json{{"job", "selfcheck"}, {"passed", failed == 0}, {"checks", checks}};
  r.summary.push_back(std::to_string(entries.size() - failed) + "/" + std::to_string(entries.size()) +
                      " checks passed");
  r.exit_code = failed == 0 ? 0 : 4;
  return r;
}

void write_table(std::ostream& out, const Table& t) {
  for (const std::string& c : t.comments) out << "# " << c << "\n";
  out << "# ";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
    out << "\n";
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IOFailure, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error(ErrorCode::IOFailure, "write to '" + path + "' failed");
}

}  // namespace

std::string format_cell(const Cell& cell) {
  if (const double* d = std::get_if<double>(&cell)) {
    if (std::isnan(*d)) return "nan";
    if (std::isinf(*d)) return *d > 0 ? "inf" : "-inf";
    return fmt(*d);
  }
  if (const std::int64_t* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  const std::string& s = std::get<std::string>(cell);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

JobResult run(const JobConfig& config, unsigned workers) {
  JobResult r;
  switch (config.job) {
    case JobKind::Bands: r = bands_job(config, workers); break;
    case JobKind::Extrema: r = extrema_job(config, workers); break;
    case JobKind::T1Scan: r = t1scan_job(config, workers); break;
    case JobKind::Discriminant: r = discriminant_job(config, workers); break;
    case JobKind::Discrete: r = discrete_job(config, workers); break;
    case JobKind::SelfCheck: r = selfcheck_job(workers); break;
  }
  r.job = config.job;
  return r;
}

std::vector<std::string> emit(const JobResult& result, Format format, const std::string& path) {
  std::vector<std::string> written;
  if (format == Format::Json) {
    std::ostringstream s;
    write_json(s, result.document);
    if (path.empty()) {
      std::cout << s.str();
    } else {
      write_file(path, s.str());
      written.push_back(path);
    }
    return written;
  }
  if (path.empty()) {
    for (std::size_t i = 0; i < result.tables.size(); ++i) {
      if (i) std::cout << "\n";
      write_table(std::cout, result.tables[i]);
    }
    return written;
  }
  const std::filesystem::path primary(path);
  const std::filesystem::path stem = primary.parent_path() / primary.stem();
  for (std::size_t i = 0; i < result.tables.size(); ++i) {
    const std::string target = i == 0 ? path : stem.string() + "." + result.tables[i].name + ".csv";
    std::ostringstream s;
    write_table(s, result.tables[i]);
    write_file(target, s.str());
    written.push_back(target);
  }
  return written;
}

}  // namespace bandedge::cli
