#include <bandedge/bands.hpp>
#include <bandedge/discrete.hpp>
#include <bandedge/discriminant.hpp>
#include <bandedge/error.hpp>
#include <bandedge/fiber.hpp>
#include <bandedge/free_geometry.hpp>
#include <bandedge/identities.hpp>
#include <bandedge/linearization.hpp>

#include <cli/jobs.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "support/generators.hpp"

using namespace bandedge;
using bandedge::testing::Rng;

namespace {

struct Outcome {
  bool pass = false;
  std::vector<std::string> details;
};

class Log {
 public:
  explicit Log(Outcome& o) : o_(o) {}
  template <class... Args>
  void operator()(const char* fmt, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    o_.details.emplace_back(buf);
  }

 private:
  Outcome& o_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Lattice2D from_dual(Vec2 d1, Vec2 d2) {
  const auto [b1, b2] = dual_basis(d1, d2);
  return Lattice2D::canonicalize(b1, b2);
}

// 1. Free square lattice at N = 8.
Outcome free_exactness() {
  Outcome o;
  Log log(o);
  const auto t0 = std::chrono::steady_clock::now();
  const Lattice2D sq = Lattice2D::square();
  const CoefficientSet cs = CoefficientSet::free(sq);
  const PlaneWaveBasis basis(8);
  double dev = 0.0;
  for (const Vec2& k : {Vec2(0.0, 0.0), Vec2(kPi, 0.0), Vec2(0.3, -1.1)}) {
    const CMatrix H = assemble_fiber(cs, CVec2(k.x(), k.y()), basis).entries;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const Vec2 xi = sq.frequency(basis[i]) + k;
        const double expected = i == j ? xi.squaredNorm() : 0.0;
        dev = std::max(dev, std::abs(H(i, j) - expected));
      }
  }
  const RVector at0 = band_values(cs, Vec2(0, 0), basis, 5);
  const double e0[] = {0.0, 4 * kPi * kPi, 4 * kPi * kPi, 4 * kPi * kPi, 4 * kPi * kPi};
  for (int j = 0; j < 5; ++j) dev = std::max(dev, std::abs(at0(j) - e0[j]));
  const RVector atpi = band_values(cs, Vec2(kPi, 0), basis, 2);
  dev = std::max({dev, std::abs(atpi(0) - kPi * kPi), std::abs(atpi(1) - kPi * kPi)});
  const double t = seconds_since(t0);
  log("max abs deviation %.3e (tol 1e-10), lambda(0) = %.12g, %.12g; lambda(pi,0) = %.12g, %.12g", dev, at0(0),
      at0(1), atpi(0), atpi(1));
  log("runtime %.3f s (limit 1 s)", t);
  o.pass = dev <= 1e-10 && t < 1.0;
  return o;
}

// 2. Companion correspondence on 20 random single-harmonic sets.
Outcome companion_equivalence() {
  Outcome o;
  Log log(o);
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(20240501);
  const PlaneWaveBasis basis(6);
  double worst_c = 0.0, worst_e = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Lattice2D lat = testing::random_lattice(rng);
    const CoefficientSet cs = testing::single_harmonic_set(rng, lat);
    const Complex k2 = rng.complex(1.0);
    const Complex lambda = rng.complex(10.0);
    const CorrespondenceReport c = correspondence_check(cs, k2, lambda, basis);
    worst_c = std::max(worst_c, c.max_residual / c.scale);
    const EigenvectorRelation e = eigenvector_relation(cs, rng.vec2(kPi), basis, rng.integer(1, 3));
    worst_e = std::max(worst_e, e.residual / e.scale);
  }
  const double t = seconds_since(t0);
  log("max correspondence residual / scale %.3e (tol 1e-7)", worst_c);
  log("max eigenvector relation residual / scale %.3e (tol 1e-8)", worst_e);
  log("runtime %.2f s (limit 30 s)", t);
  o.pass = worst_c <= 1e-7 && worst_e <= 1e-8 && t < 30.0;
  return o;
}

// 3. Discriminant against closed forms and the derivative product.
Outcome discriminant_oracle() {
  Outcome o;
  Log log(o);
  Rng rng(77);
  const SpectrumWindow everything{-1e3, 1e3, -1e3, 1e3};
  double worst_quadratic = 0.0, worst = 0.0, worst_derivative = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Complex b = rng.complex(3.0), c = rng.complex(3.0);
    const Complex s = std::sqrt(b * b - 4.0 * c);
    const std::vector<Complex> roots{(-b + s) / 2.0, (-b - s) / 2.0};
    const Complex expected = b * b - 4.0 * c;
    const DiscriminantResult r = restricted_discriminant(roots, everything);
    worst_quadratic = std::max(worst_quadratic, std::abs(r.raw - expected) / std::abs(expected));
  }
  for (int n = 3; n <= 5; ++n)
    for (int trial = 0; trial < 200; ++trial) {
      const std::vector<Complex> roots = testing::random_roots(rng, n);
      Complex oracle = 1.0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) oracle *= (roots[i] - roots[j]) * (roots[i] - roots[j]);
      // Coefficients of the monic polynomial, then (-1)^(n(n-1)/2) prod p'(z_i) by Horner.
      std::vector<Complex> coef{1.0};
      for (const Complex& z : roots) {
        std::vector<Complex> next(coef.size() + 1, 0.0);
        for (std::size_t i = 0; i < coef.size(); ++i) {
          next[i] += coef[i];
          next[i + 1] -= z * coef[i];
        }
        coef = next;
      }
      Complex derivative_form = 1.0;
      for (const Complex& z : roots) {
        Complex dp = 0.0;
        for (int i = 0; i < n; ++i) dp = dp * z + double(n - i) * coef[i];
        derivative_form *= dp;
      }
      if ((n * (n - 1) / 2) % 2 == 1) derivative_form = -derivative_form;
      const DiscriminantResult r = restricted_discriminant(roots, everything);
      worst = std::max(worst, std::abs(r.raw - oracle) / std::abs(oracle));
      worst_derivative = std::max(worst_derivative, std::abs(r.raw - derivative_form) / std::abs(derivative_form));
    }
  log("quadratic b^2 - 4c: max relative error %.3e (tol 1e-10)", worst_quadratic);
  log("degrees 3..5 pairwise product: max relative error %.3e (tol 1e-10)", worst);
  log("degrees 3..5 derivative form from coefficients: max relative error %.3e (tol 1e-10)", worst_derivative);
  o.pass = worst_quadratic <= 1e-10 && worst <= 1e-10 && worst_derivative <= 1e-10;
  return o;
}

// Distance of k to the union of the lines k1 + k2 = (2p+1) pi and k1 - k2 = (2p+1) pi.
double line_distance(const Vec2& k) {
  auto d = [](double s) {
    const double r = std::remainder(s - kPi, kTwoPi);
    return std::abs(r) / std::sqrt(2.0);
  };
  return std::min(d(k.x() + k.y()), d(k.x() - k.y()));
}

// 4. Discrete chessboard model.
Outcome discrete_reproduction() {
  Outcome o;
  Log log(o);
  const auto t0 = std::chrono::steady_clock::now();
  const DiatomicModel model{0.0, 2.0};
  const BandEdges e = band_edges(model);
  const double s5 = std::sqrt(5.0);
  const double edge_err = std::max({std::abs(e.min_minus - (1 - s5)), std::abs(e.max_minus), std::abs(e.min_plus - 2),
                                    std::abs(e.max_plus - (1 + s5))});
  log("edges [%.15g, %.15g] U [%.15g, %.15g], max error %.3e (tol 1e-12)", e.min_minus, e.max_minus, e.min_plus,
      e.max_plus, edge_err);

  const BandGrid grid = grid_adapter(model, 400, default_workers());
  double lo_m = 1e300, hi_m = -1e300, lo_p = 1e300, hi_p = -1e300;
  for (int i = 0; i < grid.n1; ++i)
    for (int j = 0; j < grid.n2; ++j) {
      lo_m = std::min(lo_m, grid.value(i, j, 1));
      hi_m = std::max(hi_m, grid.value(i, j, 1));
      lo_p = std::min(lo_p, grid.value(i, j, 2));
      hi_p = std::max(hi_p, grid.value(i, j, 2));
    }
  const double grid_err = std::max({std::abs(lo_m - e.min_minus), std::abs(hi_m - e.max_minus),
                                    std::abs(lo_p - e.min_plus), std::abs(hi_p - e.max_plus)});
  log("400 x 400 grid extrema max error %.3e (tol 1e-12)", grid_err);

  const double eps = 1e-9;
  const std::vector<LevelCluster> clusters = level_set(grid, 1, 0.0, eps);
  const LevelGeometry geometry = classify(grid, clusters);
  const ExtremumReport rep = locate_extrema(grid, 1, ExtremumKind::Max, eps, discrete_evaluator(model));
  double off_line = 0.0;
  std::size_t nodes = 0;
  for (const LevelCluster& c : clusters)
    for (const auto& [i1, i2] : c.nodes) {
      off_line = std::max(off_line, line_distance(grid.k_at(i1, i2)));
      ++nodes;
    }
  // Every grid node on the lines must be in the level set.
  std::size_t on_lines = 0;
  for (int i = 0; i < grid.n1; ++i)
    for (int j = 0; j < grid.n2; ++j) on_lines += line_distance(grid.k_at(i, j)) < 1e-9;
  log("level set at 0: %zu cluster(s), %zu nodes (%zu grid nodes on the lines), max distance to k1 +- k2 = (2p+1) pi "
      "%.3e; classify = %s, locate_extrema = %s",
      clusters.size(), nodes, on_lines, off_line, to_string(geometry), to_string(rep.classification));
  const bool level_ok = geometry == LevelGeometry::Extended && rep.classification == LevelGeometry::Extended &&
                        off_line <= 1e-9 && nodes == on_lines && nodes > 0;

  double torus_err = 0.0;
  for (int L : {2, 4, 8, 16}) {
    const TorusSpectrum s = torus_spectrum(model, L);
    torus_err = std::max(torus_err, s.max_difference);
    log("torus L = %d: %zu eigenvalues, max route difference %.3e", L, s.dense.size(), s.max_difference);
  }
  const double t = seconds_since(t0);
  log("runtime %.2f s (limit 20 s)", t);
  o.pass = edge_err <= 1e-12 && grid_err <= 1e-12 && level_ok && torus_err <= 1e-10 && t < 20.0;
  return o;
}

// 5. Extremum pipeline and the degenerate companion eigenvalue.
Outcome extremum_pipeline() {
  Outcome o;
  Log log(o);
  const auto t0 = std::chrono::steady_clock::now();
  CoefficientSet cs(Lattice2D::square());
  cs.V = FourierField::cosine({1, 0}, 1.0);
  cs = certified(cs);
  const PlaneWaveBasis basis(5);
  std::vector<ExtremumReport> reports;
  for (int n : {32, 64}) {
    const BandGrid grid = scan(cs, n, n, basis, 1);
    reports.push_back(locate_extrema(grid, 1, ExtremumKind::Min, 1e-3, cs, basis));
    const ExtremumReport& r = reports.back();
    double dmax = 0.0;
    for (double d : r.diameters) dmax = std::max(dmax, d);
    log("%d^2: value %.15g at k = (%.3e, %.3e), %s, %zu cluster(s), max diameter %.6g", n, r.value,
        r.points.empty() ? 0.0 : r.points[0].k.x(), r.points.empty() ? 0.0 : r.points[0].k.y(),
        to_string(r.classification), r.diameters.size(), dmax);
  }
  auto max_diam = [](const ExtremumReport& r) {
    double d = 0.0;
    for (double v : r.diameters) d = std::max(d, v);
    return d;
  };
  const double ratio = max_diam(reports[0]) / max_diam(reports[1]);
  const bool isolated = reports[0].classification == LevelGeometry::Isolated &&
                        reports[1].classification == LevelGeometry::Isolated;
  log("diameter ratio %.3f (need >= 1.8)", ratio);

  bool flagged = false;
  if (!reports[1].points.empty()) {
    const ExtremumPoint& p = reports[1].points[0];
    const std::vector<double> k2{p.k.y()};
    const ScanPolicy policy;
    const DiscriminantScan s = degeneracy_scan(cs, Complex(reports[1].value, 0.0), k2, policy, basis);
    const ScanEntry& e = s.entries[0];
    const double tol = policy.discriminant.tol_pair * (1.0 + std::abs(e.pair_midpoint));
    flagged = e.ok && e.flag && e.min_pair <= tol;
    log("degeneracy_scan at (lambda*, k2* = %.3e): flag %d, min pair %.3e (tol_pair bound %.3e), |Delta| %.3e", p.k.y(),
        int(e.flag), e.min_pair, tol, e.abs);
  }
  const double t = seconds_since(t0);
  log("runtime %.1f s (limit 120 s)", t);
  o.pass = isolated && ratio >= 1.8 && flagged && t < 120.0;
  return o;
}

// 6. Effective masses.
Outcome effective_masses() {
  Outcome o;
  Log log(o);
  const CoefficientSet free = CoefficientSet::free(Lattice2D::square());
  const EffectiveMass m = effective_mass(free, 1, ExtremumKind::Min, Vec2::Zero(), PlaneWaveBasis(4), 1e-3);
  const double free_err = (m.inverse_mass - 2.0 * Mat2::Identity()).cwiseAbs().maxCoeff();
  log("free inverse mass [[%.12g, %.3g], [%.3g, %.12g]], max error vs 2I %.3e (tol 1e-9)", m.inverse_mass(0, 0),
      m.inverse_mass(0, 1), m.inverse_mass(1, 0), m.inverse_mass(1, 1), free_err);

  // lambda_+ = 1 + sqrt(1 + c^2), c = cos k1 + cos k2: at k = 0 the Hessian is -(2 / sqrt(5)) I.
  const DiatomicModel model{0.0, 2.0};
  const EffectiveMass d = effective_mass(discrete_evaluator(model), 2, ExtremumKind::Max, Vec2::Zero(), 1e-3);
  Mat2 symbolic = Mat2::Zero();
  const double c = 2.0, root = std::sqrt(1.0 + c * c);
  symbolic(0, 0) = symbolic(1, 1) = c * (-1.0) / root;
  const double disc_err = (d.hessian - symbolic).cwiseAbs().maxCoeff();
  log("discrete Hessian of lambda_+ at 0: [[%.12g, %.3g], [%.3g, %.12g]], symbolic %.12g, max error %.3e (tol 1e-6)",
      d.hessian(0, 0), d.hessian(0, 1), d.hessian(1, 0), d.hessian(1, 1), symbolic(0, 0), disc_err);
  o.pass = free_err <= 1e-9 && disc_err <= 1e-6;
  return o;
}

// 7. Zero set of the free symbol and the brick wall.
Outcome free_geometry() {
  Outcome o;
  Log log(o);
  const Lattice2D lat = from_dual(Vec2(0.75, 0.0), Vec2(0.075, 1.0));
  const std::vector<SigmaPoint> pts = sigma_set(lat, 0, {-15.0, 15.0, -10.0, 10.0});
  std::map<long, std::vector<double>> lines;
  double level_err = 0.0, zero_err = 0.0;
  const Complex k2 = sigma_k2(lat, 0, 0);
  for (const SigmaPoint& p : pts) {
    const double level = (p.k1.imag() - kPi / 2) / kPi;
    level_err = std::max(level_err, std::abs(level - std::round(level)));
    lines[std::lround(level)].push_back(p.k1.real());
    zero_err = std::max(zero_err, std::abs(free_symbol(lat, p.m, CVec2(p.k1, k2)).h));
  }
  double spacing_err = 0.0;
  for (auto& [level, re] : lines) {
    std::sort(re.begin(), re.end());
    for (std::size_t i = 1; i < re.size(); ++i) spacing_err = std::max(spacing_err, std::abs(re[i] - re[i - 1] - kTwoPi * 0.75));
  }
  log("Sigma_0: %zu points on %zu lines, Im offset error %.3e, spacing error vs 2 pi alpha %.3e, max |h_m| %.3e",
      pts.size(), lines.size(), level_err, spacing_err, zero_err);
  const bool sigma_ok = !pts.empty() && lines.size() >= 2 && level_err <= 1e-12 && spacing_err <= 1e-9 && zero_err <= 1e-9;

  const BrickWallReport w = brick_wall_check(lat, 0, 12);
  const double dist_err = std::abs(w.measured_distance - kPi / 2);
  log("dist(G_0, Sigma_0) = %.15g, error vs pi/2 %.3e (tol 1e-9)", w.measured_distance, dist_err);
  log("|l| fit: slope %.4g, intercept %.4g, R^2 %.6f (need >= 0.99)", w.slope, w.intercept, w.r_squared);

  Rng rng(9090);
  int passed = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 100; ++trial) {
    const Lattice2D l = testing::random_lattice(rng);
    const CVec2 k(Complex(rng.uniform(-5, 5), kTwoPi * rng.integer(-3, 3)), rng.uniform(-7, 7));
    const ResolventBoundCheck r = free_resolvent_bound_check(l, k, PlaneWaveBasis(4));
    passed += r.pass;
    worst_margin = std::min(worst_margin, r.min_abs_h - r.bound);
  }
  log("resolvent lower bound: %d/100 samples, smallest margin min|h| - |l1| delta = %.3e", passed, worst_margin);
  o.pass = sigma_ok && dist_err <= 1e-9 && w.r_squared >= 0.99 && passed == 100;
  return o;
}

bool non_increasing(const std::vector<double>& v, double floor) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1] && v[i] > floor) return false;
  return true;
}

// 8. Pauli factorisation, conjugation identity and gauge invariance.
Outcome identity_suite() {
  Outcome o;
  Log log(o);
  const Lattice2D sq = Lattice2D::square();

  const VectorField A = testing::transverse_harmonic(sq, {0, 1}, 0.1);
  const CVec2 kp(Complex(0.3, 1.0), 0.2);
  std::vector<double> pauli;
  for (int N : {6, 10, 14}) pauli.push_back(pauli_residual(sq, A, kp, PlaneWaveBasis(N)).residual);
  const bool pauli_ok = pauli[1] < pauli[0] && pauli[2] < pauli[1];
  log("Pauli residual N = 6, 10, 14: %.3e, %.3e, %.3e (strictly decreasing)", pauli[0], pauli[1], pauli[2]);

  CoefficientSet rough(sq);
  rough.V = FourierField::cosine({1, 0}, 1.0);
  rough.omega = FourierField::constant(1.0) + FourierField::cosine({0, 1}, 0.7);
  rough = certified(rough);
  std::vector<double> conj;
  for (int N : {8, 12, 16})
    conj.push_back(conjugation_eigenvalue_mismatch(rough, Vec2(0.3, 0.2), PlaneWaveBasis(N), ConjugationSide::Sandwich));
  const bool conj_ok = conj[1] < conj[0] && conj[2] < conj[1];
  log("conjugation mismatch N = 8, 12, 16: %.3e, %.3e, %.3e (strictly decreasing)", conj[0], conj[1], conj[2]);

  // A_raw = transverse harmonic + grad(a sin(2 pi x1)) + constant mean.
  const double a = 1.0;
  VectorField raw = testing::transverse_harmonic(sq, {0, 1}, 0.3);
  raw.c1 += FourierField::cosine({1, 0}, a * kTwoPi);
  raw.c1 += FourierField::constant(0.15);
  raw.c2 += FourierField::constant(-0.1);
  const GaugeReport g = gauge_normalize(sq, raw);
  CoefficientSet with_raw(sq);
  with_raw.V = FourierField::cosine({1, 0}, 1.0);
  with_raw.A = raw;
  CoefficientSet normalized(sq);
  normalized.V = with_raw.V;
  normalized.A = g.A_normalized;
  normalized = certified(normalized);
  const Vec2 k(0.4, 0.25);
  std::vector<double> gauge;
  for (int N : {4, 6, 8, 12}) {
    const PlaneWaveBasis b(N);
    gauge.push_back(std::abs(band_values(with_raw, k, b, 1)(0) - band_values(normalized, k - g.k_shift, b, 1)(0)));
  }
  const double floor = 1e-10;
  const bool gauge_ok = gauge.back() <= 1e-4 && non_increasing(gauge, floor);
  log("gauge band-1 difference N = 4, 6, 8, 12: %.3e, %.3e, %.3e, %.3e (<= 1e-4 at N = 12, non-increasing above %.0e)",
      gauge[0], gauge[1], gauge[2], gauge[3], floor);
  o.pass = pauli_ok && conj_ok && gauge_ok;
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 9. Selfcheck and byte-identical repeated runs.
Outcome determinism() {
  Outcome o;
  Log log(o);
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "bandedge_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  cli::JobConfig c;
  c.job = cli::JobKind::SelfCheck;
  bool all_pass = true;
  std::vector<std::string> outputs;
  for (unsigned workers : {1u, 1u, 3u}) {
    const cli::JobResult r = cli::run(c, workers);
    all_pass = all_pass && r.exit_code == 0;
    const std::string stem = (dir / ("run" + std::to_string(outputs.size()))).string();
    cli::emit(r, cli::Format::Csv, stem + ".csv");
    cli::emit(r, cli::Format::Json, stem + ".json");
    outputs.push_back(slurp(stem + ".csv") + slurp(stem + ".json"));
    if (outputs.size() == 1)
      for (const std::string& line : r.summary)
        if (line.rfind("FAIL", 0) == 0 || line.find("checks passed") != std::string::npos) log("%s", line.c_str());
  }
  const bool identical = outputs[0] == outputs[1] && outputs[1] == outputs[2];
  log("repeated runs (workers 1, 1, 3) byte-identical: %s", identical ? "yes" : "no");

  cli::JobConfig d;
  d.job = cli::JobKind::Discrete;
  cli::emit(cli::run(d, 1), cli::Format::Json, (dir / "d1.json").string());
  cli::emit(cli::run(d, 3), cli::Format::Json, (dir / "d2.json").string());
  const bool discrete_identical = slurp(dir / "d1.json") == slurp(dir / "d2.json");
  log("discrete job repeated runs byte-identical: %s", discrete_identical ? "yes" : "no");
  o.pass = all_pass && identical && discrete_identical;
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"free-operator exactness", free_exactness},
      {"companion equivalence", companion_equivalence},
      {"discriminant oracle", discriminant_oracle},
      {"chessboard model reproduction", discrete_reproduction},
      {"extremum pipeline coherence", extremum_pipeline},
      {"effective mass", effective_masses},
      {"free-symbol geometry", free_geometry},
      {"identity suite", identity_suite},
      {"determinism and selfcheck", determinism},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.details.push_back(std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::printf("%s %d %s\n", o.pass ? "PASS" : "FAIL", index, name);
    for (const std::string& d : o.details) std::printf("       %s\n", d.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
