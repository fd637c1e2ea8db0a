#include "bandedge/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bandedge/error.hpp"

namespace bandedge {

namespace {

constexpr double kRealTol = 1e-12;
constexpr double kDivTol = 1e-10;

// Half the longest diagonal of a grid cell: every point of the cell is within
// this distance of a grid node.
double grid_covering_radius(const Lattice2D& lat, int n) {
  const Vec2 h1 = lat.b1() / n;
  const Vec2 h2 = lat.b2() / n;
  return 0.5 * std::max((h1 + h2).norm(), (h1 - h2).norm());
}

}  // namespace

CoefficientSet CoefficientSet::free(const Lattice2D& lat) {
  CoefficientSet cs(lat);
  cs.m_g = 1.0;
  return cs;
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

FourierField curl(const Lattice2D& lat, const VectorField& A) {
  return partial(lat, A.c2, 0) - partial(lat, A.c1, 1);
}

FourierField divergence(const Lattice2D& lat, const VectorField& A) {
  return partial(lat, A.c1, 0) + partial(lat, A.c2, 1);
}

ValidationReport validate(const CoefficientSet& cs) {
  const Lattice2D& lat = cs.lattice;
  ValidationReport report;
  auto add = [&report](std::string name, double residual, double tol) {
    report.checks.push_back({std::move(name), residual <= tol, residual});
  };

  add("V real-valued", cs.V.realness_defect(), kRealTol);
  add("A real-valued", std::max(cs.A.c1.realness_defect(), cs.A.c2.realness_defect()), kRealTol);
  add("omega real-valued", cs.omega.realness_defect(), kRealTol);

  const double mean = std::hypot(std::abs(cs.A.c1.at({0, 0})), std::abs(cs.A.c2.at({0, 0})));
  add("A zero mean", mean, kRealTol);

  double div = 0.0;
  const FourierField div_A = divergence(lat, cs.A);
  for (const auto& [m, c] : div_A.terms()) div = std::max(div, std::abs(c));
  add("A divergence-free", div, kDivTol);

  const FourierField w2 = cs.omega_squared();
  const int n = std::max(256, oversampled_grid_size(w2.support_radius()));
  const SampledGrid grid = sample(w2, n);
  double grid_min = std::numeric_limits<double>::infinity();
  for (const Complex& v : grid.values) grid_min = std::min(grid_min, v.real());

  double lipschitz = 0.0;
  for (const auto& [m, c] : w2.terms()) lipschitz += lat.frequency(m).norm() * std::abs(c);
  const double margin = lipschitz * grid_covering_radius(lat, n);

  report.omega2_grid_min = grid_min;
  report.safety_margin = margin;
  report.m_g = grid_min - margin;
  report.checks.push_back({"omega^2 >= m_g > 0", report.m_g > 0.0, report.m_g});
  return report;
}

CoefficientSet certified(CoefficientSet cs) {
  const ValidationReport report = validate(cs);
  for (const auto& check : report.checks) {
    if (check.pass) continue;
    std::ostringstream msg;
    msg << check.name << " failed (residual " << check.residual << ")";
    throw Error(check.name.rfind("omega^2", 0) == 0 ? ErrorCode::NotPositive : ErrorCode::InvalidArgument,
                msg.str());
  }
  cs.m_g = report.m_g;
  return cs;
}

GaugeReport gauge_normalize(const Lattice2D& lat, const VectorField& A_raw) {
  const double scale = 1.0 + std::max(A_raw.c1.max_abs_coefficient(), A_raw.c2.max_abs_coefficient());
  if (std::max(A_raw.c1.realness_defect(), A_raw.c2.realness_defect()) > kRealTol * scale)
    throw Error(ErrorCode::NotRealValued, "vector potential is not real-valued");

  GaugeReport out;
  out.k_shift = Vec2(A_raw.c1.at({0, 0}).real(), A_raw.c2.at({0, 0}).real());

  // Union of the component supports.
  std::map<DualIndex, bool> support;
  for (const auto& [m, c] : A_raw.c1.terms()) support[m] = true;
  for (const auto& [m, c] : A_raw.c2.terms()) support[m] = true;

  for (const auto& [m, unused] : support) {
    if (m == DualIndex{0, 0}) continue;
    const Vec2 xi = lat.frequency(m);
    const Complex a1 = A_raw.c1.at(m);
    const Complex a2 = A_raw.c2.at(m);
    const Complex longitudinal = (xi.x() * a1 + xi.y() * a2) / xi.squaredNorm();
    if (longitudinal != Complex{}) out.Phi.set(m, longitudinal / Complex(0.0, 1.0));
    const Complex n1 = a1 - xi.x() * longitudinal;
    const Complex n2 = a2 - xi.y() * longitudinal;
    if (n1 != Complex{}) out.A_normalized.c1.set(m, n1);
    if (n2 != Complex{}) out.A_normalized.c2.set(m, n2);
  }
  return out;
}

FourierField stream_function(const Lattice2D& lat, const VectorField& A) {
  const FourierField div_A = divergence(lat, A);
  for (const auto& [m, c] : div_A.terms())
    if (std::abs(c) > 1e-8)
      throw Error(ErrorCode::NotDivergenceFree, "vector potential has a nonzero divergence");
  const FourierField B = curl(lat, A);
  FourierField phi;
  for (const auto& [m, b] : B.terms()) {
    if (m == DualIndex{0, 0}) continue;
    phi.set(m, -b / lat.frequency(m).squaredNorm());
  }
  return phi;
}

FourierField resample_pointwise(const FourierField& f, int target_support,
                                const std::function<Complex(Complex)>& fn, int oversampling) {
  const int n = oversampled_grid_size(std::max(f.support_radius(), target_support), oversampling);
  SampledGrid grid = sample(f, n);
  for (Complex& v : grid.values) v = fn(v);
  return analyze(grid, target_support);
}

FourierField invert_square(const FourierField& omega, int target_support, int oversampling) {
  const int n =
      oversampled_grid_size(std::max(2 * omega.support_radius(), target_support), oversampling);
  SampledGrid grid = sample(omega, n);
  for (Complex& v : grid.values) {
    if (!(v.real() > 0.0)) throw Error(ErrorCode::NotPositive, "omega is not positive on the sampling grid");
    v = 1.0 / (v.real() * v.real());
  }
  return analyze(grid, target_support);
}

}  // namespace bandedge
