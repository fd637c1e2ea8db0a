#include "cli/selfcheck.hpp"

#include <bandedge/bands.hpp>
#include <bandedge/discrete.hpp>
#include <bandedge/discriminant.hpp>
#include <bandedge/fiber.hpp>
#include <bandedge/free_geometry.hpp>
#include <bandedge/identities.hpp>
#include <bandedge/linearization.hpp>

#include <algorithm>
#include <cmath>

namespace bandedge::cli {

namespace {

struct Recorder {
  std::vector<SelfCheckEntry> entries;
  void add(std::string module, std::string name, double residual, double tolerance) {
    const bool pass = std::isfinite(residual) && residual <= tolerance;
    entries.push_back({std::move(module), std::move(name), pass, residual, tolerance});
  }
};

Lattice2D oblique() { return Lattice2D::canonicalize(Vec2(1.0, 0.1), Vec2(0.35, 1.2)); }

VectorField transverse(const Lattice2D& lat, DualIndex m, double amplitude) {
  const Vec2 xi = lat.frequency(m);
  const double s = amplitude / xi.norm();
  VectorField A;
  A.c1 = FourierField::cosine(m, s * xi.y());
  A.c2 = FourierField::cosine(m, -s * xi.x());
  return A;
}

CoefficientSet harmonic_set(const Lattice2D& lat) {
  CoefficientSet cs(lat);
  cs.V = FourierField::cosine({1, 0}, 0.7);
  cs.A = transverse(lat, {1, -1}, 0.15);
  cs.omega = FourierField::constant(1.0) + FourierField::cosine({0, 1}, 0.2);
  return certified(cs);
}

void lattice_checks(Recorder& r) {
  const std::pair<Vec2, Vec2> bases[] = {{Vec2(1, 0), Vec2(0, 1)},
                                         {Vec2(1.0, 0.1), Vec2(0.35, 1.2)},
                                         {Vec2(0.7, -0.4), Vec2(0.9, 1.1)}};
  double dual = 0.0, canon = 0.0;
  for (const auto& [b1, b2] : bases) {
    const auto [p1, p2] = dual_basis(b1, b2);
    dual = std::max({dual, std::abs(b1.dot(p1) - 1), std::abs(b2.dot(p2) - 1), std::abs(b1.dot(p2)),
                     std::abs(b2.dot(p1))});
    const Lattice2D lat = Lattice2D::canonicalize(b1, b2);
    canon = std::max({canon, (lat.canon() * lat.raw_b1p() - lat.b1p()).norm(),
                      (lat.canon() * lat.raw_b2p() - lat.b2p()).norm()});
  }
  r.add("lattice", "dual basis biorthogonality", dual, 1e-12);
  r.add("lattice", "canonical frame of the dual basis", canon, 1e-12);
}

void coefficient_checks(Recorder& r) {
  const Lattice2D lat = oblique();
  CoefficientSet cs(lat);
  cs.A = transverse(lat, {2, 1}, 0.3);
  cs.omega = FourierField::constant(1.0) + FourierField::cosine({1, 1}, 0.5);
  const ValidationReport v = validate(cs);
  r.add("coefficients", "omega^2 certified positive (-m_g)", -v.m_g, 0.0);
  double div = 0.0;
  const FourierField div_A = divergence(lat, cs.A);
  for (const auto& [m, c] : div_A.terms()) div = std::max(div, std::abs(c));
  r.add("coefficients", "transverse potential divergence", div, 1e-10);

  const FourierField inv = invert_square(cs.omega, 16);
  double err = 0.0;
  for (int i = 0; i < 7; ++i) {
    const double s1 = 0.13 * i, s2 = 0.29 * i + 0.05;
    const Complex w = cs.omega.evaluate(s1, s2);
    err = std::max(err, std::abs(inv.evaluate(s1, s2) - 1.0 / (w * w)));
  }
  r.add("coefficients", "omega^-2 reconstruction", err, 1e-6);
}

void fiber_checks(Recorder& r) {
  const Lattice2D lat = oblique();
  const CoefficientSet cs = harmonic_set(lat);
  const PlaneWaveBasis basis(3);
  const FiberMatrix H = assemble_fiber(cs, CVec2(0.31, -0.42), basis);
  r.add("fiber", "Hermitian at real k", (H.entries - H.entries.adjoint()).norm() / H.entries.norm(), 1e-14);

  const Lattice2D sq = Lattice2D::square();
  const CVec2 k(0.3, 0.2);
  const FiberMatrix F = assemble_fiber(CoefficientSet::free(sq), k, basis);
  CMatrix expected = CMatrix::Zero(F.entries.rows(), F.entries.cols());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Vec2 xi = sq.frequency(basis[i]);
    expected(i, i) = std::pow(xi.x() + 0.3, 2) + std::pow(xi.y() + 0.2, 2);
  }
  r.add("fiber", "free fiber equals |xi + k|^2", (F.entries - expected).norm(), 1e-10);

  const Complex z(0.4, 0.9), k2(-0.2, 0.3), lambda(2.5, 0.1);
  const PencilBlocks P = pencil_blocks(cs, k2, lambda, basis);
  const CMatrix direct =
      assemble_fiber(cs, CVec2(z, k2), basis).entries - lambda * CMatrix::Identity(basis.size(), basis.size());
  r.add("fiber", "pencil K0 + z K1 + z^2 K2 equals H(z, k2) - lambda",
        (P.evaluate(z) - direct).norm() / P.scale(), 1e-13);
}

void band_checks(Recorder& r, unsigned workers) {
  const Lattice2D lat = oblique();
  CoefficientSet cs(lat);
  cs.V = FourierField::cosine({1, 0}, 0.5);
  cs = certified(cs);
  const PlaneWaveBasis basis(8);
  const Vec2 k(0.37, -0.21);
  const Vec2 shift = kTwoPi * lat.b1p();
  const RVector a = band_values(cs, k, basis, 3);
  const RVector b = band_values(cs, k + shift, basis, 3);
  r.add("bands", "periodicity under a dual-lattice shift", (a - b).cwiseAbs().maxCoeff(), 1e-9);

  const PlaneWaveBasis small(2);
  const BandGrid g1 = scan(cs, 4, 4, small, 2, 1);
  const BandGrid gw = scan(cs, 4, 4, small, 2, std::max(2u, workers));
  double diff = 0.0;
  for (std::size_t i = 0; i < g1.values.size(); ++i) diff = std::max(diff, std::abs(g1.values[i] - gw.values[i]));
  r.add("bands", "scan independent of worker count", diff, 0.0);
}

void linearization_checks(Recorder& r) {
  const Lattice2D lat = oblique();
  const CoefficientSet cs = harmonic_set(lat);
  const PlaneWaveBasis basis(3);
  const CorrespondenceReport c = correspondence_check(cs, Complex(0.3, 0.2), Complex(4.0, 0.5), basis);
  r.add("linearization", "T1 eigenvalues solve the pencil", c.max_residual / c.scale, 1e-7);
  const EigenvectorRelation e = eigenvector_relation(cs, Vec2(0.4, -0.3), basis, 1);
  r.add("linearization", "Bloch eigenvector lifts to a T1 eigenvector", e.residual / e.scale, 1e-8);
}

void discriminant_checks(Recorder& r) {
  const std::vector<Complex> roots{{0.3, 0.1}, {-1.2, 0.4}, {0.9, -0.7}, {0.1, 1.3}, {-0.5, -0.6}};
  const std::size_t n = roots.size();
  Complex oracle = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    Complex dp = 1.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) dp *= roots[i] - roots[j];
    oracle *= dp;
  }
  if ((n * (n - 1) / 2) % 2 == 1) oracle = -oracle;
  r.add("discriminant", "product over roots matches the derivative form",
        std::abs(discriminant(roots) - oracle) / std::abs(oracle), 1e-12);
  const std::vector<Complex> doubled{{0.3, 0.1}, {0.3, 0.1}, {1.0, 0.0}};
  r.add("discriminant", "repeated root gives zero", std::abs(discriminant(doubled)), 0.0);
}

void discrete_checks(Recorder& r, unsigned workers) {
  const DiatomicModel model{0.0, 2.0};
  const BandEdges e = band_edges(model);
  const TorusSpectrum t = torus_spectrum(model, 8);
  r.add("discrete", "torus Floquet and dense spectra agree", t.max_difference, 1e-10);
  const BandGrid grid = grid_adapter(model, 64, workers);
  double lo_m = 1e300, hi_m = -1e300, lo_p = 1e300, hi_p = -1e300;
  for (int i = 0; i < grid.n1; ++i)
    for (int j = 0; j < grid.n2; ++j) {
      lo_m = std::min(lo_m, grid.value(i, j, 1));
      hi_m = std::max(hi_m, grid.value(i, j, 1));
      lo_p = std::min(lo_p, grid.value(i, j, 2));
      hi_p = std::max(hi_p, grid.value(i, j, 2));
    }
  r.add("discrete", "closed-form band edges attained on the grid",
        std::max({std::abs(lo_m - e.min_minus), std::abs(hi_m - e.max_minus), std::abs(lo_p - e.min_plus),
                  std::abs(hi_p - e.max_plus)}),
        1e-12);
}

void identity_checks(Recorder& r) {
  const Lattice2D lat = oblique();
  CoefficientSet cs(lat);
  cs.V = FourierField::cosine({1, 0}, 0.5);
  cs.omega = FourierField::constant(1.0) + FourierField::cosine({0, 1}, 0.1);
  cs = certified(cs);
  r.add("identities", "scalar-metric conjugation",
        conjugation_eigenvalue_mismatch(cs, Vec2(0.2, 0.4), PlaneWaveBasis(6), ConjugationSide::Sandwich), 1e-8);

  double worst = 0.0;
  for (int i = 0; i < 8; ++i) {
    const CVec2 k(Complex(0.1 * i, kTwoPi * (1 + i % 3)), 0.37 * i + 0.2);
    const ResolventBoundCheck c = free_resolvent_bound_check(lat, k, PlaneWaveBasis(4));
    worst = std::max(worst, c.bound - c.min_abs_h);
  }
  r.add("identities", "free resolvent lower bound", std::max(0.0, worst), 0.0);

  const BrickWallReport w = brick_wall_check(Lattice2D::canonicalize(Vec2(1.0, 0.0), Vec2(0.0, 1.0)), 0, 12);
  r.add("identities", "brick wall distance to the zero set", std::abs(w.measured_distance - w.expected_distance),
        1e-9);
}

}  // namespace

std::vector<SelfCheckEntry> run_selfcheck(unsigned workers) {
  Recorder r;
  lattice_checks(r);
  coefficient_checks(r);
  fiber_checks(r);
  band_checks(r, workers);
  linearization_checks(r);
  discriminant_checks(r);
  discrete_checks(r, workers);
  identity_checks(r);
  return r.entries;
}

}  // namespace bandedge::cli
