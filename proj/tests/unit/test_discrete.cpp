#include <doctest.h>

#include <bandedge/discrete.hpp>
#include <bandedge/error.hpp>

#include <Eigen/Eigenvalues>

#include "../support/generators.hpp"

using namespace bandedge;
using bandedge::testing::Rng;

namespace {

const DiatomicModel kModel{0.0, 2.0};
const double kSqrt5 = std::sqrt(5.0);

}  // namespace

TEST_CASE("fiber matrices") {
  DiscreteFiber f = fiber(kModel, Vec2(0, 0));
  CHECK(f.matrix(0, 1) == 2.0);
  CHECK(f.matrix(1, 0) == 2.0);
  CHECK(f.matrix(0, 0) == 0.0);
  CHECK(f.matrix(1, 1) == 2.0);
  CHECK(std::abs(fiber(kModel, Vec2(kPi / 2, kPi / 2)).matrix(0, 1)) < 1e-15);
  CHECK(std::abs(fiber(kModel, Vec2(kPi, 0)).matrix(0, 1)) < 1e-15);
}

TEST_CASE("closed-form band values") {
  BandPair p = lambda_pm(kModel, Vec2(0, 0));
  CHECK(p.minus == doctest::Approx(1 - kSqrt5).epsilon(1e-15));
  CHECK(p.plus == doctest::Approx(1 + kSqrt5).epsilon(1e-15));
  p = lambda_pm(kModel, Vec2(kPi / 2, kPi / 2));
  CHECK(std::abs(p.minus) < 1e-15);
  CHECK(p.plus == doctest::Approx(2.0).epsilon(1e-15));
  p = lambda_pm(DiatomicModel{0, 0}, Vec2(0, 0));
  CHECK(p.minus == -2.0);
  CHECK(p.plus == 2.0);
}

TEST_CASE("property: closed form agrees with the 2x2 eigensolver") {
  Rng rng(0xd5);
  for (int trial = 0; trial < 10000; ++trial) {
    const DiatomicModel model{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const Vec2 k = rng.vec2(10.0);
    const Eigen::SelfAdjointEigenSolver<Mat2> es(fiber(model, k).matrix);
    const BandPair p = lambda_pm(model, k);
    CHECK(p.minus <= p.plus);
    CHECK(std::abs(es.eigenvalues()(0) - p.minus) <= 1e-14 * (1.0 + std::abs(p.minus)) * 4);
    CHECK(std::abs(es.eigenvalues()(1) - p.plus) <= 1e-14 * (1.0 + std::abs(p.plus)) * 4);
  }
}

TEST_CASE("band edges") {
  BandEdges e = band_edges(kModel);
  CHECK(e.min_minus == doctest::Approx(1 - kSqrt5).epsilon(1e-15));
  CHECK(e.max_minus == 0.0);
  CHECK(e.min_plus == 2.0);
  CHECK(e.max_plus == doctest::Approx(1 + kSqrt5).epsilon(1e-15));
  CHECK(e.has_gap());

  e = band_edges(DiatomicModel{1, 1});
  CHECK(e.min_minus == doctest::Approx(-1.0));
  CHECK(e.max_minus == 1.0);
  CHECK(e.min_plus == 1.0);
  CHECK(e.max_plus == doctest::Approx(3.0));
  CHECK_FALSE(e.has_gap());

  e = band_edges(DiatomicModel{5, -1});
  CHECK(e.max_minus == -1.0);
  CHECK(e.min_plus == 5.0);
}

TEST_CASE("property: gap is empty exactly when v0 = v1") {
  Rng rng(0xd6);
  for (int trial = 0; trial < 200; ++trial) {
    const double v0 = rng.uniform(-3, 3);
    const double v1 = trial % 4 == 0 ? v0 : rng.uniform(-3, 3);
    CHECK(band_edges(DiatomicModel{v0, v1}).has_gap() == (v0 != v1));
  }
}

TEST_CASE("edge attainment on a grid containing c = 0") {
  const BandGrid g = grid_adapter(kModel, 64, 1);
  double max_minus = -1e300, min_plus = 1e300;
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j) {
      max_minus = std::max(max_minus, g.value(i, j, 1));
      min_plus = std::min(min_plus, g.value(i, j, 2));
    }
  CHECK(std::abs(max_minus) <= 1e-12);
  CHECK(std::abs(min_plus - 2.0) <= 1e-12);
}

TEST_CASE("level lines") {
  LevelLines l = level_lines(kModel, 0.0);
  CHECK(l.kind == LevelLines::Kind::Lines);
  CHECK_FALSE(l.isolated);
  l = level_lines(kModel, 2.0);
  CHECK(l.kind == LevelLines::Kind::Lines);
  l = level_lines(kModel, 1 - kSqrt5);
  CHECK(l.kind == LevelLines::Kind::Points);
  CHECK(l.isolated);
  l = level_lines(kModel, 3.0);
  CHECK(l.kind == LevelLines::Kind::Curve);
  CHECK(l.c_squared == doctest::Approx(3.0));
  try {
    level_lines(kModel, 10.0);
    FAIL("expected NotAttained");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAttained);
  }
  CHECK_THROWS_AS(level_lines(kModel, 1.0), Error);
}

TEST_CASE("torus spectra") {
  // Oracle for L = 2: the 4x4 matrix written out by hand. Each site has two
  // distinct neighbours, each reached twice, so the hopping entries are 1.
  RMatrix H(4, 4);
  // sites (0,0), (0,1), (1,0), (1,1)
  H << 0, 1, 1, 0,
       1, 2, 0, 1,
       1, 0, 2, 1,
       0, 1, 1, 0;
  Eigen::SelfAdjointEigenSolver<RMatrix> es(H);
  const TorusSpectrum two = torus_spectrum(kModel, 2);
  REQUIRE(two.dense.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(two.dense[std::size_t(i)] - es.eigenvalues()(i)) < 1e-12);
    CHECK(std::abs(two.floquet[std::size_t(i)] - es.eigenvalues()(i)) < 1e-12);
  }

  const BandEdges e = band_edges(kModel);
  for (int L : {2, 4, 8, 16}) {
    const TorusSpectrum t = torus_spectrum(kModel, L);
    CHECK(t.floquet.size() == std::size_t(L * L));
    CHECK(t.max_difference <= 1e-10);
    for (double v : t.dense) {
      const bool inside = (v >= e.min_minus - 1e-12 && v <= e.max_minus + 1e-12) ||
                          (v >= e.min_plus - 1e-12 && v <= e.max_plus + 1e-12);
      CHECK(inside);
    }
  }

  const TorusSpectrum sym = torus_spectrum(DiatomicModel{0, 0}, 4);
  for (std::size_t i = 0; i < sym.dense.size(); ++i)
    CHECK(std::abs(sym.dense[i] + sym.dense[sym.dense.size() - 1 - i]) < 1e-12);

  CHECK_THROWS_AS(torus_spectrum(kModel, 3), Error);
}

TEST_CASE("extrema through the grid adapter") {
  const BandGrid g = grid_adapter(kModel, 200, 1);
  const BandEvaluator eval = discrete_evaluator(kModel);

  const ExtremumReport gap_top = locate_extrema(g, 1, ExtremumKind::Max, 1e-6, eval);
  CHECK(std::abs(gap_top.value) < 1e-12);
  CHECK(gap_top.classification == LevelGeometry::Extended);

  const ExtremumReport bottom = locate_extrema(g, 1, ExtremumKind::Min, 1e-6, eval);
  CHECK(bottom.value == doctest::Approx(1 - kSqrt5).epsilon(1e-12));
  CHECK(bottom.classification == LevelGeometry::Isolated);

  const ExtremumReport gap_bottom = locate_extrema(g, 2, ExtremumKind::Min, 1e-6, eval);
  CHECK(std::abs(gap_bottom.value - 2.0) < 1e-12);
  CHECK(gap_bottom.classification == LevelGeometry::Extended);

  // Clusters at the gap edge lie on k1 +- k2 = (2p+1) pi.
  for (const LevelCluster& c : level_set(g, 1, 0.0, 1e-9))
    for (const auto& [i1, i2] : c.nodes) {
      const Vec2 k = g.k_at(i1, i2);
      const double s = std::remainder(k.x() + k.y() - kPi, kTwoPi);
      const double d = std::remainder(k.x() - k.y() - kPi, kTwoPi);
      CHECK(std::min(std::abs(s), std::abs(d)) < 1e-9);
    }
}

TEST_CASE("discrete effective mass at the top of the upper band") {
  // lambda_+ = 1 + sqrt(1 + c^2); at k = 0: d2/dk_i^2 = -2/sqrt(5), mixed = 0.
  const EffectiveMass m = effective_mass(discrete_evaluator(kModel), 2, ExtremumKind::Max, Vec2::Zero(), 1e-3);
  CHECK((m.hessian + (2.0 / kSqrt5) * Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-6);
  CHECK((m.inverse_mass - (2.0 / kSqrt5) * Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-6);
}
