#include <doctest.h>

#include <bandedge/coefficients.hpp>
#include <bandedge/error.hpp>

#include "../support/generators.hpp"

using namespace bandedge;
using bandedge::testing::Rng;

namespace {

double max_abs_difference(const FourierField& a, const FourierField& b) {
  double d = 0.0;
  const FourierField diff = a - b;
  for (const auto& [m, c] : diff.terms()) d = std::max(d, std::abs(c));
  return d;
}

}  // namespace

TEST_CASE("Fourier field arithmetic") {
  const FourierField c = FourierField::cosine({1, 0}, 2.0);
  CHECK(c.at({1, 0}) == Complex(1.0, 0.0));
  CHECK(c.at({-1, 0}) == Complex(1.0, 0.0));
  CHECK(c.realness_defect() == 0.0);
  CHECK(std::abs(c.evaluate(0.0, 0.3) - 2.0) < 1e-14);
  CHECK(std::abs(c.evaluate(0.5, 0.0) + 2.0) < 1e-14);

  const FourierField s = FourierField::sine({0, 1}, 1.0);
  CHECK(std::abs(s.evaluate(0.1, 0.25) - 1.0) < 1e-14);

  // cos^2 = 1/2 + cos(2x)/2
  const FourierField sq = multiply(c, c);
  CHECK(std::abs(sq.at({0, 0}) - 2.0) < 1e-15);
  CHECK(std::abs(sq.at({2, 0}) - 1.0) < 1e-15);
  CHECK(sq.support_radius() == 2);
}

TEST_CASE("sampling and analysis round trip") {
  Rng rng(7);
  FourierField f;
  for (int i = 0; i < 6; ++i) {
    const DualIndex m = testing::random_index(rng, 3);
    const Complex a = rng.complex(1.0);
    f.add(m, a);
    f.add(-m, std::conj(a));
  }
  const int n = oversampled_grid_size(f.support_radius());
  CHECK(n >= 4 * (2 * f.support_radius() + 1));
  const SampledGrid g = sample(f, n);
  CHECK(std::abs(g(3, 5) - f.evaluate(3.0 / n, 5.0 / n)) < 1e-12);
  CHECK(max_abs_difference(analyze(g, f.support_radius()), f) < 1e-14);
}

TEST_CASE("validate") {
  const Lattice2D sq = Lattice2D::square();
  const ValidationReport free = validate(CoefficientSet::free(sq));
  CHECK(free.ok());
  CHECK(free.m_g == doctest::Approx(1.0).epsilon(1e-14));

  CoefficientSet constant_A(sq);
  constant_A.A.c1 = FourierField::constant(0.3);
  const ValidationReport r = validate(constant_A);
  CHECK_FALSE(r.ok());
  REQUIRE(r.find("A zero mean") != nullptr);
  CHECK_FALSE(r.find("A zero mean")->pass);
  CHECK_THROWS_AS(certified(constant_A), Error);

  CoefficientSet half(sq);
  half.omega = FourierField::constant(1.0) + FourierField::cosine({1, 0}, 0.5);
  const ValidationReport h = validate(half);
  CHECK(h.ok());
  CHECK(h.omega2_grid_min == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(h.m_g <= 0.25);
  CHECK(h.m_g >= 0.25 - h.safety_margin - 1e-15);
  CHECK(h.safety_margin < 0.05);

  CoefficientSet vanishing(sq);
  vanishing.omega = FourierField::cosine({1, 0}, 1.0);
  try {
    certified(vanishing);
    FAIL("expected NotPositive");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPositive);
  }

  CoefficientSet complex_V(sq);
  complex_V.V.set({1, 0}, Complex(0.0, 1.0));
  CHECK_FALSE(validate(complex_V).find("V real-valued")->pass);

  CoefficientSet compressible(sq);
  compressible.A.c1 = FourierField::cosine({1, 0}, 0.2);
  CHECK_FALSE(validate(compressible).find("A divergence-free")->pass);
}

TEST_CASE("gauge normalisation") {
  const Lattice2D sq = Lattice2D::square();

  // gradient of 0.4 sin(2 pi x1) is (0.8 pi cos(2 pi x1), 0)
  VectorField grad;
  grad.c1 = FourierField::cosine({1, 0}, 0.8 * kPi);
  GaugeReport g = gauge_normalize(sq, grad);
  CHECK(g.A_normalized.c1.max_abs_coefficient() < 1e-15);
  CHECK(g.A_normalized.c2.max_abs_coefficient() < 1e-15);
  CHECK(g.k_shift.norm() == 0.0);
  CHECK(std::abs(g.Phi.evaluate(0.25, 0.0) - 0.4) < 1e-14);

  VectorField constant;
  constant.c1 = FourierField::constant(0.3);
  constant.c2 = FourierField::constant(-0.7);
  g = gauge_normalize(sq, constant);
  CHECK(g.A_normalized.empty());
  CHECK((g.k_shift - Vec2(0.3, -0.7)).norm() < 1e-15);

  const VectorField harmonic = testing::transverse_harmonic(sq, {1, 2}, 0.3);
  VectorField shifted = harmonic;
  shifted.c1 += FourierField::constant(0.1);
  g = gauge_normalize(sq, shifted);
  CHECK(max_abs_difference(g.A_normalized.c1, harmonic.c1) < 1e-12);
  CHECK(max_abs_difference(g.A_normalized.c2, harmonic.c2) < 1e-12);

  VectorField complex_A;
  complex_A.c1.set({1, 0}, Complex(0.0, 1.0));
  CHECK_THROWS_AS(gauge_normalize(sq, complex_A), Error);
}

TEST_CASE("property: gauge normalisation is idempotent and leaves B unchanged") {
  Rng rng(0x9a);
  for (int trial = 0; trial < 50; ++trial) {
    const Lattice2D lat = testing::random_lattice(rng);
    VectorField A;
    for (int t = 0; t < 3; ++t) {
      const DualIndex m = testing::random_index(rng, 2);
      const Complex a1 = rng.complex(1.0), a2 = rng.complex(1.0);
      A.c1.add(m, a1);
      A.c1.add(-m, std::conj(a1));
      A.c2.add(m, a2);
      A.c2.add(-m, std::conj(a2));
    }
    A.c1.add({0, 0}, rng.uniform(-1, 1));
    A.c2.add({0, 0}, rng.uniform(-1, 1));

    const GaugeReport once = gauge_normalize(lat, A);
    const GaugeReport twice = gauge_normalize(lat, once.A_normalized);
    CHECK(max_abs_difference(once.A_normalized.c1, twice.A_normalized.c1) < 1e-12);
    CHECK(max_abs_difference(once.A_normalized.c2, twice.A_normalized.c2) < 1e-12);
    CHECK(twice.k_shift.norm() < 1e-12);

    double div = 0.0;
    const FourierField div_A = divergence(lat, once.A_normalized);
    for (const auto& [m, c] : div_A.terms()) div = std::max(div, std::abs(c));
    CHECK(div < 1e-10);
    CHECK(max_abs_difference(curl(lat, A), curl(lat, once.A_normalized)) < 1e-10);

    // Delta phi = B coefficientwise.
    const FourierField phi = stream_function(lat, once.A_normalized);
    CHECK(phi.at({0, 0}) == Complex{});
    CHECK(max_abs_difference(laplacian(lat, phi), curl(lat, once.A_normalized)) < 1e-10);
    // grad phi = (A2, -A1)
    CHECK(max_abs_difference(partial(lat, phi, 0), once.A_normalized.c2) < 1e-10);
    CHECK(max_abs_difference(partial(lat, phi, 1), -1.0 * once.A_normalized.c1) < 1e-10);
  }
}

TEST_CASE("stream function and curl of single harmonics") {
  const Lattice2D sq = Lattice2D::square();
  CHECK(stream_function(sq, VectorField{}).empty());

  // A^(1,0) = (0, c): grad phi = (A2, -A1) forces phi^(1,0) = c / (2 pi i).
  const Complex c(0.3, 0.1);
  VectorField A;
  A.c2.set({1, 0}, c);
  A.c2.set({-1, 0}, std::conj(c));
  const FourierField phi = stream_function(sq, A);
  CHECK(std::abs(phi.at({1, 0}) - c / Complex(0.0, kTwoPi)) < 1e-15);

  VectorField constant;
  constant.c1 = FourierField::constant(2.0);
  CHECK(curl(sq, constant).max_abs_coefficient() == 0.0);

  // A = (-sin(2 pi x2), 0) gives B = 2 pi cos(2 pi x2).
  VectorField s;
  s.c1 = FourierField::sine({0, 1}, -1.0);
  const FourierField B = curl(sq, s);
  CHECK(std::abs(B.at({0, 1}) - kPi) < 1e-14);
  CHECK(std::abs(B.at({0, -1}) - kPi) < 1e-14);

  VectorField compressible;
  compressible.c1 = FourierField::cosine({1, 0}, 1.0);
  try {
    stream_function(sq, compressible);
    FAIL("expected NotDivergenceFree");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotDivergenceFree);
  }
}

TEST_CASE("invert_square") {
  FourierField one = invert_square(FourierField::constant(1.0), 4);
  CHECK(std::abs(one.at({0, 0}) - 1.0) < 1e-15);
  CHECK(one.pruned(1e-15).terms().size() == 1);

  FourierField quarter = invert_square(FourierField::constant(2.0), 4);
  CHECK(std::abs(quarter.at({0, 0}) - 0.25) < 1e-15);

  // Oracle: a 1024^2 grid DFT of 1 / omega^2, computed directly.
  const FourierField omega = FourierField::constant(1.0) + FourierField::cosine({1, 1}, 0.1);
  const int target = 4;
  const FourierField inv = invert_square(omega, target);
  const int n = 1024;
  for (const DualIndex m : {DualIndex{0, 0}, DualIndex{1, 1}, DualIndex{2, 2}, DualIndex{-3, -3}, DualIndex{1, 0}}) {
    // omega depends on s1 + s2 only, so the 2D sum collapses to a 1D sum over u = s1 + s2.
    Complex oracle{};
    if (m.m1 == m.m2) {
      for (int i = 0; i < n; ++i) {
        const double u = double(i) / n;
        const double w = 1.0 + 0.1 * std::cos(kTwoPi * u);
        oracle += std::exp(Complex(0.0, -kTwoPi * m.m1 * u)) / (w * w);
      }
      oracle /= double(n);
    }
    CHECK(std::abs(inv.at(m) - oracle) < 1e-10);
  }

  const FourierField wide = invert_square(omega, 8);
  const SampledGrid g = sample(multiply(wide, multiply(omega, omega)), 64);
  double worst = 0.0;
  for (const Complex& v : g.values) worst = std::max(worst, std::abs(v - 1.0));
  CHECK(worst < 1e-8);

  CHECK_THROWS_AS(invert_square(FourierField::cosine({1, 0}, 1.0), 4), Error);
}
