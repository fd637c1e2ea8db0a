#pragma once

#include <bandedge/coefficients.hpp>
#include <bandedge/lattice.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace bandedge::testing {

// Seeded source for property tests; every draw is reproducible from the seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  Complex complex(double radius) { return {uniform(-radius, radius), uniform(-radius, radius)}; }
  Vec2 vec2(double radius) { return {uniform(-radius, radius), uniform(-radius, radius)}; }
  CVec2 cvec2(double radius) { return {complex(radius), complex(radius)}; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Positively oriented basis with bounded aspect ratio and shear.
inline std::pair<Vec2, Vec2> random_basis(Rng& rng) {
  const double angle = rng.uniform(-kPi, kPi);
  const double len1 = rng.uniform(0.6, 1.6);
  const double len2 = rng.uniform(0.6, 1.6);
  const double shear = rng.uniform(0.35 * kPi, 0.65 * kPi);
  const Vec2 b1 = len1 * Vec2(std::cos(angle), std::sin(angle));
  const Vec2 b2 = len2 * Vec2(std::cos(angle + shear), std::sin(angle + shear));
  return {b1, b2};
}

inline Lattice2D random_lattice(Rng& rng) {
  const auto [b1, b2] = random_basis(rng);
  return Lattice2D::canonicalize(b1, b2);
}

inline DualIndex random_index(Rng& rng, int radius) {
  DualIndex m{0, 0};
  while (m == DualIndex{0, 0}) m = {rng.integer(-radius, radius), rng.integer(-radius, radius)};
  return m;
}

// Divergence-free single harmonic: amplitude * (xi2, -xi1)/|xi| * cos(xi . x).
inline VectorField transverse_harmonic(const Lattice2D& lat, DualIndex m, double amplitude) {
  const Vec2 xi = lat.frequency(m);
  const double s = amplitude / xi.norm();
  VectorField A;
  A.c1 = FourierField::cosine(m, s * xi.y());
  A.c2 = FourierField::cosine(m, -s * xi.x());
  return A;
}

struct HarmonicAmplitudes {
  double V = 1.0;
  double A = 0.2;
  double omega = 0.2;
};

// One harmonic in each of V, A and omega - 1, at independent random indices.
inline CoefficientSet single_harmonic_set(Rng& rng, const Lattice2D& lat, const HarmonicAmplitudes& amp = {}) {
  CoefficientSet cs(lat);
  cs.V = FourierField::cosine(random_index(rng, 1), rng.uniform(-amp.V, amp.V));
  cs.A = transverse_harmonic(lat, random_index(rng, 1), rng.uniform(-amp.A, amp.A));
  cs.omega = FourierField::constant(1.0) + FourierField::cosine(random_index(rng, 1), rng.uniform(-amp.omega, amp.omega));
  return certified(cs);
}

inline std::vector<Complex> random_roots(Rng& rng, int count, double radius = 2.0) {
  std::vector<Complex> roots;
  for (int i = 0; i < count; ++i) roots.push_back(rng.complex(radius));
  return roots;
}

}  // namespace bandedge::testing
