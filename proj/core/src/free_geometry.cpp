#include "bandedge/free_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bandedge/fiber.hpp"

namespace bandedge {

namespace {

struct Segment {
  Complex a, b;
};

double point_segment_distance(Complex p, const Segment& s) {
  const Complex d = s.b - s.a;
  const double len2 = std::norm(d);
  double t = len2 > 0.0 ? ((p - s.a) * std::conj(d)).real() / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (s.a + t * d));
}

}  // namespace

Complex sigma_k2(const Lattice2D& lat, int n_turns, int l_turns) {
  return Complex(0.5 * kPi + kTwoPi * n_turns, (0.5 * kPi + kTwoPi * l_turns) * lat.alpha());
}

std::vector<SigmaPoint> sigma_set(const Lattice2D& lat, int n_turns, const SpectrumWindow& bounds) {
  const double a = lat.alpha(), b = lat.beta();
  const double n = kTwoPi * n_turns;
  std::vector<SigmaPoint> out;
  for (int sign : {+1, -1}) {
    // l1 = sign * (pi/2 + n + 2 pi m2)
    const double lo = sign > 0 ? bounds.im_min : -bounds.im_max;
    const double hi = sign > 0 ? bounds.im_max : -bounds.im_min;
    const int m2_lo = static_cast<int>(std::ceil((lo - 0.5 * kPi - n) / kTwoPi));
    const int m2_hi = static_cast<int>(std::floor((hi - 0.5 * kPi - n) / kTwoPi));
    for (int m2 = m2_lo; m2 <= m2_hi; ++m2) {
      const double l1 = sign * (0.5 * kPi + n + kTwoPi * m2);
      // r1 = -2 pi (alpha m1 + beta m2) - sign * (pi/2) alpha
      const double c = -kTwoPi * b * m2 - sign * 0.5 * kPi * a;
      const int m1_lo = static_cast<int>(std::ceil((c - bounds.re_max) / (kTwoPi * a)));
      const int m1_hi = static_cast<int>(std::floor((c - bounds.re_min) / (kTwoPi * a)));
      for (int m1 = m1_lo; m1 <= m1_hi; ++m1) {
        const Complex z(c - kTwoPi * a * m1, l1);
        if (z.real() < bounds.re_min || z.real() > bounds.re_max || z.imag() < bounds.im_min ||
            z.imag() > bounds.im_max)
          continue;
        out.push_back({z, {m1, m2}, sign});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const SigmaPoint& p, const SigmaPoint& q) {
    if (p.k1.imag() != q.k1.imag()) return p.k1.imag() < q.k1.imag();
    return p.k1.real() < q.k1.real();
  });
  return out;
}

BrickWallReport brick_wall_check(const Lattice2D& lat, int n_turns, int sample_count, std::vector<int> l_turns) {
  const double a = lat.alpha();
  BrickWallReport rep;
  rep.expected_distance = std::min(0.5 * kPi, kPi * a);

  // Inner region whose Sigma points have every nearby wall component built.
  const double half_re = 3.0 * kTwoPi * a, half_im = 2.0 * kPi;
  const SpectrumWindow inner{-half_re, half_re, -half_im, half_im};
  const double pad_re = kTwoPi * a + kPi, pad_im = 2.0 * kPi;
  const SpectrumWindow outer{inner.re_min - pad_re, inner.re_max + pad_re, inner.im_min - pad_im,
                             inner.im_max + pad_im};

  std::vector<Segment> wall;
  for (int j = static_cast<int>(std::floor(outer.im_min / kPi)); j <= static_cast<int>(std::ceil(outer.im_max / kPi));
       ++j)
    wall.push_back({Complex(outer.re_min, kPi * j), Complex(outer.re_max, kPi * j)});
  const auto sigma_outer = sigma_set(lat, n_turns, outer);
  for (const auto& s : sigma_outer) {
    const double x = s.k1.real() + kPi * a;
    wall.push_back({Complex(x, s.k1.imag() - 0.5 * kPi), Complex(x, s.k1.imag() + 0.5 * kPi)});
  }

  rep.measured_distance = std::numeric_limits<double>::infinity();
  for (const auto& s : sigma_set(lat, n_turns, inner))
    for (const auto& w : wall) rep.measured_distance = std::min(rep.measured_distance, point_segment_distance(s.k1, w));
  rep.distance_pass = std::abs(rep.measured_distance - rep.expected_distance) <= 1e-9;

  // Boundary samples of the wall inside the inner region.
  std::vector<Complex> samples;
  const int per = std::max(2, sample_count);
  for (const auto& w : wall) {
    for (int i = 0; i < per; ++i) {
      const Complex p = w.a + (w.b - w.a) * (double(i) / (per - 1));
      if (p.real() >= inner.re_min && p.real() <= inner.re_max && p.imag() >= inner.im_min &&
          p.imag() <= inner.im_max)
        samples.push_back(p);
    }
  }
  rep.sampled_distance = std::numeric_limits<double>::infinity();
  for (const Complex& p : samples)
    for (const auto& s : sigma_outer) rep.sampled_distance = std::min(rep.sampled_distance, std::abs(p - s.k1));

  // |h_m| growth along |l|.
  rep.l_turns = std::move(l_turns);
  const int m_range = 8 + 2 * *std::max_element(rep.l_turns.begin(), rep.l_turns.end());
  for (int lt : rep.l_turns) {
    const Complex k2 = sigma_k2(lat, n_turns, lt);
    double worst = std::numeric_limits<double>::infinity();
    for (const Complex& k1 : samples)
      for (int m1 = -m_range; m1 <= m_range; ++m1)
        for (int m2 = -m_range; m2 <= m_range; ++m2)
          worst = std::min(worst, std::abs(free_symbol(lat, {m1, m2}, CVec2(k1, k2)).h));
    rep.min_abs_h.push_back(worst);
  }

  // Least-squares line y = intercept + slope * |l|.
  const std::size_t n = rep.l_turns.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = kTwoPi * std::abs(rep.l_turns[i]);
    const double y = rep.min_abs_h[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  rep.slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
  rep.intercept = (sy - rep.slope * sx) / n;
  const double mean = sy / n;
  double ss_tot = 0, ss_res = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = kTwoPi * std::abs(rep.l_turns[i]);
    const double y = rep.min_abs_h[i];
    ss_tot += (y - mean) * (y - mean);
    ss_res += (y - rep.intercept - rep.slope * x) * (y - rep.intercept - rep.slope * x);
  }
  rep.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
  rep.growth_pass = rep.slope > 0.0 && rep.r_squared >= 0.99;
  return rep;
}

}  // namespace bandedge
