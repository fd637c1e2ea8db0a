#pragma once

#include <map>
#include <vector>

#include "bandedge/lattice.hpp"
#include "bandedge/types.hpp"

namespace bandedge {

/// Finitely supported Fourier series of a periodic scalar function,
///   f(x) = sum_m fhat(m) exp(i frequency(m) . x).
/// In fractional cell coordinates s the phase is 2*pi*(m1 s1 + m2 s2), so the
/// lattice is only needed when derivatives are taken.
class FourierField {
 public:
  using Terms = std::map<DualIndex, Complex>;

  FourierField() = default;
  explicit FourierField(Terms terms) : terms_(std::move(terms)) {}

  static FourierField constant(Complex c);
  /// a*cos(frequency(m).x)
  static FourierField cosine(DualIndex m, double amplitude);
  /// a*sin(frequency(m).x)
  static FourierField sine(DualIndex m, double amplitude);

  Complex at(DualIndex m) const;
  void set(DualIndex m, Complex value);
  void add(DualIndex m, Complex value);

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  /// Largest Chebyshev radius among stored indices (0 for an empty field).
  int support_radius() const;
  /// max_m |fhat(-m) - conj(fhat(m))|; zero for real-valued functions.
  double realness_defect() const;
  double max_abs_coefficient() const;

  /// Drops terms with |fhat| <= tol.
  FourierField pruned(double tol) const;

  /// Value at fractional coordinates (s1, s2).
  Complex evaluate(double s1, double s2) const;

  FourierField& operator+=(const FourierField& other);
  FourierField& operator-=(const FourierField& other);
  FourierField& operator*=(Complex s);
  friend FourierField operator+(FourierField a, const FourierField& b) { return a += b; }
  friend FourierField operator-(FourierField a, const FourierField& b) { return a -= b; }
  friend FourierField operator*(Complex s, FourierField a) { return a *= s; }

 private:
  Terms terms_;
};

/// Exact product of two band-limited functions (coefficient convolution).
FourierField multiply(const FourierField& a, const FourierField& b);

/// d/dx_j in canonical coordinates: fhat(m) -> i xi_j(m) fhat(m).
FourierField partial(const Lattice2D& lat, const FourierField& f, int j);
FourierField laplacian(const Lattice2D& lat, const FourierField& f);

struct VectorField {
  FourierField c1;
  FourierField c2;

  const FourierField& operator[](int j) const { return j == 0 ? c1 : c2; }
  FourierField& operator[](int j) { return j == 0 ? c1 : c2; }
  int support_radius() const;
  bool empty() const { return c1.empty() && c2.empty(); }
};

/// Samples on the uniform n x n grid of fractional coordinates (i/n, j/n),
/// stored row-major with i (the b1 direction) as the slow index.
struct SampledGrid {
  int n = 0;
  std::vector<Complex> values;

  Complex& operator()(int i, int j) { return values[static_cast<std::size_t>(i) * n + j]; }
  Complex operator()(int i, int j) const { return values[static_cast<std::size_t>(i) * n + j]; }
};

SampledGrid sample(const FourierField& f, int n);
/// Discrete Fourier analysis of grid data truncated to |m|_inf <= support.
FourierField analyze(const SampledGrid& grid, int support, double drop_tol = 0.0);

/// Grid size used by the oversampling policy: the smallest power of two that
/// is at least oversampling * (2 * support + 1).
int oversampled_grid_size(int support, int oversampling = 4);

}  // namespace bandedge
