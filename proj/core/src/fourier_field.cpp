#include "bandedge/fourier_field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "bandedge/error.hpp"

namespace bandedge {

FourierField FourierField::constant(Complex c) {
  FourierField f;
  f.set({0, 0}, c);
  return f;
}

FourierField FourierField::cosine(DualIndex m, double amplitude) {
  FourierField f;
  if (m == DualIndex{0, 0}) {
    f.set(m, amplitude);
    return f;
  }
  f.set(m, 0.5 * amplitude);
  f.set(-m, 0.5 * amplitude);
  return f;
}

FourierField FourierField::sine(DualIndex m, double amplitude) {
  FourierField f;
  if (m == DualIndex{0, 0}) return f;
  f.set(m, Complex(0.0, -0.5 * amplitude));
  f.set(-m, Complex(0.0, 0.5 * amplitude));
  return f;
}

Complex FourierField::at(DualIndex m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Complex{} : it->second;
}

void FourierField::set(DualIndex m, Complex value) { terms_[m] = value; }

void FourierField::add(DualIndex m, Complex value) { terms_[m] += value; }

int FourierField::support_radius() const {
  int r = 0;
  for (const auto& [m, c] : terms_) r = std::max(r, radius(m));
  return r;
}

double FourierField::realness_defect() const {
  double worst = 0.0;
  for (const auto& [m, c] : terms_) worst = std::max(worst, std::abs(at(-m) - std::conj(c)));
  return worst;
}

double FourierField::max_abs_coefficient() const {
  double worst = 0.0;
  for (const auto& [m, c] : terms_) worst = std::max(worst, std::abs(c));
  return worst;
}

FourierField FourierField::pruned(double tol) const {
  FourierField out;
  for (const auto& [m, c] : terms_)
    if (std::abs(c) > tol) out.set(m, c);
  return out;
}

Complex FourierField::evaluate(double s1, double s2) const {
  Complex sum{};
  for (const auto& [m, c] : terms_) {
    const double phase = kTwoPi * (m.m1 * s1 + m.m2 * s2);
    sum += c * Complex(std::cos(phase), std::sin(phase));
  }
  return sum;
}

FourierField& FourierField::operator+=(const FourierField& other) {
  for (const auto& [m, c] : other.terms_) add(m, c);
  return *this;
}

FourierField& FourierField::operator-=(const FourierField& other) {
  for (const auto& [m, c] : other.terms_) add(m, -c);
  return *this;
}

FourierField& FourierField::operator*=(Complex s) {
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

FourierField multiply(const FourierField& a, const FourierField& b) {
  FourierField out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) out.add(ma + mb, ca * cb);
  return out;
}

FourierField partial(const Lattice2D& lat, const FourierField& f, int j) {
  FourierField out;
  for (const auto& [m, c] : f.terms()) {
    const double xi = lat.frequency(m)[j];
    if (xi != 0.0) out.set(m, Complex(0.0, xi) * c);
  }
  return out;
}

FourierField laplacian(const Lattice2D& lat, const FourierField& f) {
  FourierField out;
  for (const auto& [m, c] : f.terms()) {
    const double xi2 = lat.frequency(m).squaredNorm();
    if (xi2 != 0.0) out.set(m, -xi2 * c);
  }
  return out;
}

int VectorField::support_radius() const { return std::max(c1.support_radius(), c2.support_radius()); }

namespace {

// FFTW planning is not thread-safe; execution on distinct arrays is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

void transform(std::vector<Complex>& data, int n, int sign) {
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_2d(n, n, ptr, ptr, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(fftw_planner_mutex());
  fftw_destroy_plan(plan);
}

int wrap(int m, int n) { return ((m % n) + n) % n; }

}  // namespace

SampledGrid sample(const FourierField& f, int n) {
  if (n <= 2 * f.support_radius())
    throw Error(ErrorCode::InvalidArgument, "grid too coarse for the field's support");
  SampledGrid grid;
  grid.n = n;
  grid.values.assign(static_cast<std::size_t>(n) * n, Complex{});
  for (const auto& [m, c] : f.terms()) grid(wrap(m.m1, n), wrap(m.m2, n)) += c;
  transform(grid.values, n, FFTW_BACKWARD);
  return grid;
}

FourierField analyze(const SampledGrid& grid, int support, double drop_tol) {
  const int n = grid.n;
  if (n <= 2 * support)
    throw Error(ErrorCode::InvalidArgument, "requested support exceeds grid Nyquist limit");
  std::vector<Complex> data = grid.values;
  transform(data, n, FFTW_FORWARD);
  const double inv = 1.0 / (static_cast<double>(n) * n);
  FourierField out;
  for (int m1 = -support; m1 <= support; ++m1)
    for (int m2 = -support; m2 <= support; ++m2) {
      const Complex c = data[static_cast<std::size_t>(wrap(m1, n)) * n + wrap(m2, n)] * inv;
      if (std::abs(c) > drop_tol) out.set({m1, m2}, c);
    }
  return out;
}

int oversampled_grid_size(int support, int oversampling) {
  const int target = std::max(8, oversampling * (2 * support + 1));
  int n = 8;
  while (n < target) n *= 2;
  return n;
}

}  // namespace bandedge
