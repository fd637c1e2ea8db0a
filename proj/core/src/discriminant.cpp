#include "bandedge/discriminant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "bandedge/error.hpp"

namespace bandedge {

Complex discriminant(std::span<const Complex> roots) {
  Complex prod(1.0);
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      const Complex d = roots[i] - roots[j];
      prod *= d * d;
    }
  return prod;
}

std::vector<RootCluster> cluster_roots(std::span<const Complex> roots, double tol_cluster) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(roots[i] - roots[j]) <= tol_cluster * (1.0 + std::abs(roots[i]))) {
        const std::size_t a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }

  std::vector<RootCluster> out;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == n) {
      slot[r] = out.size();
      out.push_back({});
    }
    out[slot[r]].members.push_back(i);
  }
  for (auto& c : out) {
    Complex sum{};
    for (std::size_t i : c.members) sum += roots[i];
    c.center = sum / static_cast<double>(c.members.size());
  }
  return out;
}

double SpectrumWindow::boundary_distance(Complex z) const {
  const double x = z.real(), y = z.imag();
  const double dx = std::max({re_min - x, 0.0, x - re_max});
  const double dy = std::max({im_min - y, 0.0, y - im_max});
  if (dx > 0.0 || dy > 0.0) return std::hypot(dx, dy);
  return std::min({x - re_min, re_max - x, y - im_min, im_max - y});
}

DiscriminantResult restricted_discriminant(std::span<const Complex> eigenvalues, const SpectrumWindow& window,
                                           const DiscriminantPolicy& policy) {
  DiscriminantResult out;
  for (const Complex& z : eigenvalues) {
    if (window.boundary_distance(z) <= policy.tol_boundary) {
      std::ostringstream msg;
      msg << "eigenvalue " << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag())
          << "i lies on the window boundary";
      throw Error(ErrorCode::BoundaryEigenvalue, msg.str());
    }
    if (window.contains(z)) out.roots.push_back(z);
  }

  out.min_pair = std::numeric_limits<double>::infinity();
  double log_abs = 0.0;
  for (std::size_t i = 0; i < out.roots.size(); ++i)
    for (std::size_t j = i + 1; j < out.roots.size(); ++j) {
      const double d = std::abs(out.roots[i] - out.roots[j]);
      log_abs += 2.0 * std::log10(d);
      if (d < out.min_pair) {
        out.min_pair = d;
        out.pair_i = i;
        out.pair_j = j;
      }
      if (d <= policy.tol_pair * (1.0 + std::abs(out.roots[i]))) out.declared_zero = true;
    }
  out.raw = discriminant(out.roots);
  out.log10_abs = log_abs;
  out.delta = out.declared_zero ? Complex{} : out.raw;
  out.abs = std::abs(out.delta);
  return out;
}

}  // namespace bandedge
