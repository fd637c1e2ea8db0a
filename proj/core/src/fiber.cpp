#include "bandedge/fiber.hpp"

#include <vector>

namespace bandedge {

namespace {

struct Term {
  DualIndex offset;
  Complex value;
};

using SparseVector = std::vector<Term>;  // duplicates allowed; summed on scatter

std::vector<Term> terms_of(const FourierField& f) {
  std::vector<Term> out;
  out.reserve(f.terms().size());
  for (const auto& [m, c] : f.terms())
    if (c != Complex{}) out.push_back({m, c});
  return out;
}

// D_j(k) = xi_j + k_j - [A_j] applied to a sparse vector.
SparseVector apply_first_order(const Lattice2D& lat, const std::vector<Term>& a, int j, Complex kj,
                               const SparseVector& x) {
  SparseVector out;
  out.reserve(x.size() * (1 + a.size()));
  for (const auto& [p, xp] : x) {
    out.push_back({p, (lat.frequency(p)[j] + kj) * xp});
    for (const auto& [s, as] : a) out.push_back({p + s, -as * xp});
  }
  return out;
}

SparseVector apply_multiplication(const std::vector<Term>& f, const SparseVector& x) {
  SparseVector out;
  out.reserve(x.size() * f.size());
  for (const auto& [p, xp] : x)
    for (const auto& [s, fs] : f) out.push_back({p + s, fs * xp});
  return out;
}

void scatter(const PlaneWaveBasis& basis, const SparseVector& x, CMatrix& M, Eigen::Index col) {
  for (const auto& [m, v] : x)
    if (auto row = basis.index_of(m)) M(static_cast<Eigen::Index>(*row), col) += v;
}

}  // namespace

CMatrix multiplication_matrix(const FourierField& f, const PlaneWaveBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  CMatrix M = CMatrix::Zero(n, n);
  const auto fs = terms_of(f);
  for (Eigen::Index col = 0; col < n; ++col) {
    const DualIndex m = basis[static_cast<std::size_t>(col)];
    for (const auto& [s, c] : fs)
      if (auto row = basis.index_of(m + s)) M(static_cast<Eigen::Index>(*row), col) += c;
  }
  return M;
}

FiberMatrix assemble_fiber(const CoefficientSet& cs, const CVec2& k, const PlaneWaveBasis& basis) {
  const Lattice2D& lat = cs.lattice;
  const auto n = static_cast<Eigen::Index>(basis.size());
  const auto w2 = terms_of(cs.omega_squared());
  const std::vector<Term> a[2] = {terms_of(cs.A.c1), terms_of(cs.A.c2)};
  const auto v = terms_of(cs.V);

  FiberMatrix out{k, basis.N(), CMatrix::Zero(n, n)};
  for (Eigen::Index col = 0; col < n; ++col) {
    const SparseVector e{{basis[static_cast<std::size_t>(col)], Complex(1.0)}};
    for (int j = 0; j < 2; ++j) {
      const SparseVector d = apply_first_order(lat, a[j], j, k[j], e);
      const SparseVector wd = apply_multiplication(w2, d);
      scatter(basis, apply_first_order(lat, a[j], j, k[j], wd), out.entries, col);
    }
    scatter(basis, apply_multiplication(v, e), out.entries, col);
  }
  return out;
}

PencilBlocks pencil_blocks(const CoefficientSet& cs, Complex k2, Complex lambda,
                           const PlaneWaveBasis& basis) {
  const Lattice2D& lat = cs.lattice;
  const auto n = static_cast<Eigen::Index>(basis.size());
  const auto w2 = terms_of(cs.omega_squared());
  const auto a1 = terms_of(cs.A.c1);

  PencilBlocks out;
  out.k2 = k2;
  out.lambda = lambda;
  out.K0 = assemble_fiber(cs, CVec2(Complex{}, k2), basis).entries;
  out.K0.diagonal().array() -= lambda;
  out.K2 = multiplication_matrix(cs.omega_squared(), basis);
  out.K1 = CMatrix::Zero(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    const SparseVector e{{basis[static_cast<std::size_t>(col)], Complex(1.0)}};
    // [omega^2] D_1(0) e  +  D_1(0) [omega^2] e
    scatter(basis, apply_multiplication(w2, apply_first_order(lat, a1, 0, Complex{}, e)), out.K1, col);
    scatter(basis, apply_first_order(lat, a1, 0, Complex{}, apply_multiplication(w2, e)), out.K1, col);
  }
  return out;
}

FreeSymbol free_symbol(const Lattice2D& lat, DualIndex m, const CVec2& k) {
  const Vec2 xi = lat.frequency(m);
  const double r1 = k[0].real(), l1 = k[0].imag();
  const double r2 = k[1].real(), l2 = k[1].imag();
  const Complex s1 = xi.x() + k[0];
  const Complex s2 = xi.y() + k[1];
  FreeSymbol out;
  out.h = s1 * s1 + s2 * s2;
  out.q_plus = Complex(xi.x() + r1 - l2, l1 + xi.y() + r2);
  out.q_minus = Complex(xi.x() + r1 + l2, l1 - xi.y() - r2);
  return out;
}

}  // namespace bandedge
