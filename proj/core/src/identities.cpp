#include "bandedge/identities.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

#include "bandedge/error.hpp"

namespace bandedge {

namespace {

double spectral_norm(const CMatrix& M) {
  if (M.size() == 0) return 0.0;
  Eigen::BDCSVD<CMatrix> svd(M);
  return svd.singularValues()(0);
}

CoefficientSet flat_copy(const CoefficientSet& cs, FourierField V) {
  CoefficientSet flat(cs.lattice);
  flat.A = cs.A;
  flat.V = std::move(V);
  flat.omega = FourierField::constant(1.0);
  flat.m_g = 1.0;
  return flat;
}

// (V + omega Lap omega) / omega^2, resampled to |m| <= support.
FourierField sandwich_potential(const CoefficientSet& cs, int support) {
  const FourierField lap = laplacian(cs.lattice, cs.omega);
  const int reach = std::max({cs.V.support_radius(), 2 * cs.omega.support_radius(), support});
  const int n = oversampled_grid_size(reach);
  const SampledGrid v = sample(cs.V, n);
  const SampledGrid w = sample(cs.omega, n);
  const SampledGrid l = sample(lap, n);
  SampledGrid out = v;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double wi = w.values[i].real();
    if (!(wi > 0.0)) throw Error(ErrorCode::NotPositive, "omega is not positive on the sampling grid");
    out.values[i] = (v.values[i] + wi * l.values[i]) / (wi * wi);
  }
  return analyze(out, support);
}

RVector lowest_eigenvalues(const CMatrix& M, int count) {
  const CMatrix herm = 0.5 * (M + M.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::SolverFailure, "Hermitian eigensolver failed");
  return es.eigenvalues().head(std::min<Eigen::Index>(count, es.eigenvalues().size()));
}

}  // namespace

FiberMatrix conjugated_fiber(const CoefficientSet& cs, const CVec2& k, const PlaneWaveBasis& basis,
                             ConjugationSide side) {
  const FourierField V = side == ConjugationSide::Sandwich ? sandwich_potential(cs, 2 * basis.N()) : cs.V;
  const CoefficientSet flat = flat_copy(cs, V);
  const CMatrix W = multiplication_matrix(cs.omega, basis);
  FiberMatrix out = assemble_fiber(flat, k, basis);
  out.entries = W * out.entries * W;
  return out;
}

CoefficientSet conjugation_partner(const CoefficientSet& cs, ConjugationSide side) {
  if (side == ConjugationSide::Sandwich) return cs;
  CoefficientSet partner = cs;
  partner.V = multiply(cs.omega_squared(), cs.V) - multiply(cs.omega, laplacian(cs.lattice, cs.omega));
  return partner;
}

double conjugation_eigenvalue_mismatch(const CoefficientSet& cs, const Vec2& k, const PlaneWaveBasis& basis,
                                       ConjugationSide side, int count) {
  const CVec2 kc = k.cast<Complex>();
  const RVector a = lowest_eigenvalues(conjugated_fiber(cs, kc, basis, side).entries, count);
  const RVector b = lowest_eigenvalues(assemble_fiber(conjugation_partner(cs, side), kc, basis).entries, count);
  return (a - b).cwiseAbs().maxCoeff();
}

PauliResidual pauli_residual(const Lattice2D& lat, const VectorField& A, const CVec2& k,
                             const PlaneWaveBasis& basis, int probe_radius) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  const FourierField phi = stream_function(lat, A);
  const int reach = 2 * basis.N();
  const auto exp_of = [&](double factor) {
    return resample_pointwise(phi, reach, [factor](Complex v) { return std::exp(factor * v); });
  };
  const CMatrix E1 = multiplication_matrix(exp_of(1.0), basis);
  const CMatrix Em2 = multiplication_matrix(exp_of(-2.0), basis);

  CVector q_plus_inv(n), q_minus_inv(n);
  double q_min = std::numeric_limits<double>::infinity(), q_max = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const FreeSymbol s = free_symbol(lat, basis[static_cast<std::size_t>(i)], k);
    q_min = std::min({q_min, std::abs(s.q_plus), std::abs(s.q_minus)});
    q_max = std::max({q_max, std::abs(s.q_plus), std::abs(s.q_minus)});
    q_plus_inv(i) = 1.0 / s.q_plus;
    q_minus_inv(i) = 1.0 / s.q_minus;
  }
  PauliResidual out;
  out.q_condition = q_min > 0.0 ? q_max / q_min : std::numeric_limits<double>::infinity();
  if (!(out.q_condition < 1e12))
    throw Error(ErrorCode::SingularFactor, "free factor Q+- is numerically singular at this k");

  CoefficientSet pauli(lat);
  pauli.A = A;
  pauli.V = curl(lat, A);
  pauli.m_g = 1.0;
  const CMatrix H = assemble_fiber(pauli, k, basis).entries;

  const CMatrix M = E1 * q_minus_inv.asDiagonal() * Em2 * q_plus_inv.asDiagonal() * E1;
  const CMatrix R = H * M - CMatrix::Identity(n, n);

  out.full = spectral_norm(R);
  Eigen::PartialPivLU<CMatrix> lu(H);
  out.residual = spectral_norm(M - lu.inverse());

  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < n; ++i)
    if (radius(basis[static_cast<std::size_t>(i)]) <= probe_radius) cols.push_back(i);
  CMatrix block(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) block.col(static_cast<Eigen::Index>(c)) = R.col(cols[c]);
  out.low_block = spectral_norm(block);
  return out;
}

ResolventBoundCheck free_resolvent_bound_check(const Lattice2D& lat, const CVec2& k,
                                               const PlaneWaveBasis& basis) {
  const double l1 = k[0].imag();
  const double turns = l1 / kTwoPi;
  if (std::abs(turns - std::round(turns)) * kTwoPi > 1e-9)
    throw Error(ErrorCode::HypothesisViolated, "Im k1 is not an integer multiple of 2 pi");
  if (std::abs(k[1].imag()) > 1e-9) throw Error(ErrorCode::HypothesisViolated, "k2 is not real");

  const double r2 = k[1].real();
  ResolventBoundCheck out;
  out.delta = std::abs(r2 - kTwoPi * std::round(r2 / kTwoPi));
  out.bound = std::abs(l1) * out.delta;
  out.min_abs_h = std::numeric_limits<double>::infinity();
  for (const DualIndex m : basis.indices())
    out.min_abs_h = std::min(out.min_abs_h, std::abs(free_symbol(lat, m, k).h));
  out.pass = out.min_abs_h >= out.bound * (1.0 - 1e-12);
  return out;
}

}  // namespace bandedge
