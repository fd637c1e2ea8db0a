#include "bandedge/linearization.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "bandedge/error.hpp"

namespace bandedge {

LinearizedOperator assemble_t1(const CoefficientSet& cs, Complex k2, Complex lambda, const PlaneWaveBasis& basis) {
  LinearizedOperator T;
  T.k2 = k2;
  T.lambda = lambda;
  T.N = basis.N();
  T.pencil = pencil_blocks(cs, k2, lambda, basis);
  const CMatrix& K2 = T.pencil.K2;
  const Eigen::Index n = K2.rows();

  Eigen::SelfAdjointEigenSolver<CMatrix> es(K2, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  T.mass_condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (!(T.mass_condition <= 1e10)) {
    std::ostringstream msg;
    msg << "cond(K2) = " << T.mass_condition;
    throw Error(ErrorCode::IllConditionedMass, msg.str());
  }
  Eigen::LLT<CMatrix> llt(K2);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::IllConditionedMass, "K2 is not positive definite");
  T.K2_inverse = llt.solve(CMatrix::Identity(n, n));

  T.matrix = CMatrix::Zero(2 * n, 2 * n);
  T.matrix.topRightCorner(n, n) = T.K2_inverse;
  T.matrix.bottomLeftCorner(n, n) = -T.pencil.K0;
  T.matrix.bottomRightCorner(n, n) = -T.pencil.K1 * T.K2_inverse;
  return T;
}

T1Spectrum t1_spectrum(const LinearizedOperator& T, bool with_vectors, double tol_cluster) {
  CMatrix work = T.matrix;
  const auto n = static_cast<lapack_int>(work.rows());
  CVector ev(work.rows());
  CMatrix vectors(with_vectors ? work.rows() : 1, with_vectors ? work.rows() : 1);
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', with_vectors ? 'V' : 'N', n, reinterpret_cast<lapack_complex_double*>(work.data()), n,
      reinterpret_cast<lapack_complex_double*>(ev.data()), nullptr, 1,
      reinterpret_cast<lapack_complex_double*>(vectors.data()), static_cast<lapack_int>(vectors.rows()));
  if (info != 0) throw Error(ErrorCode::SolverFailure, "nonsymmetric eigensolver failed");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(ev.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&ev](Eigen::Index a, Eigen::Index b) {
    if (ev(a).real() != ev(b).real()) return ev(a).real() < ev(b).real();
    return ev(a).imag() < ev(b).imag();
  });

  T1Spectrum out;
  out.eigenvalues.reserve(order.size());
  for (Eigen::Index i : order) out.eigenvalues.push_back(ev(i));
  if (with_vectors) {
    out.eigenvectors.resize(T.matrix.rows(), static_cast<Eigen::Index>(order.size()));
    for (std::size_t c = 0; c < order.size(); ++c)
      out.eigenvectors.col(static_cast<Eigen::Index>(c)) = vectors.col(order[c]);
  }
  out.clusters = cluster_roots(out.eigenvalues, tol_cluster);
  return out;
}

CorrespondenceReport correspondence_check(const CoefficientSet& cs, Complex k2, Complex lambda,
                                          const PlaneWaveBasis& basis) {
  const LinearizedOperator T = assemble_t1(cs, k2, lambda, basis);
  const T1Spectrum spec = t1_spectrum(T, true);
  const Eigen::Index n = T.dim();
  CorrespondenceReport out;
  out.scale = T.pencil.scale();
  out.eigenvalue_count = spec.eigenvalues.size();
  for (std::size_t c = 0; c < spec.eigenvalues.size(); ++c) {
    const Complex z = spec.eigenvalues[c];
    const CVector u = spec.eigenvectors.col(static_cast<Eigen::Index>(c)).head(n);
    const CVector r = T.pencil.K0 * u + z * (T.pencil.K1 * u) + (z * z) * (T.pencil.K2 * u);
    out.max_residual = std::max(out.max_residual, r.norm() / u.norm());
  }
  return out;
}

EigenvectorRelation eigenvector_relation(const CoefficientSet& cs, const Vec2& k, const PlaneWaveBasis& basis,
                                         int band) {
  const FiberMatrix H = assemble_fiber(cs, k.cast<Complex>(), basis);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(H.entries);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::SolverFailure, "Hermitian eigensolver failed");
  EigenvectorRelation out;
  out.lambda = es.eigenvalues()(band - 1);
  const CVector u = es.eigenvectors().col(band - 1);

  const LinearizedOperator T = assemble_t1(cs, k.y(), out.lambda, basis);
  const Eigen::Index n = T.dim();
  CVector w(2 * n);
  w.head(n) = u;
  w.tail(n) = k.x() * (T.pencil.K2 * u);
  out.residual = (T.matrix * w - k.x() * w).norm() / w.norm();
  out.scale = T.pencil.scale();
  return out;
}

namespace {

// Eigenvalues whose top-block weight on the outermost shell is small.
std::vector<Complex> interior_eigenvalues(const T1Spectrum& spec, const PlaneWaveBasis& basis, double max_weight) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  std::vector<Complex> out;
  for (std::size_t c = 0; c < spec.eigenvalues.size(); ++c) {
    const CVector u = spec.eigenvectors.col(static_cast<Eigen::Index>(c)).head(n);
    const double total = u.squaredNorm();
    double edge = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      if (radius(basis[static_cast<std::size_t>(i)]) == basis.N()) edge += std::norm(u(i));
    if (total > 0.0 && edge <= max_weight * total) out.push_back(spec.eigenvalues[c]);
  }
  return out;
}

PeriodicityReport match_shifted(std::span<const Complex> interior, std::span<const Complex> outer, double shift,
                                double tol) {
  PeriodicityReport rep;
  rep.shift = shift;
  rep.interior_count = interior.size();
  for (const Complex& z : interior) {
    const Complex target = z + shift;
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& w : outer) best = std::min(best, std::abs(w - target));
    if (best <= tol * (1.0 + std::abs(target))) {
      ++rep.matched;
      rep.max_mismatch = std::max(rep.max_mismatch, best);
    }
  }
  rep.matched_fraction = interior.empty() ? 0.0 : double(rep.matched) / double(interior.size());
  return rep;
}

void require_nested(const PlaneWaveBasis& inner, const PlaneWaveBasis& outer) {
  if (outer.N() < inner.N() + 2)
    throw Error(ErrorCode::InvalidArgument, "outer basis must exceed the inner one by at least two shells");
}

}  // namespace

PeriodicityReport periodicity_check(const CoefficientSet& cs, Complex k2, Complex lambda, const PlaneWaveBasis& inner,
                                    const PlaneWaveBasis& outer, double shift, const PeriodicityOptions& opt) {
  require_nested(inner, outer);
  const T1Spectrum si = t1_spectrum(assemble_t1(cs, k2, lambda, inner), true);
  const T1Spectrum so = t1_spectrum(assemble_t1(cs, k2, lambda, outer));
  const auto interior = interior_eigenvalues(si, inner, opt.boundary_weight);
  return match_shifted(interior, so.eigenvalues, shift, opt.tol_match);
}

PeriodicityReport periodicity_check(const CoefficientSet& cs, Complex k2, Complex lambda, const PlaneWaveBasis& inner,
                                    const PlaneWaveBasis& outer, const PeriodicityOptions& opt) {
  return periodicity_check(cs, k2, lambda, inner, outer, kTwoPi * cs.lattice.alpha(), opt);
}

double detect_period(const CoefficientSet& cs, Complex k2, Complex lambda, const PlaneWaveBasis& inner,
                     const PlaneWaveBasis& outer, const PeriodicityOptions& opt) {
  require_nested(inner, outer);
  const T1Spectrum si = t1_spectrum(assemble_t1(cs, k2, lambda, inner), true);
  const T1Spectrum so = t1_spectrum(assemble_t1(cs, k2, lambda, outer));
  const auto interior = interior_eigenvalues(si, inner, opt.boundary_weight);

  std::vector<double> shifts;
  for (std::size_t i = 0; i < interior.size(); ++i)
    for (std::size_t j = 0; j < interior.size(); ++j) {
      const Complex d = interior[j] - interior[i];
      if (std::abs(d.imag()) <= opt.tol_match && d.real() > opt.tol_match) shifts.push_back(d.real());
    }
  std::sort(shifts.begin(), shifts.end());
  std::vector<double> distinct;
  for (double s : shifts)
    if (distinct.empty() || s - distinct.back() > opt.tol_match * (1.0 + s)) distinct.push_back(s);

  for (std::size_t c = 0; c < distinct.size() && c < 32; ++c) {
    if (match_shifted(interior, so.eigenvalues, distinct[c], opt.tol_match).matched_fraction >= 0.9)
      return distinct[c];
  }
  return 0.0;
}

SpectrumWindow select_window(std::span<const Complex> eigenvalues, const Lattice2D& lat, const WindowPolicy& policy) {
  const double period = kTwoPi * lat.alpha();
  std::vector<double> re;
  for (const Complex& z : eigenvalues)
    if (std::abs(z.imag()) <= policy.im_cap + 1e-9) re.push_back(z.real());

  const auto distance_to_set = [&re](double x) {
    double d = std::numeric_limits<double>::infinity();
    for (double r : re) d = std::min(d, std::abs(r - x));
    return d;
  };

  double best_r0 = policy.re_center - 0.5 * period;
  double best_gap = -1.0;
  const int probes = std::max(1, policy.probes);
  for (int p = 0; p < probes; ++p) {
    const double r0 = policy.re_center - period + period * (p + 0.5) / probes;
    const double gap = std::min(distance_to_set(r0), distance_to_set(r0 + period));
    if (gap > best_gap) {
      best_gap = gap;
      best_r0 = r0;
    }
  }
  return SpectrumWindow{best_r0, best_r0 + period, -policy.im_cap, policy.im_cap};
}

DiscriminantScan degeneracy_scan(const CoefficientSet& cs, Complex lambda, std::span<const double> k2_values,
                                 const ScanPolicy& policy, const PlaneWaveBasis& basis, unsigned workers) {
  DiscriminantScan scan;
  scan.lambda = lambda;
  scan.entries.resize(k2_values.size());
  parallel_for(k2_values.size(), workers, [&](std::size_t i) {
    ScanEntry& e = scan.entries[i];
    e.k2 = k2_values[i];
    const T1Spectrum spec = t1_spectrum(assemble_t1(cs, e.k2, lambda, basis), false, policy.tol_cluster);
    e.window = select_window(spec.eigenvalues, cs.lattice, policy.window);
    try {
      const DiscriminantResult d = restricted_discriminant(spec.eigenvalues, e.window, policy.discriminant);
      e.delta = d.delta;
      e.abs = d.abs;
      e.log10_abs = d.log10_abs;
      e.count = d.roots.size();
      e.min_pair = d.min_pair;
      if (d.roots.size() >= 2) {
        e.pair_midpoint = 0.5 * (d.roots[d.pair_i] + d.roots[d.pair_j]);
        const bool real_pair = std::abs(e.pair_midpoint.imag()) <= policy.tol_real * (1.0 + std::abs(e.pair_midpoint));
        e.flag = (d.declared_zero || d.abs <= policy.tol_disc) && real_pair;
      }
    } catch (const Error& err) {
      if (err.code() != ErrorCode::BoundaryEigenvalue) throw;
      e.ok = false;
      e.error = err.what();
    }
  });
  return scan;
}

}  // namespace bandedge
