#pragma once

// Small dense SDP solver (log-det barrier, infeasible-start Newton) plus the
// specific problems used here and verifiers for closed-form dual points.
//
// Problem form:  minimize c^T x  subject to
//   F_k(x) = F_k0 + sum_i x_i F_ki  positive definite (Hermitian blocks),
//   G x <= h,  A x = b.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "abssep/absppt.hpp"
#include "abssep/bipartite.hpp"
#include "abssep/error.hpp"
#include "abssep/matcore.hpp"
#include "abssep/posmaps.hpp"
#include "abssep/witness.hpp"

namespace abssep {

struct LmiBlock {
  ComplexMatrix f0;
  std::vector<std::pair<int, ComplexMatrix>> terms;  // (variable index, coefficient)

  int size() const { return static_cast<int>(f0.rows()); }

  ComplexMatrix evaluate(const RealVector& x) const {
    ComplexMatrix f = f0;
    for (const auto& [i, fi] : terms) f += x(i) * fi;
    return f;
  }
};

struct SdpProblem {
  int n = 0;
  RealVector c;
  std::vector<LmiBlock> blocks;
  RealMatrix g;  // g x <= h
  RealVector h;
  RealMatrix a;  // a x = b
  RealVector b;

  explicit SdpProblem(int vars = 0) : n(vars), c(RealVector::Zero(vars)), g(0, vars), h(0), a(0, vars), b(0) {}

  void add_ineq(const RealVector& row, double rhs) {
    require(row.size() == n, ErrorCode::InvalidDim, "inequality row has wrong length");
    g.conservativeResize(g.rows() + 1, n);
    g.row(g.rows() - 1) = row.transpose();
    h.conservativeResize(h.size() + 1);
    h(h.size() - 1) = rhs;
  }

  void add_eq(const RealVector& row, double rhs) {
    require(row.size() == n, ErrorCode::InvalidDim, "equality row has wrong length");
    a.conservativeResize(a.rows() + 1, n);
    a.row(a.rows() - 1) = row.transpose();
    b.conservativeResize(b.size() + 1);
    b(b.size() - 1) = rhs;
  }

  /// Barrier parameter: total size of the cone.
  double theta() const {
    double t = static_cast<double>(g.rows());
    for (const auto& blk : blocks) t += blk.size();
    return t;
  }

  void validate() const {
    require(c.size() == n && g.cols() == n && a.cols() == n && g.rows() == h.size() && a.rows() == b.size(),
            ErrorCode::InvalidDim, "inconsistent SDP dimensions");
    for (const auto& blk : blocks) {
      require(blk.f0.rows() == blk.f0.cols(), ErrorCode::InvalidDim, "LMI block must be square");
      for (const auto& [i, fi] : blk.terms)
        require(i >= 0 && i < n && fi.rows() == blk.size() && fi.cols() == blk.size(), ErrorCode::InvalidDim,
                "LMI term has wrong shape or index");
    }
  }
};

struct SolveOptions {
  double gap_tol = 1e-7;
  double mu = 5.0;  // t grows by this factor (barrier weight shrinks by 0.2)
  double t0 = 1.0;
  int max_newton = 3000;
  std::optional<RealVector> x0;
};

struct SdpResult {
  double primal_value = 0.0;  // c^T x at the returned point
  double dual_value = 0.0;    // primal_value - theta / t, a lower bound at exact centrality
  RealVector x;
  int newton_steps = 0;
};

namespace detail {

struct BarrierEval {
  bool interior = false;
  double phi = 0.0;
  RealVector grad;
  RealMatrix hess;
};

inline BarrierEval barrier(const SdpProblem& p, const RealVector& x, bool with_derivatives) {
  BarrierEval e;
  e.phi = 0.0;
  if (with_derivatives) {
    e.grad = RealVector::Zero(p.n);
    e.hess = RealMatrix::Zero(p.n, p.n);
  }
  if (p.g.rows() > 0) {
    const RealVector s = p.h - p.g * x;
    if ((s.array() <= 0.0).any() || !s.allFinite()) return e;
    e.phi -= s.array().log().sum();
    if (with_derivatives) {
      const RealVector inv = s.cwiseInverse();
      e.grad += p.g.transpose() * inv;
      e.hess += p.g.transpose() * inv.cwiseAbs2().asDiagonal() * p.g;
    }
  }
  for (const auto& blk : p.blocks) {
    const ComplexMatrix f = blk.evaluate(x);
    Eigen::LLT<ComplexMatrix> llt(f);
    if (llt.info() != Eigen::Success) return e;
    const ComplexMatrix& l = llt.matrixLLT();
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
      const double d = l(i, i).real();
      if (!(d > 0.0) || !std::isfinite(d)) return e;
      logdet += 2.0 * std::log(d);
    }
    e.phi -= logdet;
    if (!with_derivatives || blk.terms.empty()) continue;
    const int s = blk.size();
    const auto k = static_cast<Eigen::Index>(blk.terms.size());
    ComplexMatrix cols(static_cast<Eigen::Index>(s) * s, k);
    for (Eigen::Index t = 0; t < k; ++t) {
      // G = L^{-1} F_i L^{-H}
      ComplexMatrix gm = llt.matrixL().solve(blk.terms[static_cast<std::size_t>(t)].second);
      gm = llt.matrixL().solve(ComplexMatrix(gm.adjoint())).adjoint();
      e.grad(blk.terms[static_cast<std::size_t>(t)].first) -= gm.trace().real();
      cols.col(t) = Eigen::Map<const ComplexVector>(gm.data(), gm.size());
    }
    const RealMatrix local = (cols.adjoint() * cols).real();
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j)
        e.hess(blk.terms[static_cast<std::size_t>(i)].first, blk.terms[static_cast<std::size_t>(j)].first) +=
            local(i, j);
  }
  e.interior = true;
  return e;
}

inline bool strictly_feasible(const SdpProblem& p, const RealVector& x) { return barrier(p, x, false).interior; }

// Minimizes t c^T x + phi(x) subject to A x = b from a point in the domain of
// phi; returns the number of Newton steps taken.
inline int center(const SdpProblem& p, double t, RealVector& x, RealVector& nu, int budget) {
  const auto m = p.a.rows();
  int steps = 0;
  for (; steps < budget; ++steps) {
    const BarrierEval e = barrier(p, x, true);
    const RealVector rd = t * p.c + e.grad + p.a.transpose() * nu;
    const RealVector rp = p.a * x - p.b;
    RealMatrix kkt = RealMatrix::Zero(p.n + m, p.n + m);
    kkt.topLeftCorner(p.n, p.n) = e.hess;
    kkt.topRightCorner(p.n, m) = p.a.transpose();
    kkt.bottomLeftCorner(m, p.n) = p.a;
    RealVector rhs(p.n + m);
    rhs << -(t * p.c + e.grad), -rp;
    const RealVector sol = kkt.partialPivLu().solve(rhs);
    const RealVector dx = sol.head(p.n);
    const RealVector dnu = sol.tail(m) - nu;
    const double decrement = dx.dot(e.hess * dx);
    const double rnorm = std::sqrt(rd.squaredNorm() + rp.squaredNorm());
    if (rp.norm() <= 1e-12 * (1.0 + p.b.norm()) && decrement / 2.0 <= 1e-10) break;
    if (!dx.allFinite()) fail(ErrorCode::MaxIterations, "Newton step is not finite");

    double s = 1.0;
    while (s > 1e-14 && !strictly_feasible(p, x + s * dx)) s *= 0.5;
    auto resid = [&](double step) {
      const RealVector xs = x + step * dx;
      const RealVector ns = nu + step * dnu;
      const BarrierEval es = barrier(p, xs, true);
      const RealVector a1 = t * p.c + es.grad + p.a.transpose() * ns;
      const RealVector a2 = p.a * xs - p.b;
      return std::sqrt(a1.squaredNorm() + a2.squaredNorm());
    };
    while (s > 1e-14 && resid(s) > (1.0 - 0.01 * s) * rnorm) s *= 0.5;
    if (s <= 1e-14) break;  // no further progress possible at this t
    x += s * dx;
    nu += s * dnu;
  }
  return steps;
}

}  // namespace detail

/// Phase I: find x with every F_k(x) positive definite, G x < h and A x = b,
/// by minimizing a common shift s.  Throws NoInteriorPoint if none exists.
inline RealVector find_interior_point(const SdpProblem& p, const RealVector& guess) {
  if (detail::strictly_feasible(p, guess) && (p.a * guess - p.b).norm() <= 1e-12 * (1.0 + p.b.norm()))
    return guess;
  SdpProblem q(p.n + 1);
  const int s = p.n;
  q.c(s) = 1.0;
  double shift = 0.0;
  for (const auto& blk : p.blocks) {
    LmiBlock nb = blk;
    nb.terms.emplace_back(s, ComplexMatrix::Identity(blk.size(), blk.size()));
    q.blocks.push_back(nb);
    shift = std::max(shift, -eigvalsh(HermitianMatrix(blk.evaluate(guess)))(blk.size() - 1));
  }
  for (Eigen::Index r = 0; r < p.g.rows(); ++r) {
    RealVector row(q.n);
    row << p.g.row(r).transpose(), -1.0;
    q.add_ineq(row, p.h(r));
    shift = std::max(shift, p.g.row(r).dot(guess) - p.h(r));
  }
  RealVector lower = RealVector::Zero(q.n);
  lower(s) = -1.0;
  q.add_ineq(lower, 1.0);  // s >= -1 keeps phase I bounded
  // Box around the guess; without it the barrier can drift off along recession directions.
  const double box = 1e3 * (1.0 + (guess.size() > 0 ? guess.cwiseAbs().maxCoeff() : 0.0));
  for (int i = 0; i < p.n; ++i) {
    RealVector row = RealVector::Zero(q.n);
    row(i) = 1.0;
    q.add_ineq(row, guess(i) + box);
    row(i) = -1.0;
    q.add_ineq(row, box - guess(i));
  }
  for (Eigen::Index r = 0; r < p.a.rows(); ++r) {
    RealVector row = RealVector::Zero(q.n);
    row.head(p.n) = p.a.row(r).transpose();
    q.add_eq(row, p.b(r));
  }
  RealVector x(q.n);
  x << guess, shift + 1.0;
  RealVector nu = RealVector::Zero(q.a.rows());
  double t = 1.0;
  for (int outer = 0; outer < 60; ++outer) {
    detail::center(q, t, x, nu, 200);
    if (x(s) < -1e-6 && (q.a * x - q.b).norm() <= 1e-10 * (1.0 + q.b.norm())) {
      RealVector out = x.head(p.n);
      if (detail::strictly_feasible(p, out)) return out;
    }
    if (q.theta() / t < 1e-9) break;
    t *= 5.0;
  }
  fail(ErrorCode::NoInteriorPoint, "no strictly feasible point found");
}

inline SdpResult solve(const SdpProblem& p, const SolveOptions& opt = {}) {
  p.validate();
  RealVector x = opt.x0 ? *opt.x0 : RealVector(RealVector::Zero(p.n));
  require(x.size() == p.n, ErrorCode::InvalidDim, "starting point has wrong length");
  x = find_interior_point(p, x);
  RealVector nu = RealVector::Zero(p.a.rows());
  const double theta = p.theta();
  double t = opt.t0;
  int steps = 0;
  for (;;) {
    steps += detail::center(p, t, x, nu, 200);
    if (steps > opt.max_newton) fail(ErrorCode::MaxIterations, "barrier method exceeded its Newton budget");
    if (theta / t <= opt.gap_tol) break;
    t *= opt.mu;
  }
  SdpResult r;
  r.x = x;
  r.primal_value = p.c.dot(x);
  r.dual_value = r.primal_value - theta / t;
  r.newton_steps = steps;
  return r;
}

// ---------------------------------------------------------------------------
// Parametrized Hermitian matrix variables.

/// Maps a block of SDP variables to a d x d Hermitian matrix: d(d+1)/2
/// variables when real symmetric, d^2 when complex Hermitian.
struct HermitianVariable {
  int dim = 0;
  int offset = 0;
  bool complex = false;

  int count() const { return complex ? dim * dim : dim * (dim + 1) / 2; }

  /// Basis matrices paired with their variable index.
  std::vector<std::pair<int, ComplexMatrix>> basis() const {
    std::vector<std::pair<int, ComplexMatrix>> out;
    int k = offset;
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        ComplexMatrix e = ComplexMatrix::Zero(dim, dim);
        e(i, j) = 1.0;
        e(j, i) = 1.0;
        out.emplace_back(k++, e);
      }
    if (complex)
      for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
          ComplexMatrix e = ComplexMatrix::Zero(dim, dim);
          e(i, j) = Complex(0.0, 1.0);
          e(j, i) = Complex(0.0, -1.0);
          out.emplace_back(k++, e);
        }
    return out;
  }

  ComplexMatrix value(const RealVector& x) const {
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (const auto& [i, e] : basis()) m += x(i) * e;
    return m;
  }

  /// Variable values for a given Hermitian matrix.
  void assign(const ComplexMatrix& m, RealVector& x) const {
    int k = offset;
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) x(k++) = m(i, j).real();
    if (complex)
      for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) x(k++) = m(i, j).imag();
  }
};

inline bool is_real(const ComplexMatrix& m) { return m.imag().cwiseAbs().maxCoeff() == 0.0; }

// ---------------------------------------------------------------------------
// Minimum of a witness over absolutely PPT spectra.

enum class LmiMode { Full, Submatrix2x2 };

/// min sum_j lambda_j mu_{mn-j+1} over descending nonnegative unit-sum lambda
/// satisfying the selected LMIs.  mu must be descending.
inline SdpResult min_witness_solve(const std::vector<double>& mu, Dims d, LmiMode mode,
                                   const SolveOptions& opt = {}) {
  check_dims(d);
  const int mn = d.total();
  require(static_cast<int>(mu.size()) == mn, ErrorCode::InvalidDim, "witness spectrum must have length mn");
  for (std::size_t i = 0; i + 1 < mu.size(); ++i)
    require(mu[i] >= mu[i + 1], ErrorCode::DomainError, "witness spectrum must be descending");
  std::vector<Lmi> lmis;
  if (mode == LmiMode::Full) {
    require(d.min() <= 3, ErrorCode::Unsupported, "full LMI set only available for min(m, n) <= 3");
    lmis = build_lmis(d.a, d.b).matrices;
  } else if (d.min() >= 2) {
    lmis.push_back(necessary_lmi(mn));
  }

  SdpProblem p(mn);
  for (int j = 0; j < mn; ++j) p.c(j) = mu[static_cast<std::size_t>(mn - 1 - j)];
  for (const Lmi& l : lmis) {
    LmiBlock blk;
    blk.f0 = ComplexMatrix::Zero(l.size, l.size);
    std::vector<ComplexMatrix> coef(static_cast<std::size_t>(mn), ComplexMatrix::Zero(l.size, l.size));
    std::vector<bool> used(static_cast<std::size_t>(mn), false);
    for (int r = 0; r < l.size; ++r)
      for (int s = 0; s < l.size; ++s)
        for (const auto& term : l.at(r, s)) {
          coef[static_cast<std::size_t>(term.index - 1)](r, s) += term.coeff;
          used[static_cast<std::size_t>(term.index - 1)] = true;
        }
    for (int j = 0; j < mn; ++j)
      if (used[static_cast<std::size_t>(j)]) blk.terms.emplace_back(j, coef[static_cast<std::size_t>(j)]);
    p.blocks.push_back(blk);
  }
  for (int j = 0; j + 1 < mn; ++j) {
    RealVector row = RealVector::Zero(mn);
    row(j) = -1.0;
    row(j + 1) = 1.0;
    p.add_ineq(row, 0.0);
  }
  RealVector last = RealVector::Zero(mn);
  last(mn - 1) = -1.0;
  p.add_ineq(last, 0.0);
  p.add_eq(RealVector::Ones(mn), 1.0);

  SolveOptions o = opt;
  if (!o.x0) {
    RealVector x0(mn);
    for (int j = 0; j < mn; ++j) x0(j) = 1.0 + 0.01 * (mn - 1 - 2.0 * j) / mn;
    o.x0 = x0 / x0.sum();
  }
  return solve(p, o);
}

inline double min_witness_over_abs_ppt(const std::vector<double>& mu, Dims d, LmiMode mode) {
  return min_witness_solve(mu, d, mode).primal_value;
}

// ---------------------------------------------------------------------------
// Diamond norm and largest eigenvalue bounds for maps on M_n.

struct DiamondCertificate {
  ComplexMatrix y0;
  ComplexMatrix y1;
};

struct CertificateCheck {
  double objective = 0.0;
  double min_eigenvalue = 0.0;  // of the PSD condition being certified
};

inline constexpr double kCertificatePsdTol = 1e-10;

/// Checks [[Y0, -J], [-J^dagger, Y1]] >= 0 with J = J(phi^dagger) and returns
/// 1/2 |Tr_2 Y0| + 1/2 |Tr_2 Y1|, an upper bound on the diamond norm of phi^dagger.
inline CertificateCheck check_diamond_certificate(const MapSpec& phi, const DiamondCertificate& cert) {
  const BipartiteOperator j = choi_matrix(dual_map(phi));
  const Dims d = j.dims();
  require(cert.y0.rows() == d.total() && cert.y1.rows() == d.total(), ErrorCode::InvalidDim,
          "certificate has wrong size");
  const auto n = d.total();
  ComplexMatrix big(2 * n, 2 * n);
  big << cert.y0, -j.matrix(), -j.matrix().adjoint(), cert.y1;
  CertificateCheck c;
  c.min_eigenvalue = eigvalsh(HermitianMatrix(big))(2 * n - 1);
  const ComplexMatrix t0 = partial_trace(cert.y0, d, Subsystem::Second);
  const ComplexMatrix t1 = partial_trace(cert.y1, d, Subsystem::Second);
  c.objective = 0.5 * operator_norm(t0) + 0.5 * operator_norm(t1);
  return c;
}

/// Checks Y >= 0 and returns lambda_max((id (x) T)(Y) + J(phi^dagger)), an upper
/// bound on every eigenvalue of (id (x) phi^dagger)(|v><v|).
inline CertificateCheck check_lambda_max_certificate(const MapSpec& phi, const ComplexMatrix& y) {
  const BipartiteOperator j = choi_matrix(dual_map(phi));
  const Dims d = j.dims();
  require(y.rows() == d.total() && y.cols() == d.total(), ErrorCode::InvalidDim, "certificate has wrong size");
  CertificateCheck c;
  const RealVector ev = eigvalsh(HermitianMatrix(y));
  c.min_eigenvalue = ev(ev.size() - 1);
  c.objective = max_eigenvalue(HermitianMatrix(ComplexMatrix(partial_transpose(y, d) + j.matrix())));
  return c;
}

/// Diamond norm of phi^dagger by SDP: minimize (s0 + s1)/2 subject to
/// s_k I - Tr_2 Y_k >= 0 and [[Y0, -J], [-J^dagger, Y1]] >= 0.
inline SdpResult diamond_norm_solve(const MapSpec& phi, const SolveOptions& opt = {}) {
  const BipartiteOperator jop = choi_matrix(dual_map(phi));
  const Dims d = jop.dims();
  const ComplexMatrix& j = jop.matrix();
  const int n = d.total();
  const bool cplx = !is_real(j);
  HermitianVariable y0{n, 0, cplx};
  HermitianVariable y1{n, y0.count(), cplx};
  const int s0 = y0.count() + y1.count();
  const int s1 = s0 + 1;
  SdpProblem p(s1 + 1);
  p.c(s0) = 0.5;
  p.c(s1) = 0.5;

  LmiBlock big;
  big.f0 = ComplexMatrix::Zero(2 * n, 2 * n);
  big.f0.topRightCorner(n, n) = -j;
  big.f0.bottomLeftCorner(n, n) = -j.adjoint();
  for (const auto& [i, e] : y0.basis()) {
    ComplexMatrix f = ComplexMatrix::Zero(2 * n, 2 * n);
    f.topLeftCorner(n, n) = e;
    big.terms.emplace_back(i, f);
  }
  for (const auto& [i, e] : y1.basis()) {
    ComplexMatrix f = ComplexMatrix::Zero(2 * n, 2 * n);
    f.bottomRightCorner(n, n) = e;
    big.terms.emplace_back(i, f);
  }
  p.blocks.push_back(big);
  for (int k = 0; k < 2; ++k) {
    const HermitianVariable& yk = k == 0 ? y0 : y1;
    LmiBlock blk;
    blk.f0 = ComplexMatrix::Zero(d.a, d.a);
    for (const auto& [i, e] : yk.basis()) blk.terms.emplace_back(i, -partial_trace(e, d, Subsystem::Second));
    blk.terms.emplace_back(k == 0 ? s0 : s1, ComplexMatrix::Identity(d.a, d.a));
    p.blocks.push_back(blk);
  }

  SolveOptions o = opt;
  if (!o.x0) {
    const double kappa = operator_norm(j) + 1.0;
    RealVector x0 = RealVector::Zero(p.n);
    y0.assign(kappa * ComplexMatrix::Identity(n, n), x0);
    y1.assign(kappa * ComplexMatrix::Identity(n, n), x0);
    x0(s0) = x0(s1) = kappa * d.b + 1.0;
    o.x0 = x0;
  }
  return solve(p, o);
}

/// Upper bound on the diamond norm of phi^dagger: from the certificate when
/// given (rejecting it if the block matrix is not PSD), else by SDP.
inline double diamond_norm_ub(const MapSpec& phi, const std::optional<DiamondCertificate>& cert = std::nullopt) {
  if (!cert) return diamond_norm_solve(phi).primal_value;
  const CertificateCheck c = check_diamond_certificate(phi, *cert);
  if (c.min_eigenvalue < -kCertificatePsdTol)
    fail(ErrorCode::CertificateRejected,
         "diamond certificate is not PSD (min eigenvalue " + std::to_string(c.min_eigenvalue) + ")");
  return c.objective;
}

/// Every eigenvalue of (id (x) phi^dagger)(|v><v|) is at least (1 - diamond)/2.
inline double min_eig_lb_from_diamond(double diamond_ub) {
  require(diamond_ub >= 1.0 - 1e-12, ErrorCode::DomainError, "diamond norm bound must be at least 1");
  return (1.0 - diamond_ub) / 2.0;
}

/// max Tr(J rho) over rho >= 0, (id (x) T)(rho) >= 0, Tr rho <= 1, with J = J(phi^dagger).
/// The result is stated for the maximization: primal_value is the attained
/// value and dual_value the upper bound.
inline SdpResult max_eig_solve(const MapSpec& phi, const SolveOptions& opt = {}) {
  const BipartiteOperator jop = choi_matrix(dual_map(phi));
  const Dims d = jop.dims();
  const ComplexMatrix& j = jop.matrix();
  const int n = d.total();
  HermitianVariable rho{n, 0, !is_real(j)};
  SdpProblem p(rho.count());
  LmiBlock pos, ppt;
  pos.f0 = ppt.f0 = ComplexMatrix::Zero(n, n);
  RealVector tr = RealVector::Zero(p.n);
  for (const auto& [i, e] : rho.basis()) {
    p.c(i) = -(j.cwiseProduct(e.transpose())).sum().real();
    pos.terms.emplace_back(i, e);
    ppt.terms.emplace_back(i, partial_transpose(e, d));
    tr(i) = e.trace().real();
  }
  p.blocks = {pos, ppt};
  p.add_ineq(tr, 1.0);
  SolveOptions o = opt;
  if (!o.x0) {
    RealVector x0 = RealVector::Zero(p.n);
    rho.assign(ComplexMatrix::Identity(n, n) / (2.0 * n), x0);
    o.x0 = x0;
  }
  SdpResult r = solve(p, o);
  const double attained = -r.primal_value;
  const double bound = -r.dual_value;
  r.primal_value = attained;
  r.dual_value = bound;
  return r;
}

inline double max_eig_ub(const MapSpec& phi, const std::optional<ComplexMatrix>& cert = std::nullopt) {
  if (!cert) return max_eig_solve(phi).dual_value;
  const CertificateCheck c = check_lambda_max_certificate(phi, *cert);
  if (c.min_eigenvalue < -kCertificatePsdTol)
    fail(ErrorCode::CertificateRejected,
         "lambda_max certificate Y is not PSD (min eigenvalue " + std::to_string(c.min_eigenvalue) + ")");
  return c.objective;
}

// ---------------------------------------------------------------------------
// Closed-form certificates.  Indices below are 0-based positions in the
// standard basis |i>|k> -> 3i + k.

namespace detail {

inline ComplexMatrix sym9(std::initializer_list<std::tuple<int, int, double>> entries) {
  ComplexMatrix m = ComplexMatrix::Zero(9, 9);
  for (const auto& [i, j, v] : entries) {
    m(i, j) = v;
    m(j, i) = v;
  }
  return m;
}

}  // namespace detail

/// Diamond bound 4/3 for the dual Choi map.
inline DiamondCertificate choi_diamond_certificate() {
  const double s = 1.0 / 6.0;
  const ComplexMatrix y = detail::sym9({{0, 0, 5 * s}, {1, 1, 3 * s}, {4, 4, 5 * s}, {5, 5, 3 * s}, {6, 6, 3 * s},
                                        {8, 8, 5 * s}, {0, 4, -s}, {0, 8, -s}, {4, 8, -s}});
  return {y, y};
}

/// Largest-eigenvalue bound 2/3 for the dual Choi map.
inline ComplexMatrix choi_lambda_max_certificate() {
  const double s = 1.0 / 6.0;
  return detail::sym9({{1, 1, s}, {1, 3, 2 * s}, {3, 3, 4 * s}, {2, 2, 4 * s}, {2, 6, 2 * s}, {6, 6, s},
                       {5, 5, s}, {5, 7, 2 * s}, {7, 7, 4 * s}});
}

/// Diamond bound (3 + b + c)/3 for the dual of Phi_{b,c}, valid for b + c <= 3.
inline DiamondCertificate generalized_choi_diamond_certificate(double b, double c) {
  const double d = (6.0 - b - c) / 6.0;
  const double o = (2.0 * b + 2.0 * c - 3.0) / 6.0;
  const ComplexMatrix y = detail::sym9({{0, 0, d}, {1, 1, b / 2}, {2, 2, c / 2}, {3, 3, c / 2}, {4, 4, d},
                                        {5, 5, b / 2}, {6, 6, b / 2}, {7, 7, c / 2}, {8, 8, d}, {0, 4, o},
                                        {0, 8, o}, {4, 8, o}});
  return {y, y};
}

struct GeneralizedChoiLambdaMax {
  ComplexMatrix y;
  double claimed = 0.0;
  bool case_one = false;  // 2b + c >= 3 or b + 2c >= 3
  double x = 0.0, yv = 0.0;
};

/// Largest-eigenvalue certificates for the dual of Phi_{b,c}: Y = 0 with bound
/// max{b, c}/2 when 2b + c >= 3 or b + 2c >= 3, otherwise the (x, y) matrix
/// with bound (b^2 + c^2 - 6(b + c) + bc + 9) / (6(2 - b - c)).
inline GeneralizedChoiLambdaMax generalized_choi_lambda_max_certificate(double b, double c) {
  GeneralizedChoiLambdaMax out;
  if (2.0 * b + c >= 3.0 || b + 2.0 * c >= 3.0) {
    out.case_one = true;
    out.y = ComplexMatrix::Zero(9, 9);
    out.claimed = std::max(b, c) / 2.0;
    return out;
  }
  const double den = 6.0 * (2.0 - b - c);
  const double x = (3.0 - 2.0 * b - c) * (3.0 - 2.0 * b - c) / den;
  const double y = (3.0 - b - 2.0 * c) * (3.0 - b - 2.0 * c) / den;
  const double r = std::sqrt(x * y);
  out.x = x;
  out.yv = y;
  out.y = detail::sym9({{1, 1, x}, {1, 3, r}, {2, 2, y}, {2, 6, r}, {3, 3, y}, {5, 5, x}, {5, 7, r}, {6, 6, x},
                        {7, 7, y}});
  out.claimed = (b * b + c * c - 6.0 * (b + c) + b * c + 9.0) / den;
  return out;
}

/// Y0 = Y1 = J(Phi_BH^dagger) + 2|psi+><psi+|, diamond bound (n + 2)/n.
inline DiamondCertificate breuer_hall_diamond_certificate(int n) {
  const MapSpec bh = MapSpec::breuer_hall(n);
  const ComplexMatrix y = choi_matrix(dual_map(bh)).matrix() + 2.0 * projector(max_entangled(n));
  return {y, y};
}

/// Y = n/(n-2) (I (x) V)|psi+><psi+|(I (x) V^dagger), bound 1/(n - 2).
inline ComplexMatrix breuer_hall_lambda_max_certificate(int n) {
  const MapSpec bh = MapSpec::breuer_hall(n);
  const ComplexMatrix iv = kron(ComplexMatrix(ComplexMatrix::Identity(n, n)), bh.v());
  const ComplexVector psi = max_entangled(n);
  return (static_cast<double>(n) / (n - 2)) * iv * projector(psi) * iv.adjoint();
}

}  // namespace abssep
