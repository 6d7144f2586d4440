#pragma once

// Witness eigenvalue summaries, the piecewise bound f on the largest
// eigenvalue, and the constructive dual points for the reduced witness SDP.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "abssep/error.hpp"
#include "abssep/matcore.hpp"

namespace abssep {

namespace lemma2 {

inline const double kBranch1End = -1.0 / (2.0 * std::sqrt(2.0));  // -1/(2 sqrt2)
inline const double kBranch3Start = (1.0 - std::sqrt(2.0)) / 2.0;

}  // namespace lemma2

/// Largest eigenvalue a unit-trace witness may have, given the sum of its
/// negative eigenvalues x, without detecting any absolutely PPT state.
inline double f_lemma2(double x) {
  require(x >= -0.5 && x <= 0.0, ErrorCode::DomainError, "f is defined on [-1/2, 0]");
  if (x <= lemma2::kBranch1End) return (std::sqrt(std::max(0.0, 1.0 - 4.0 * x * x)) - 2.0 * x + 1.0) / 4.0;
  if (x < lemma2::kBranch3Start) return (1.0 + std::sqrt(2.0)) / 4.0;
  return (std::sqrt(std::max(0.0, 1.0 + 4.0 * x - 4.0 * x * x)) - 2.0 * x + 3.0) / 4.0;
}

struct WitnessSummary {
  double mu1 = 0.0;    // largest eigenvalue
  double ell = 0.0;    // sum of negative eigenvalues
  int neg_count = 0;
  double trace = 1.0;
};

inline constexpr double kWitnessTraceTol = 1e-9;

inline WitnessSummary summarize(const HermitianMatrix& w) {
  const double tr = w.trace();
  require(std::abs(tr - 1.0) <= kWitnessTraceTol, ErrorCode::Unnormalized,
          "witness must have unit trace (got " + std::to_string(tr) + ")");
  const RealVector ev = eigvalsh(w);
  WitnessSummary s;
  s.mu1 = ev(0);
  s.trace = tr;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) < 0.0) {
      s.ell += ev(i);
      ++s.neg_count;
    }
  return s;
}

enum class Detectability { Guaranteed, Inconclusive };

inline std::string to_string(Detectability d) {
  return d == Detectability::Guaranteed ? "Guaranteed" : "Inconclusive";
}

inline constexpr double kFSlack = 1e-12;

/// Guaranteed means the witness is nonnegative on every absolutely PPT state.
inline Detectability cannot_detect_abs_ppt(double ell, double mu1) {
  if (ell < -0.5) return Detectability::Inconclusive;
  return mu1 <= f_lemma2(std::min(ell, 0.0)) + kFSlack ? Detectability::Guaranteed : Detectability::Inconclusive;
}

inline Detectability cannot_detect_abs_ppt(const WitnessSummary& ws) { return cannot_detect_abs_ppt(ws.ell, ws.mu1); }

/// Worst-case witness spectrum (descending, length mn) with given mu1 and ell:
/// one negative eigenvalue ell, then the remaining mass 1 - mu1 - ell packed
/// greedily into mu2, mu3, ... each capped at mu1.
inline std::vector<double> extremal_witness_spectrum(double ell, double mu1, int mn) {
  require(mn >= 4, ErrorCode::InvalidDim, "need mn >= 4");
  require(ell <= 0.0 && mu1 > 0.0, ErrorCode::DomainError, "need ell <= 0 < mu1");
  std::vector<double> mu(static_cast<std::size_t>(mn), 0.0);
  mu[0] = mu1;
  mu[static_cast<std::size_t>(mn - 1)] = ell;
  double rest = 1.0 - mu1 - ell;
  require(rest >= -1e-15, ErrorCode::DomainError, "mu1 + ell exceeds 1");
  for (int i = 1; i < mn - 1 && rest > 0.0; ++i) {
    mu[static_cast<std::size_t>(i)] = std::min(mu1, rest);
    rest -= mu[static_cast<std::size_t>(i)];
  }
  require(rest <= 1e-15, ErrorCode::DomainError, "mu1 too small to carry unit trace");
  return mu;
}

/// Dual point (t, a, b, c, y) for the reduced witness SDP.  t is the certified
/// lower bound on the primal value.
struct Lemma2Certificate {
  double t = 0.0;
  double aa = 0.0, bb = 0.0, cc = 0.0;
  std::vector<double> y;  // y[0] is y_1; length mn - 1
};

struct Lemma2Check {
  double residual = 0.0;   // largest equality violation
  double slack = 0.0;      // mu1 - (t + 2a - y_{mn-1}), must be >= 0
  double min_y = 0.0;
  double psd_min = 0.0;    // smallest eigenvalue of [[a, b], [b, c]]
  double det_gap = 0.0;    // b^2 - a c
  bool feasible = false;
};

/// Objective coefficients of the reduced primal: sum_j lambda_j mu_{mn-j+1}
/// with the extremal witness spectrum, i.e. c_j for j = 1..mn (index 0 = c_1).
inline std::vector<double> lemma2_objective(double ell, double mu1, int mn) {
  std::vector<double> mu = extremal_witness_spectrum(ell, mu1, mn);
  std::reverse(mu.begin(), mu.end());
  return mu;
}

/// Checks c = t 1 + M^*(Z) + D^T y + z e_mn with z >= 0, where M(lambda) is the
/// 2x2 necessary LMI, D the ordering differences lambda_i - lambda_{i+1} and
/// Z = [[a, b], [b, c]].  The dual is derived from the primal here rather than
/// transcribed, so it is valid for every mn >= 4.
inline Lemma2Check check_lemma2_certificate(const Lemma2Certificate& cert, double ell, double mu1, int mn,
                                            double tol = 1e-10) {
  require(static_cast<int>(cert.y.size()) == mn - 1, ErrorCode::InvalidDim, "y must have length mn - 1");
  const std::vector<double> c = lemma2_objective(ell, mu1, mn);
  auto y = [&](int i) { return i >= 1 && i <= mn - 1 ? cert.y[static_cast<std::size_t>(i - 1)] : 0.0; };
  Lemma2Check out;
  for (int j = 1; j <= mn; ++j) {
    double rhs = cert.t + y(j) - y(j - 1);
    if (j == 1) rhs -= 2.0 * cert.bb;
    if (j == mn - 1) rhs += 2.0 * cert.bb;
    if (j == mn - 2) rhs += 2.0 * cert.cc;
    if (j == mn) rhs += 2.0 * cert.aa;
    const double r = c[static_cast<std::size_t>(j - 1)] - rhs;
    if (j == mn)
      out.slack = r;
    else
      out.residual = std::max(out.residual, std::abs(r));
  }
  out.min_y = *std::min_element(cert.y.begin(), cert.y.end());
  const double tr = cert.aa + cert.cc;
  const double disc = std::sqrt(std::max(0.0, (cert.aa - cert.cc) * (cert.aa - cert.cc) + 4.0 * cert.bb * cert.bb));
  out.psd_min = (tr - disc) / 2.0;
  out.det_gap = cert.bb * cert.bb - cert.aa * cert.cc;
  out.feasible = out.residual <= tol && out.slack >= -tol && out.min_y >= -1e-12 && out.psd_min >= -tol;
  return out;
}

enum class Lemma2Case { A, B, C };

inline Lemma2Case lemma2_case(double ell) {
  require(ell >= -0.5 && ell <= 0.0, ErrorCode::DomainError, "ell must lie in [-1/2, 0]");
  if (ell <= lemma2::kBranch1End) return Lemma2Case::A;
  if (ell < lemma2::kBranch3Start) return Lemma2Case::B;
  return Lemma2Case::C;
}

/// Feasible dual point with t = 0 at mu1 = f(ell).  Case B reuses the case-A
/// point at ell' = -1/(2 sqrt2) and shifts y_1..y_{mn-3} up by ell - ell',
/// which keeps every constraint satisfied at the actual ell.
inline Lemma2Certificate build_lemma2_certificate(double ell, double mu1, int mn) {
  require(mn >= 4, ErrorCode::InvalidDim, "need mn >= 4");
  const Lemma2Case kase = lemma2_case(ell);
  require(std::abs(mu1 - f_lemma2(ell)) <= 1e-9, ErrorCode::DomainError, "mu1 must equal f(ell)");
  Lemma2Certificate cert;
  cert.y.assign(static_cast<std::size_t>(mn - 1), 0.0);
  auto case_a = [&](double l, double m) {
    cert.aa = (l + 2.0 * m) / 2.0;
    cert.bb = -l / 2.0;
    cert.cc = (1.0 - 2.0 * m - l) / 2.0;
    cert.y[static_cast<std::size_t>(mn - 2)] = m + l;
  };
  switch (kase) {
    case Lemma2Case::A: case_a(ell, mu1); break;
    case Lemma2Case::B: {
      const double lp = lemma2::kBranch1End;
      case_a(lp, f_lemma2(lp));
      for (int i = 0; i < mn - 3; ++i) cert.y[static_cast<std::size_t>(i)] += ell - lp;
      break;
    }
    case Lemma2Case::C:
      cert.aa = mu1 / 2.0;
      cert.bb = (1.0 - mu1 - ell) / 2.0;
      cert.cc = (1.0 - mu1) / 2.0;
      for (int i = 0; i < mn - 3; ++i) cert.y[static_cast<std::size_t>(i)] = 1.0 - mu1;
      break;
  }
  return cert;
}

struct RealignmentBounds {
  double ell_lower;
  double mu1_upper;
};

/// Bounds on (ell, mu1) for unit-trace witnesses I - sum A_i (x) B_i.
inline RealignmentBounds realignment_witness_bounds(int m, int n) {
  require(m >= 2 && n >= 2, ErrorCode::InvalidDim, "need m, n >= 2");
  const double r = std::sqrt(static_cast<double>(m) * n);
  return {(1.0 - std::sqrt(2.0 * r / (r - 1.0))) / 2.0, std::sqrt(2.0 / (r * r - r))};
}

/// |Tr sum_i A_i (x) B_i| for Hilbert-Schmidt orthonormal lists.
inline double schmidt_trace_bound_check(const std::vector<ComplexMatrix>& as, const std::vector<ComplexMatrix>& bs,
                                        double tol = 1e-8) {
  require(as.size() == bs.size() && !as.empty(), ErrorCode::InvalidDim, "lists must be nonempty and equal length");
  auto orthonormal = [&](const std::vector<ComplexMatrix>& ops) {
    for (std::size_t i = 0; i < ops.size(); ++i)
      for (std::size_t j = i; j < ops.size(); ++j) {
        const Complex ip = (ops[i].adjoint() * ops[j]).trace();
        if (std::abs(ip - (i == j ? 1.0 : 0.0)) > tol) return false;
      }
    return true;
  };
  require(orthonormal(as) && orthonormal(bs), ErrorCode::InvalidMatrix, "operators are not orthonormal");
  Complex s = 0.0;
  for (std::size_t i = 0; i < as.size(); ++i) s += as[i].trace() * bs[i].trace();
  return std::abs(s);
}

}  // namespace abssep
