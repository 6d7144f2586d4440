#pragma once

// Dense complex Hermitian linear algebra: eigendecomposition, Schatten norms
// and tolerance-aware positive-semidefiniteness.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "abssep/error.hpp"

namespace abssep {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitizeTol = 1e-8;
inline constexpr double kDefaultPsdTol = 1e-9;

/// Square complex matrix that is exactly Hermitian after construction.
/// Inputs within kHermitizeTol * (1 + |A|_F) of Hermitian are symmetrized
/// as (A + A^dagger) / 2; anything further away is rejected.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  /// Accepts any real or complex Eigen expression.
  template <typename Derived>
  explicit HermitianMatrix(const Eigen::MatrixBase<Derived>& a) {
    if constexpr (Eigen::NumTraits<typename Derived::Scalar>::IsComplex)
      init(ComplexMatrix(a));
    else
      init(ComplexMatrix(a.template cast<Complex>()));
  }

  static HermitianMatrix identity(Eigen::Index n) {
    return HermitianMatrix(ComplexMatrix::Identity(n, n));
  }

  Eigen::Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }

  HermitianMatrix operator+(const HermitianMatrix& o) const { return HermitianMatrix(m_ + o.m_); }
  HermitianMatrix operator-(const HermitianMatrix& o) const { return HermitianMatrix(m_ - o.m_); }
  HermitianMatrix operator*(double s) const { return HermitianMatrix(m_ * s); }
  HermitianMatrix operator/(double s) const { return HermitianMatrix(m_ / s); }

 private:
  void init(const ComplexMatrix& a) {
    require(a.rows() == a.cols() && a.rows() > 0, ErrorCode::InvalidMatrix,
            "Hermitian matrix must be square and nonempty");
    require(a.allFinite(), ErrorCode::InvalidMatrix, "non-finite entries");
    const double asym = (a - a.adjoint()).norm();
    require(asym <= kHermitizeTol * (1.0 + a.norm()), ErrorCode::InvalidMatrix,
            "matrix is not Hermitian (|A - A^dagger|_F = " + std::to_string(asym) + ")");
    m_ = (a + a.adjoint()) / 2.0;
  }

  ComplexMatrix m_;
};

inline HermitianMatrix operator*(double s, const HermitianMatrix& h) { return h * s; }

struct EigenDecomposition {
  RealVector values;      // descending
  ComplexMatrix vectors;  // columns are the matching orthonormal eigenvectors
};

namespace detail {

// Implicit-shift QL on a real symmetric tridiagonal matrix (diag d, subdiag
// e[i] = T(i+1, i)); rotations are accumulated into the columns of z.
inline void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, RealMatrix& z) {
  const int n = static_cast<int>(d.size());
  if (n <= 1) return;
  e.resize(n);
  e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        require(iter++ < 100, ErrorCode::MaxIterations, "tridiagonal QL did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (int k = 0; k < z.rows(); ++k) {
            f = z(k, i + 1);
            z(k, i + 1) = s * z(k, i) + c * f;
            z(k, i) = c * z(k, i) - s * f;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace detail

/// Hermitian eigendecomposition by Householder reduction to a complex
/// tridiagonal form, a diagonal phase change to make it real, and implicit QL.
/// Eigenvalues come back descending; ties keep their QL output order.
inline EigenDecomposition eigh(const HermitianMatrix& h) {
  const Eigen::Index n = h.dim();
  ComplexMatrix a = h.matrix();
  require(a.allFinite(), ErrorCode::InvalidMatrix, "non-finite entries");
  ComplexMatrix q = ComplexMatrix::Identity(n, n);

  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index len = n - k - 1;
    ComplexVector x = a.col(k).tail(len);
    const double xnorm = x.norm();
    if (xnorm == 0.0) continue;
    const Complex x0 = x(0);
    const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0, 0.0) : x0 / std::abs(x0);
    ComplexVector v = x;
    v(0) += phase * xnorm;
    const double vnorm2 = v.squaredNorm();
    if (vnorm2 == 0.0) continue;
    const double tau = 2.0 / vnorm2;
    // A <- H A H with H = I - tau v v^dagger acting on rows/cols k+1..n-1.
    auto rows = a.bottomRows(len);
    ComplexMatrix vha = v.adjoint() * rows;
    rows -= tau * v * vha;
    auto cols = a.rightCols(len);
    ComplexMatrix av = cols * v;
    cols -= tau * av * v.adjoint();
    auto qcols = q.rightCols(len);
    ComplexMatrix qv = qcols * v;
    qcols -= tau * qv * v.adjoint();
  }

  std::vector<double> d(n), e(n, 0.0);
  ComplexVector phases(n);
  phases(0) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) d[i] = a(i, i).real();
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const Complex s = a(i + 1, i);
    const double mag = std::abs(s);
    e[i] = mag;
    phases(i + 1) = mag == 0.0 ? phases(i) : phases(i) * (s / mag);
  }

  RealMatrix z = RealMatrix::Identity(n, n);
  detail::tridiagonal_ql(d, e, z);

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return d[i] > d[j]; });

  ComplexMatrix qd = q * phases.asDiagonal();
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    out.values(c) = d[order[c]];
    out.vectors.col(c) = qd * z.col(order[c]).cast<Complex>();
  }
  return out;
}

inline RealVector eigvalsh(const HermitianMatrix& h) { return eigh(h).values; }

/// Singular values, descending.
inline RealVector singular_values(const ComplexMatrix& a) {
  require(a.allFinite(), ErrorCode::InvalidMatrix, "non-finite entries");
  if (a.size() == 0) return RealVector();
  return Eigen::JacobiSVD<ComplexMatrix>(a).singularValues();
}

enum class Norm { Trace, Frobenius, Operator };

inline double schatten_norm(const ComplexMatrix& a, Norm p) {
  require(a.allFinite(), ErrorCode::InvalidMatrix, "non-finite entries");
  switch (p) {
    case Norm::Frobenius: return a.norm();
    case Norm::Trace: return singular_values(a).sum();
    case Norm::Operator: {
      RealVector s = singular_values(a);
      return s.size() ? s(0) : 0.0;
    }
  }
  return 0.0;
}

inline double trace_norm(const ComplexMatrix& a) { return schatten_norm(a, Norm::Trace); }
inline double operator_norm(const ComplexMatrix& a) { return schatten_norm(a, Norm::Operator); }

/// Trace norm of a Hermitian matrix: sum of absolute eigenvalues.
inline double trace_norm(const HermitianMatrix& h) { return eigvalsh(h).cwiseAbs().sum(); }

struct PsdReport {
  bool psd = false;
  double min_eigenvalue = 0.0;
  explicit operator bool() const { return psd; }
};

/// PSD iff lambda_min >= -tol * max(1, |A|_op).
inline PsdReport is_psd(const HermitianMatrix& h, double tol = kDefaultPsdTol) {
  const RealVector ev = eigvalsh(h);
  const double lmin = ev(ev.size() - 1);
  const double scale = std::max(1.0, std::max(std::abs(ev(0)), std::abs(lmin)));
  return {lmin >= -tol * scale, lmin};
}

/// Smallest eigenvalue of a real symmetric matrix (LMI checks).
inline double min_eigenvalue(const RealMatrix& a) {
  const RealVector ev = eigvalsh(HermitianMatrix(a));
  return ev(ev.size() - 1);
}

inline double max_eigenvalue(const HermitianMatrix& h) { return eigvalsh(h)(0); }

}  // namespace abssep
