#pragma once

// Tensor-product structure on M_m (x) M_n.  Composite indices are row-major
// pairs: basis vector |i>|k> sits at position i * n + k.

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "abssep/error.hpp"
#include "abssep/matcore.hpp"
#include "abssep/rng.hpp"

namespace abssep {

struct Dims {
  int a = 0;  // first factor
  int b = 0;  // second factor

  int total() const { return a * b; }
  int min() const { return a < b ? a : b; }
  bool operator==(const Dims&) const = default;
};

inline void check_dims(Dims d) {
  require(d.a >= 1 && d.b >= 1, ErrorCode::InvalidDim, "subsystem dimensions must be positive");
}

inline void check_dims(const ComplexMatrix& x, Dims d) {
  check_dims(d);
  require(x.rows() == d.total() && x.cols() == d.total(), ErrorCode::InvalidDim,
          "matrix size does not match subsystem dimensions");
}

/// Hermitian operator on C^a (x) C^b.
class BipartiteOperator {
 public:
  BipartiteOperator(Dims dims, HermitianMatrix m) : dims_(dims), m_(std::move(m)) {
    check_dims(m_.matrix(), dims_);
  }
  BipartiteOperator(Dims dims, const ComplexMatrix& m) : BipartiteOperator(dims, HermitianMatrix(m)) {}

  Dims dims() const { return dims_; }
  const HermitianMatrix& hermitian() const { return m_; }
  const ComplexMatrix& matrix() const { return m_.matrix(); }
  double trace() const { return m_.trace(); }

 private:
  Dims dims_;
  HermitianMatrix m_;
};

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

/// (id (x) T): transpose each b x b block.
inline ComplexMatrix partial_transpose(const ComplexMatrix& x, Dims d) {
  check_dims(x, d);
  ComplexMatrix out(x.rows(), x.cols());
  for (int i = 0; i < d.a; ++i)
    for (int j = 0; j < d.a; ++j)
      out.block(i * d.b, j * d.b, d.b, d.b) = x.block(i * d.b, j * d.b, d.b, d.b).transpose();
  return out;
}

inline BipartiteOperator partial_transpose(const BipartiteOperator& x) {
  return {x.dims(), partial_transpose(x.matrix(), x.dims())};
}

enum class Subsystem { First, Second };

inline ComplexMatrix partial_trace(const ComplexMatrix& x, Dims d, Subsystem traced) {
  check_dims(x, d);
  if (traced == Subsystem::Second) {
    ComplexMatrix out = ComplexMatrix::Zero(d.a, d.a);
    for (int i = 0; i < d.a; ++i)
      for (int j = 0; j < d.a; ++j) out(i, j) = x.block(i * d.b, j * d.b, d.b, d.b).trace();
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(d.b, d.b);
  for (int i = 0; i < d.a; ++i) out += x.block(i * d.b, i * d.b, d.b, d.b);
  return out;
}

inline ComplexMatrix partial_trace(const BipartiteOperator& x, Subsystem traced) {
  return partial_trace(x.matrix(), x.dims(), traced);
}

/// R(|i><j| (x) |k><l|) = |i><k| (x) |j><l|, giving an a^2 x b^2 matrix whose
/// row is the pair (i, j) and column the pair (k, l).
inline ComplexMatrix realign(const ComplexMatrix& x, Dims d) {
  check_dims(x, d);
  ComplexMatrix out(d.a * d.a, d.b * d.b);
  for (int i = 0; i < d.a; ++i)
    for (int j = 0; j < d.a; ++j)
      for (int k = 0; k < d.b; ++k)
        for (int l = 0; l < d.b; ++l) out(i * d.a + j, k * d.b + l) = x(i * d.b + k, j * d.b + l);
  return out;
}

inline ComplexMatrix realign(const BipartiteOperator& x) { return realign(x.matrix(), x.dims()); }

/// |R(X)|_tr, the quantity bounded by 1 for separable states.
inline double realignment_norm(const ComplexMatrix& x, Dims d) { return trace_norm(realign(x, d)); }

/// Orthonormal (Hilbert-Schmidt) basis of Hermitian d x d matrices:
/// E_ii, (E_ij + E_ji)/sqrt2, i(E_ij - E_ji)/sqrt2.
inline std::vector<ComplexMatrix> hermitian_basis(int d) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(static_cast<std::size_t>(d) * d);
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    ComplexMatrix e = ComplexMatrix::Zero(d, d);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      ComplexMatrix s = ComplexMatrix::Zero(d, d);
      s(i, j) = s(j, i) = r;
      basis.push_back(s);
      ComplexMatrix t = ComplexMatrix::Zero(d, d);
      t(i, j) = Complex(0.0, r);
      t(j, i) = Complex(0.0, -r);
      basis.push_back(t);
    }
  return basis;
}

struct OperatorSchmidt {
  RealVector coefficients;              // descending, nonnegative
  std::vector<ComplexMatrix> left_ops;  // Hermitian, HS-orthonormal
  std::vector<ComplexMatrix> right_ops;

  std::size_t rank() const { return left_ops.size(); }
};

/// X = sum_i s_i A_i (x) B_i with Hermitian orthonormal A_i, B_i.  Expands X in
/// product Hermitian bases (real coefficient matrix) and takes its SVD, so it
/// shares no code with realign().  Terms below 1e-13 * s_max are dropped.
inline OperatorSchmidt operator_schmidt(const BipartiteOperator& x) {
  const Dims d = x.dims();
  const auto ga = hermitian_basis(d.a);
  const auto gb = hermitian_basis(d.b);
  const ComplexMatrix& m = x.matrix();
  RealMatrix coeff(ga.size(), gb.size());
  for (std::size_t p = 0; p < ga.size(); ++p)
    for (std::size_t q = 0; q < gb.size(); ++q)
      coeff(p, q) = (kron(ga[p], gb[q]).cwiseProduct(m.transpose())).sum().real();

  Eigen::JacobiSVD<RealMatrix> svd(coeff, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector s = svd.singularValues();
  OperatorSchmidt out;
  const double cutoff = s.size() ? 1e-13 * std::max(s(0), 1e-300) : 0.0;
  std::vector<double> kept;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) <= cutoff) break;
    kept.push_back(s(i));
    ComplexMatrix a = ComplexMatrix::Zero(d.a, d.a);
    ComplexMatrix b = ComplexMatrix::Zero(d.b, d.b);
    for (std::size_t p = 0; p < ga.size(); ++p) a += svd.matrixU()(p, i) * ga[p];
    for (std::size_t q = 0; q < gb.size(); ++q) b += svd.matrixV()(q, i) * gb[q];
    out.left_ops.push_back(a);
    out.right_ops.push_back(b);
  }
  out.coefficients = Eigen::Map<RealVector>(kept.data(), static_cast<Eigen::Index>(kept.size()));
  return out;
}

inline ComplexMatrix reconstruct(const OperatorSchmidt& os) {
  ComplexMatrix out;
  for (std::size_t i = 0; i < os.rank(); ++i) {
    ComplexMatrix term = os.coefficients(static_cast<Eigen::Index>(i)) * kron(os.left_ops[i], os.right_ops[i]);
    out = out.size() ? ComplexMatrix(out + term) : term;
  }
  return out;
}

struct SchmidtCoefficients {
  RealVector values;  // descending, sum of squares 1
};

inline SchmidtCoefficients vector_schmidt(const ComplexVector& v, Dims d) {
  check_dims(d);
  require(v.size() == d.total(), ErrorCode::InvalidDim, "vector length does not match dimensions");
  require(v.allFinite() && std::abs(v.norm() - 1.0) <= 1e-10, ErrorCode::InvalidVector,
          "Schmidt decomposition needs a unit vector");
  ComplexMatrix reshaped(d.a, d.b);
  for (int i = 0; i < d.a; ++i)
    for (int k = 0; k < d.b; ++k) reshaped(i, k) = v(i * d.b + k);
  return {singular_values(reshaped)};
}

/// |psi+> = n^{-1/2} sum_i |i>|i>.
inline ComplexVector max_entangled(int n) {
  require(n >= 1, ErrorCode::InvalidDim, "dimension must be positive");
  ComplexVector v = ComplexVector::Zero(n * n);
  for (int i = 0; i < n; ++i) v(i * n + i) = 1.0 / std::sqrt(static_cast<double>(n));
  return v;
}

inline ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

/// S(|a>|b>) = |b>|a>.
inline HermitianMatrix swap_operator(int n) {
  require(n >= 1, ErrorCode::InvalidDim, "dimension must be positive");
  ComplexMatrix s = ComplexMatrix::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(j * n + i, i * n + j) = 1.0;
  return HermitianMatrix(s);
}

inline ComplexVector basis_vector(int dim, int i) {
  ComplexVector e = ComplexVector::Zero(dim);
  e(i) = 1.0;
  return e;
}

inline ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the columns
/// of Q rephased by the phases of diag(R).
inline ComplexMatrix haar_unitary(int n, Rng& rng) {
  require(n >= 1, ErrorCode::InvalidDim, "dimension must be positive");
  const ComplexMatrix g = ginibre(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  return q;
}

inline ComplexMatrix haar_unitary(int n, std::uint64_t seed) {
  Rng rng(seed);
  return haar_unitary(n, rng);
}

/// Uniformly random pure state (normalized complex Gaussian vector).
inline ComplexVector haar_vector(int dim, Rng& rng) {
  require(dim >= 1, ErrorCode::InvalidDim, "dimension must be positive");
  ComplexVector v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

/// Random density matrix from the Hilbert-Schmidt ensemble (G G^dagger / Tr).
inline HermitianMatrix random_density(int dim, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  return HermitianMatrix(rho / rho.trace().real());
}

/// U diag(values) U^dagger.
inline HermitianMatrix rotate_diagonal(const RealVector& values, const ComplexMatrix& u) {
  return HermitianMatrix(u * values.cast<Complex>().asDiagonal() * u.adjoint());
}

/// min_U Tr(A U B U^dagger) for Hermitian A, B with descending spectra.
inline double min_unitary_overlap(const std::vector<double>& lambda, const std::vector<double>& mu) {
  require(lambda.size() == mu.size(), ErrorCode::InvalidDim, "spectra must have equal length");
  const std::size_t n = lambda.size();
  for (std::size_t j = 0; j + 1 < n; ++j)
    require(lambda[j] >= lambda[j + 1] && mu[j] >= mu[j + 1], ErrorCode::DomainError,
            "spectra must be sorted descending");
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += lambda[j] * mu[n - 1 - j];
  return s;
}

}  // namespace abssep
