#pragma once

// Positive maps as closed-form actions: identity, transpose, reduction, the
// Choi map, the generalized Choi family and Breuer-Hall.  Choi matrices are
// materialized on demand.

#include <cmath>
#include <string>

#include "abssep/bipartite.hpp"
#include "abssep/error.hpp"
#include "abssep/matcore.hpp"

namespace abssep {

enum class MapKind { Identity, Transpose, Reduction, Choi, GeneralizedChoi, BreuerHall };

inline std::string to_string(MapKind k) {
  switch (k) {
    case MapKind::Identity: return "identity";
    case MapKind::Transpose: return "transpose";
    case MapKind::Reduction: return "reduction";
    case MapKind::Choi: return "choi";
    case MapKind::GeneralizedChoi: return "generalized_choi";
    case MapKind::BreuerHall: return "breuer_hall";
  }
  return "?";
}

/// Default skew-symmetric unitary for Breuer-Hall: +1 on the upper half of the
/// anti-diagonal, -1 on the lower half.
inline ComplexMatrix breuer_hall_default_v(int n) {
  require(n >= 2 && n % 2 == 0, ErrorCode::InvalidDim, "Breuer-Hall needs even n");
  ComplexMatrix v = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) v(i, n - 1 - i) = i < n / 2 ? 1.0 : -1.0;
  return v;
}

class MapSpec {
 public:
  static MapSpec identity(int n) { return MapSpec(MapKind::Identity, n); }
  static MapSpec transpose(int n) { return MapSpec(MapKind::Transpose, n); }
  /// (Tr(X) I - X) / (n - 1): unital and trace preserving, equal to Phi_{1,1} on M_3.
  static MapSpec reduction(int n) {
    require(n >= 2, ErrorCode::InvalidDim, "reduction map needs n >= 2");
    return MapSpec(MapKind::Reduction, n);
  }
  static MapSpec choi() { return MapSpec(MapKind::Choi, 3); }
  /// Phi_{b,c} on M_3 with a := 2 - b - c.  Parameters outside the positivity
  /// region are allowed; positivity is a separate query.
  static MapSpec generalized_choi(double b, double c) {
    require(b >= 0.0 && c >= 0.0 && std::isfinite(b) && std::isfinite(c), ErrorCode::DomainError,
            "generalized Choi parameters must be nonnegative");
    MapSpec m(MapKind::GeneralizedChoi, 3);
    m.b_ = b;
    m.c_ = c;
    return m;
  }
  static MapSpec breuer_hall(int n) { return breuer_hall(n, breuer_hall_default_v(n)); }
  static MapSpec breuer_hall(int n, const ComplexMatrix& v) {
    require(n >= 4 && n % 2 == 0, ErrorCode::InvalidDim, "Breuer-Hall needs even n >= 4");
    require(v.rows() == n && v.cols() == n, ErrorCode::InvalidDim, "V has wrong size");
    require((v.transpose() + v).norm() <= 1e-10, ErrorCode::InvalidMatrix, "V must be skew-symmetric");
    require((v.adjoint() * v - ComplexMatrix::Identity(n, n)).norm() <= 1e-10, ErrorCode::InvalidMatrix,
            "V must be unitary");
    MapSpec m(MapKind::BreuerHall, n);
    m.v_ = v;
    return m;
  }

  MapKind kind() const { return kind_; }
  int in_dim() const { return n_; }
  int out_dim() const { return n_; }
  double b() const { return b_; }
  double c() const { return c_; }
  const ComplexMatrix& v() const { return v_; }

  ComplexMatrix apply(const ComplexMatrix& x) const {
    require(x.rows() == n_ && x.cols() == n_, ErrorCode::InvalidDim, "input has wrong size for map");
    const ComplexMatrix eye = ComplexMatrix::Identity(n_, n_);
    switch (kind_) {
      case MapKind::Identity: return x;
      case MapKind::Transpose: return x.transpose();
      case MapKind::Reduction: return (x.trace() * eye - x) / static_cast<double>(n_ - 1);
      case MapKind::Choi: return apply_bc(1.0, 0.0, x);
      case MapKind::GeneralizedChoi: return apply_bc(b_, c_, x);
      case MapKind::BreuerHall:
        return (x.trace() * eye - x - v_ * x.transpose() * v_.adjoint()) / static_cast<double>(n_ - 2);
    }
    return x;
  }

  ComplexMatrix operator()(const ComplexMatrix& x) const { return apply(x); }

  std::string describe() const {
    switch (kind_) {
      case MapKind::GeneralizedChoi:
        return "generalized_choi(" + std::to_string(b_) + "," + std::to_string(c_) + ")";
      default: return to_string(kind_) + "(" + std::to_string(n_) + ")";
    }
  }

 private:
  MapSpec(MapKind k, int n) : kind_(k), n_(n) {}

  static ComplexMatrix apply_bc(double b, double c, const ComplexMatrix& x) {
    const double a = 2.0 - b - c;
    ComplexMatrix y = -x;
    y(0, 0) = a * x(0, 0) + b * x(1, 1) + c * x(2, 2);
    y(1, 1) = c * x(0, 0) + a * x(1, 1) + b * x(2, 2);
    y(2, 2) = b * x(0, 0) + c * x(1, 1) + a * x(2, 2);
    return y / 2.0;
  }

  MapKind kind_;
  int n_;
  double b_ = 0.0;
  double c_ = 0.0;
  ComplexMatrix v_;
};

inline ComplexMatrix apply(const MapSpec& phi, const ComplexMatrix& x) { return phi.apply(x); }

/// Adjoint in the Hilbert-Schmidt inner product.  Phi_{b,c}^dagger = Phi_{c,b},
/// so the Choi map's dual is Phi_{0,1}; the remaining maps are self-dual.
inline MapSpec dual_map(const MapSpec& phi) {
  switch (phi.kind()) {
    case MapKind::Choi: return MapSpec::generalized_choi(0.0, 1.0);
    case MapKind::GeneralizedChoi: return MapSpec::generalized_choi(phi.c(), phi.b());
    default: return phi;
  }
}

/// Applies phi to every block of the second tensor factor.
inline ComplexMatrix apply_id_tensor(const MapSpec& phi, const ComplexMatrix& x, Dims d) {
  check_dims(x, d);
  require(d.b == phi.in_dim(), ErrorCode::InvalidDim, "second factor does not match map input");
  const int out = phi.out_dim();
  ComplexMatrix y(d.a * out, d.a * out);
  for (int i = 0; i < d.a; ++i)
    for (int j = 0; j < d.a; ++j)
      y.block(i * out, j * out, out, out) = phi.apply(x.block(i * d.b, j * d.b, d.b, d.b));
  return y;
}

inline BipartiteOperator apply_id_tensor(const MapSpec& phi, const BipartiteOperator& x) {
  return {Dims{x.dims().a, phi.out_dim()}, apply_id_tensor(phi, x.matrix(), x.dims())};
}

/// J(Phi) = n (id (x) Phi)(|psi+><psi+|) = sum_ij E_ij (x) Phi(E_ij).
inline BipartiteOperator choi_matrix(const MapSpec& phi) {
  const int n = phi.in_dim();
  const ComplexVector psi = max_entangled(n);
  return {Dims{n, phi.out_dim()}, apply_id_tensor(phi, ComplexMatrix(n * projector(psi)), Dims{n, n})};
}

/// W = (id (x) Phi^dagger)(|v><v|), with the first factor inferred from |v|.
inline HermitianMatrix witness_from_map(const MapSpec& phi, const ComplexVector& v) {
  const int n = phi.in_dim();
  require(v.size() % n == 0, ErrorCode::InvalidDim, "vector length must be a multiple of the map dimension");
  require(v.allFinite() && std::abs(v.norm() - 1.0) <= 1e-10, ErrorCode::InvalidVector,
          "witness vector must be a unit vector");
  const Dims d{static_cast<int>(v.size()) / n, n};
  return HermitianMatrix(apply_id_tensor(dual_map(phi), projector(v), d));
}

/// (I - sum_{i<k} A_i (x) B_i) / Tr(.), the witness built from the first k
/// operator-Schmidt terms.  k < 0 means the full Schmidt rank.
inline HermitianMatrix witness_from_schmidt(const OperatorSchmidt& os, int k = -1) {
  require(os.rank() > 0, ErrorCode::DegenerateWitness, "empty operator-Schmidt decomposition");
  const std::size_t terms = k < 0 ? os.rank() : static_cast<std::size_t>(k);
  require(terms <= os.rank(), ErrorCode::DomainError, "k exceeds the Schmidt rank");
  const auto da = os.left_ops.front().rows();
  const auto db = os.right_ops.front().rows();
  ComplexMatrix w = ComplexMatrix::Identity(da * db, da * db);
  for (std::size_t i = 0; i < terms; ++i) w -= kron(os.left_ops[i], os.right_ops[i]);
  const double tr = w.trace().real();
  require(std::abs(tr) >= 1e-12, ErrorCode::DegenerateWitness, "witness has zero trace");
  return HermitianMatrix(w / tr);
}

// Closed-form facts about the generalized Choi family.

inline bool is_positive_bc(double b, double c) {
  return b >= 0.0 && c >= 0.0 && (b + c <= 1.0 || b * c >= (b + c - 1.0) * (b + c - 1.0));
}

/// J(Phi_{b,c}) is PSD only at the origin.
inline bool is_completely_positive_bc(double b, double c) { return b == 0.0 && c == 0.0; }

inline bool is_positive_not_cp_bc(double b, double c) {
  return is_positive_bc(b, c) && !is_completely_positive_bc(b, c);
}

inline bool is_indecomposable_bc(double b, double c) {
  return is_positive_not_cp_bc(b, c) && std::abs(b - c) > 1e-12;
}

inline bool is_exposed_bc(double b, double c, double tol = 1e-9) {
  return std::abs(b - c) > 1e-12 && b + c > 1.0 && std::abs(b * c - (b + c - 1.0) * (b + c - 1.0)) <= tol;
}

/// Membership in the convex hull of (0,0), (3(sqrt2-1), 0), (6/5, 6/5), (0, 3(sqrt2-1)).
inline bool in_theorem_hull_bc(double b, double c, double tol = 1e-12) {
  const double r = 3.0 * (std::sqrt(2.0) - 1.0);
  const double px[4] = {0.0, r, 1.2, 0.0};
  const double py[4] = {0.0, 0.0, 1.2, r};
  for (int i = 0; i < 4; ++i) {
    const int j = (i + 1) % 4;
    const double cross = (px[j] - px[i]) * (c - py[i]) - (py[j] - py[i]) * (b - px[i]);
    if (cross < -tol) return false;
  }
  return true;
}

}  // namespace abssep
