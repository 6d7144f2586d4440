#pragma once

// Werner, isotropic and UPB-mixture states with their closed-form
// absolute PPT / absolute separability thresholds.

#include <cmath>
#include <string>
#include <vector>

#include "abssep/absppt.hpp"
#include "abssep/bipartite.hpp"
#include "abssep/error.hpp"
#include "abssep/matcore.hpp"

namespace abssep {

inline constexpr double kThresholdSlack = 1e-12;

inline double upb_abs_ppt_threshold() { return 9.0 * (10.0 - std::sqrt(17.0)) / 83.0; }
inline double upb_abs_sep_threshold() { return 1.0 - 1.0 / std::sqrt(10.0); }
inline double isotropic_threshold(int n) { return 2.0 / (2.0 + static_cast<double>(n) * n); }

enum class FamilyClass { AbsSep, NotAbsPPT, Unknown };

inline std::string to_string(FamilyClass c) {
  switch (c) {
    case FamilyClass::AbsSep: return "AbsSep";
    case FamilyClass::NotAbsPPT: return "NotAbsPPT";
    case FamilyClass::Unknown: return "Unknown";
  }
  return "?";
}

enum class UpbClass { AbsPPTAndAbsSep, AbsPPTOnlyKnown, NotAbsPPT };

inline std::string to_string(UpbClass c) {
  switch (c) {
    case UpbClass::AbsPPTAndAbsSep: return "AbsPPT_and_AbsSep";
    case UpbClass::AbsPPTOnlyKnown: return "AbsPPT_only_known";
    case UpbClass::NotAbsPPT: return "NotAbsPPT";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Werner: (I - alpha S)/(n^2 - n alpha)

struct WernerParams {
  int n;
  double alpha;

  WernerParams(int n_, double alpha_) : n(n_), alpha(alpha_) {
    require(n >= 2, ErrorCode::InvalidDim, "Werner states need n >= 2");
    require(alpha >= -1.0 && alpha <= 1.0, ErrorCode::DomainError, "alpha must lie in [-1, 1]");
  }
};

inline BipartiteOperator werner_state(const WernerParams& w) {
  const int d = w.n * w.n;
  const ComplexMatrix x = ComplexMatrix::Identity(d, d) - w.alpha * swap_operator(w.n).matrix();
  return {Dims{w.n, w.n}, ComplexMatrix(x / (d - w.n * w.alpha))};
}

inline Spectrum werner_spectrum(const WernerParams& w) {
  const double z = w.n * w.n - w.n * w.alpha;
  std::vector<double> v;
  for (int i = 0; i < w.n * (w.n + 1) / 2; ++i) v.push_back((1.0 - w.alpha) / z);
  for (int i = 0; i < w.n * (w.n - 1) / 2; ++i) v.push_back((1.0 + w.alpha) / z);
  return {Dims{w.n, w.n}, v};
}

inline FamilyClass werner_classify(const WernerParams& w) {
  const double n = w.n;
  if (w.alpha > 1.0 / n + kThresholdSlack || w.alpha < -1.0 / (n - 1.0) - kThresholdSlack)
    return FamilyClass::NotAbsPPT;
  if (w.alpha >= -1.0 / n - kThresholdSlack) return FamilyClass::AbsSep;
  return FamilyClass::Unknown;
}

/// Exact LMI verdict for n <= 3, for resolving the Unknown band.
inline AbsPpt werner_deep_check(const WernerParams& w) {
  require(w.n <= 3, ErrorCode::Unsupported, "exact LMIs only for n <= 3");
  return is_abs_ppt(werner_spectrum(w));
}

/// The LMI all of whose copies coincide when 1 - alpha is the repeated
/// eigenvalue (unnormalized X = I - alpha S): n x n, diagonal 2 - 2 alpha,
/// off-diagonal -2 alpha.
inline RealMatrix werner_lmi_case1(const WernerParams& w) {
  RealMatrix m = RealMatrix::Constant(w.n, w.n, -2.0 * w.alpha);
  m.diagonal().setConstant(2.0 - 2.0 * w.alpha);
  return m;
}

/// The LMI used when 1 + alpha dominates: an (n-1) x (n-1) block with
/// diagonal 2 + 2 alpha and off-diagonal 2 alpha, plus a trailing 2 - 2 alpha.
inline RealMatrix werner_lmi_case2(const WernerParams& w) {
  RealMatrix m = RealMatrix::Zero(w.n, w.n);
  m.topLeftCorner(w.n - 1, w.n - 1).setConstant(2.0 * w.alpha);
  for (int i = 0; i + 1 < w.n; ++i) m(i, i) = 2.0 + 2.0 * w.alpha;
  m(w.n - 1, w.n - 1) = 2.0 - 2.0 * w.alpha;
  return m;
}

struct WernerLmiEigs {
  double case1;  // 2 - 2 n alpha, the minimum eigenvalue of case 1 when alpha >= 0
  double case2;  // 2 + 2 (n - 1) alpha, the minimum eigenvalue of case 2 when alpha <= 0
};

inline WernerLmiEigs werner_lmi_min_eigs(const WernerParams& w) {
  return {2.0 - 2.0 * w.n * w.alpha, 2.0 + 2.0 * (w.n - 1) * w.alpha};
}

// ---------------------------------------------------------------------------
// Isotropic: (1 - alpha)/n^2 I + alpha |psi+><psi+|

struct IsotropicParams {
  int n;
  double alpha;

  IsotropicParams(int n_, double alpha_) : n(n_), alpha(alpha_) {
    require(n >= 2, ErrorCode::InvalidDim, "isotropic states need n >= 2");
    require(alpha >= -1.0 / (static_cast<double>(n) * n - 1.0) - kThresholdSlack && alpha <= 1.0,
            ErrorCode::DomainError, "alpha must lie in [-1/(n^2 - 1), 1]");
  }
};

inline BipartiteOperator isotropic_state(const IsotropicParams& p) {
  const int d = p.n * p.n;
  const ComplexMatrix m =
      (1.0 - p.alpha) / d * ComplexMatrix::Identity(d, d) + p.alpha * projector(max_entangled(p.n));
  return {Dims{p.n, p.n}, m};
}

inline Spectrum isotropic_spectrum(const IsotropicParams& p) {
  const int d = p.n * p.n;
  std::vector<double> v(static_cast<std::size_t>(d), (1.0 - p.alpha) / d);
  v[0] += p.alpha;
  return {Dims{p.n, p.n}, v};
}

inline FamilyClass isotropic_classify(const IsotropicParams& p) {
  return p.alpha <= isotropic_threshold(p.n) + kThresholdSlack ? FamilyClass::AbsSep : FamilyClass::NotAbsPPT;
}

/// I/(n^2 alpha) (1 - alpha) + |v><v| is separable iff (1 - alpha)/(n^2 alpha)
/// >= gamma_1 gamma_2, the product of the two largest Schmidt coefficients of v.
inline bool vt99_separable(int n, double alpha, const ComplexVector& v) {
  if (alpha <= 0.0) return true;
  const RealVector g = vector_schmidt(v, Dims{n, n}).values;
  const double prod = g.size() > 1 ? g(0) * g(1) : 0.0;
  return (1.0 - alpha) / (static_cast<double>(n) * n * alpha) >= prod - kThresholdSlack;
}

// ---------------------------------------------------------------------------
// UPB mixtures on C^3 (x) C^3

/// The Tiles unextendible product basis.
inline std::vector<ComplexVector> tiles_upb() {
  const double r = 1.0 / std::sqrt(2.0);
  auto e = [](int i) { return basis_vector(3, i); };
  const ComplexVector all = (e(0) + e(1) + e(2)) / std::sqrt(3.0);
  return {kron(e(0), ComplexVector(r * (e(0) - e(1)))), kron(e(2), ComplexVector(r * (e(1) - e(2)))),
          kron(ComplexVector(r * (e(0) - e(1))), e(2)), kron(ComplexVector(r * (e(1) - e(2))), e(0)),
          kron(all, all)};
}

struct UpbMixtureParams {
  double p;
  std::vector<ComplexVector> upb;

  explicit UpbMixtureParams(double p_, std::vector<ComplexVector> upb_ = tiles_upb()) : p(p_), upb(std::move(upb_)) {
    require(p > 0.0 && p < 1.0, ErrorCode::DomainError, "p must lie in (0, 1)");
    require(upb.size() == 5, ErrorCode::InvalidDim, "a UPB on C^3 (x) C^3 has five vectors");
    for (std::size_t i = 0; i < upb.size(); ++i) {
      require(upb[i].size() == 9, ErrorCode::InvalidDim, "UPB vectors live in C^9");
      const RealVector g = vector_schmidt(upb[i], Dims{3, 3}).values;
      require(g.size() < 2 || g(1) * g(1) <= 1e-10, ErrorCode::InvalidVector, "UPB vectors must be product vectors");
      for (std::size_t j = i + 1; j < upb.size(); ++j)
        require(std::abs(upb[i].dot(upb[j])) <= 1e-10, ErrorCode::InvalidVector,
                "UPB vectors must be mutually orthogonal");
    }
  }
};

/// (I - sum |v_i><v_i|)/4, PPT with rank 4.
inline BipartiteOperator upb_bound_state(const std::vector<ComplexVector>& upb) {
  ComplexMatrix m = ComplexMatrix::Identity(9, 9);
  for (const auto& v : upb) m -= projector(v);
  return {Dims{3, 3}, ComplexMatrix(m / (9.0 - static_cast<double>(upb.size())))};
}

inline BipartiteOperator upb_state(const UpbMixtureParams& u) {
  const ComplexMatrix m = u.p / 9.0 * ComplexMatrix::Identity(9, 9) + (1.0 - u.p) * upb_bound_state(u.upb).matrix();
  return {Dims{3, 3}, m};
}

inline Spectrum upb_spectrum(double p) {
  std::vector<double> v(5, p / 9.0);
  for (int i = 0; i < 4; ++i) v.push_back((9.0 - 5.0 * p) / 36.0);
  return {Dims{3, 3}, v};
}

/// The single distinct Hildebrand LMI for rho_p.
inline RealMatrix upb_lmi(double p) {
  RealMatrix m(3, 3);
  const double o = 9.0 * p - 9.0;
  m << 8.0 * p, o, o, o, 8.0 * p, o, o, o, 18.0 - 10.0 * p;
  return m / 36.0;
}

inline UpbClass upb_classify(double p) {
  if (p < upb_abs_ppt_threshold() - kThresholdSlack) return UpbClass::NotAbsPPT;
  if (p >= upb_abs_sep_threshold() - kThresholdSlack) return UpbClass::AbsPPTAndAbsSep;
  return UpbClass::AbsPPTOnlyKnown;
}

/// Depends only on p: the spectrum of rho_p is the same for every UPB.
inline UpbClass upb_classify(const UpbMixtureParams& u) { return upb_classify(u.p); }

}  // namespace abssep
