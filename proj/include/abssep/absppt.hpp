#pragma once

// Spectral tests for absolute PPT: the Hildebrand LMIs (exact when
// min(m, n) <= 3), the 2x2 necessary condition for every size, and
// sufficient conditions for absolute separability.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "abssep/bipartite.hpp"
#include "abssep/error.hpp"
#include "abssep/matcore.hpp"
#include "abssep/rng.hpp"

namespace abssep {

inline constexpr double kSpectrumClampTol = 1e-12;
inline constexpr double kSpectrumSumTol = 1e-10;
inline constexpr double kLmiTol = 1e-10;

/// Eigenvalues of a state on C^m (x) C^n, descending, summing to one.
class Spectrum {
 public:
  Spectrum(Dims dims, std::vector<double> values) : dims_(dims), values_(std::move(values)) {
    check_dims(dims_);
    require(static_cast<int>(values_.size()) == dims_.total(), ErrorCode::InvalidDim,
            "spectrum length must be m * n");
    double sum = 0.0;
    for (double& v : values_) {
      require(std::isfinite(v), ErrorCode::InvalidState, "non-finite eigenvalue");
      require(v >= -kSpectrumClampTol, ErrorCode::InvalidState, "negative eigenvalue");
      if (v < 0.0) v = 0.0;
      sum += v;
    }
    require(std::abs(sum - 1.0) <= kSpectrumSumTol, ErrorCode::Unnormalized,
            "eigenvalues must sum to 1 (got " + std::to_string(sum) + ")");
    std::sort(values_.begin(), values_.end(), std::greater<>());
  }

  Spectrum(Dims dims, const RealVector& v) : Spectrum(dims, std::vector<double>(v.data(), v.data() + v.size())) {}

  static Spectrum uniform(Dims d) {
    return {d, std::vector<double>(static_cast<std::size_t>(d.total()), 1.0 / d.total())};
  }

  /// Spectrum of a unit-trace PSD operator.
  static Spectrum of(const BipartiteOperator& rho) { return {rho.dims(), eigvalsh(rho.hermitian())}; }

  Dims dims() const { return dims_; }
  int size() const { return dims_.total(); }
  const std::vector<double>& values() const { return values_; }
  /// 1-based access, matching lambda_1 >= ... >= lambda_mn.
  double lambda(int i) const { return values_.at(static_cast<std::size_t>(i - 1)); }
  RealVector vector() const { return Eigen::Map<const RealVector>(values_.data(), size()); }

 private:
  Dims dims_;
  std::vector<double> values_;
};

/// Affine form sum_k coeff_k * lambda_{index_k}, indices 1-based.
struct AffineTerm {
  int index;
  double coeff;
};
using AffineForm = std::vector<AffineTerm>;

/// Symmetric matrix whose entries are affine (here linear) in the spectrum.
struct Lmi {
  int size = 0;
  std::vector<AffineForm> entries;  // row-major, size * size

  const AffineForm& at(int i, int j) const { return entries[static_cast<std::size_t>(i * size + j)]; }

  RealMatrix evaluate(const std::vector<double>& lambda) const {
    RealMatrix m(size, size);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) {
        double v = 0.0;
        for (const auto& t : at(i, j)) v += t.coeff * lambda.at(static_cast<std::size_t>(t.index - 1));
        m(i, j) = v;
      }
    return m;
  }
  RealMatrix evaluate(const Spectrum& s) const { return evaluate(s.values()); }
};

struct LmiSet {
  Dims dims;
  std::vector<Lmi> matrices;
  bool necessary_only = false;  // only the 2x2 submatrix condition is available
};

namespace detail {

inline AffineForm diag_term(int j) { return {{j, 2.0}}; }
inline AffineForm diff_term(int j, int k) { return {{j, 1.0}, {k, -1.0}}; }

// Builds a symmetric LMI from its upper triangle given row by row.
inline Lmi symmetric_lmi(int size, const std::vector<AffineForm>& upper) {
  Lmi l;
  l.size = size;
  l.entries.resize(static_cast<std::size_t>(size * size));
  std::size_t p = 0;
  for (int i = 0; i < size; ++i)
    for (int j = i; j < size; ++j) {
      l.entries[static_cast<std::size_t>(i * size + j)] = upper[p];
      l.entries[static_cast<std::size_t>(j * size + i)] = upper[p];
      ++p;
    }
  return l;
}

}  // namespace detail

/// [[2 l_mn, l_{mn-1} - l_1], [., 2 l_{mn-2}]].
inline Lmi necessary_lmi(int mn) {
  require(mn >= 3, ErrorCode::InvalidDim, "need at least three eigenvalues");
  using namespace detail;
  return symmetric_lmi(2, {diag_term(mn), diff_term(mn - 1, 1), diag_term(mn - 2)});
}

inline LmiSet build_lmis(int m, int n) {
  const Dims d{m, n};
  check_dims(d);
  const int mn = d.total();
  LmiSet set{d, {}, false};
  using namespace detail;
  switch (d.min()) {
    case 1: break;  // every state on C^1 (x) C^n has PSD partial transpose
    case 2: set.matrices.push_back(necessary_lmi(mn)); break;
    case 3:
      set.matrices.push_back(symmetric_lmi(3, {diag_term(mn), diff_term(mn - 1, 1), diff_term(mn - 3, 2),
                                               diag_term(mn - 2), diff_term(mn - 4, 3), diag_term(mn - 5)}));
      set.matrices.push_back(symmetric_lmi(3, {diag_term(mn), diff_term(mn - 1, 1), diff_term(mn - 2, 2),
                                               diag_term(mn - 3), diff_term(mn - 4, 3), diag_term(mn - 5)}));
      break;
    default:
      set.matrices.push_back(necessary_lmi(mn));
      set.necessary_only = true;
  }
  return set;
}

enum class AbsPpt { Yes, No, NecessaryPassedOnly };

inline std::string to_string(AbsPpt v) {
  switch (v) {
    case AbsPpt::Yes: return "Yes";
    case AbsPpt::No: return "No";
    case AbsPpt::NecessaryPassedOnly: return "NecessaryPassedOnly";
  }
  return "?";
}

struct AbsPptReport {
  AbsPpt verdict = AbsPpt::Yes;
  std::vector<double> lmi_min_eigenvalues;  // one per evaluated LMI
  double min_eigenvalue = 0.0;              // smallest over all LMIs (+inf if none)
  int failing_lmi = -1;                     // 0-based, -1 if none failed
};

inline AbsPptReport check_abs_ppt(const Spectrum& s, double tol = kLmiTol) {
  const LmiSet set = build_lmis(s.dims().a, s.dims().b);
  AbsPptReport r;
  r.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < set.matrices.size(); ++i) {
    const double e = min_eigenvalue(set.matrices[i].evaluate(s));
    r.lmi_min_eigenvalues.push_back(e);
    if (e < r.min_eigenvalue) r.min_eigenvalue = e;
    if (e < -tol && r.failing_lmi < 0) r.failing_lmi = static_cast<int>(i);
  }
  if (r.failing_lmi >= 0)
    r.verdict = AbsPpt::No;
  else
    r.verdict = set.necessary_only ? AbsPpt::NecessaryPassedOnly : AbsPpt::Yes;
  return r;
}

inline AbsPpt is_abs_ppt(const Spectrum& s, double tol = kLmiTol) { return check_abs_ppt(s, tol).verdict; }

/// PSD test of the 2x2 matrix in closed form: both diagonal entries and the
/// determinant nonnegative up to tol (tol^2 for the determinant, so a zero
/// diagonal forces |l_{mn-1} - l_1| <= tol).
inline bool necessary_2x2(const Spectrum& s, double tol = kLmiTol) {
  const int mn = s.size();
  if (s.dims().min() == 1) return true;
  const double a = 2.0 * s.lambda(mn);
  const double b = s.lambda(mn - 1) - s.lambda(1);
  const double c = 2.0 * s.lambda(mn - 2);
  return a >= -tol && c >= -tol && a * c - b * b >= -tol * tol;
}

/// Gurvits-Barnum: X is proportional to I - Y with |Y|_F <= 1 for some
/// positive scaling.  The best scaling t = Tr X / |X|_F^2 gives
/// min_t |I - tX|_F^2 = mn - (Tr X)^2 / |X|_F^2.
inline double gurvits_barnum_distance2(const BipartiteOperator& x) {
  const double tr = x.trace();
  require(tr > 0.0, ErrorCode::InvalidState, "operator must have positive trace");
  const double f2 = x.matrix().squaredNorm();
  return x.dims().total() - tr * tr / f2;
}

inline bool gurvits_barnum_abs_sep(const BipartiteOperator& x) { return gurvits_barnum_distance2(x) <= 1.0 + 1e-12; }

/// Same test from the spectrum alone (the ball condition is unitarily invariant).
inline bool gurvits_barnum_abs_sep(const Spectrum& s) {
  double f2 = 0.0;
  for (double v : s.values()) f2 += v * v;
  return s.size() - 1.0 / f2 <= 1.0 + 1e-12;
}

enum class RankClass { AbsolutelySeparable, FullRankRequired, NotAbsolutelyPpt };

inline std::string to_string(RankClass r) {
  switch (r) {
    case RankClass::AbsolutelySeparable: return "AbsolutelySeparable";
    case RankClass::FullRankRequired: return "FullRankRequired";
    case RankClass::NotAbsolutelyPpt: return "NotAbsolutelyPpt";
  }
  return "?";
}

/// A singular absolutely PPT spectrum is forced to be uniform on mn - 1
/// eigenvalues, i.e. a multiple of I - |v><v|, which is absolutely separable.
inline RankClass rank_deficient_classification(const Spectrum& s) {
  if (s.lambda(s.size()) > kSpectrumClampTol) return RankClass::FullRankRequired;
  return necessary_2x2(s) ? RankClass::AbsolutelySeparable : RankClass::NotAbsolutelyPpt;
}

namespace detail {

inline bool lmis_hold(const LmiSet& set, const std::vector<double>& v) {
  for (const auto& l : set.matrices)
    if (min_eigenvalue(l.evaluate(v)) < 0.0) return false;
  return true;
}

}  // namespace detail

/// Flat-Dirichlet draw mixed toward the uniform spectrum: bisect for the
/// largest weight beta whose mixture satisfies every LMI, then return the
/// mixture at a uniform beta' in [0, beta].
inline Spectrum sample_abs_ppt_spectrum(Dims d, Rng& rng) {
  check_dims(d);
  require(d.min() <= 3, ErrorCode::Unsupported, "exact LMIs only available for min(m, n) <= 3");
  const int mn = d.total();
  const LmiSet set = build_lmis(d.a, d.b);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> draw(static_cast<std::size_t>(mn));
  double sum = 0.0;
  for (double& v : draw) sum += (v = expo(rng));
  for (double& v : draw) v /= sum;
  std::sort(draw.begin(), draw.end(), std::greater<>());

  const double u = 1.0 / mn;
  auto mix = [&](double beta) {
    std::vector<double> out(draw.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (1.0 - beta) * u + beta * draw[i];
    return out;
  };
  double lo = 0.0, hi = 1.0;
  if (detail::lmis_hold(set, mix(1.0))) {
    lo = 1.0;
  } else {
    for (int it = 0; it < 50; ++it) {
      const double mid = 0.5 * (lo + hi);
      (detail::lmis_hold(set, mix(mid)) ? lo : hi) = mid;
    }
  }
  return {d, mix(lo * rng.uniform())};
}

inline Spectrum sample_abs_ppt_spectrum(Dims d, std::uint64_t seed) {
  Rng rng(seed);
  return sample_abs_ppt_spectrum(d, rng);
}

}  // namespace abssep
