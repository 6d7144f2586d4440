#pragma once

// JSON readers/writers for matrices and spectra, plus a debug dump of SDP
// problems.
//
//   matrix:   {"rows": r, "cols": c, "re": [...], "im": [...]}   row-major
//   spectrum: {"m": m, "n": n, "values": [...]}

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "abssep/absppt.hpp"
#include "abssep/error.hpp"
#include "abssep/matcore.hpp"
#include "abssep/sdpsolve.hpp"

namespace abssep {

using Json = nlohmann::json;

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

namespace detail {

inline std::vector<double> number_list(const Json& j, const char* key) {
  require(j.contains(key) && j[key].is_array(), ErrorCode::ParseError, std::string("missing array '") + key + "'");
  std::vector<double> out;
  for (const auto& v : j[key]) {
    require(v.is_number(), ErrorCode::ParseError, std::string("non-numeric entry in '") + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

inline int positive_int(const Json& j, const char* key) {
  require(j.contains(key) && j[key].is_number_integer(), ErrorCode::ParseError,
          std::string("missing integer '") + key + "'");
  const int v = j[key].get<int>();
  require(v >= 1, ErrorCode::ParseError, std::string("'") + key + "' must be positive");
  return v;
}

}  // namespace detail

/// A missing "im" array means a real matrix.
inline ComplexMatrix matrix_from_json(const Json& j) {
  require(j.is_object(), ErrorCode::ParseError, "matrix must be a JSON object");
  const int rows = detail::positive_int(j, "rows");
  const int cols = detail::positive_int(j, "cols");
  const auto re = detail::number_list(j, "re");
  const auto im = j.contains("im") ? detail::number_list(j, "im") : std::vector<double>(re.size(), 0.0);
  const auto count = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  require(re.size() == count && im.size() == count, ErrorCode::ParseError,
          "entry count does not match rows * cols");
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const auto p = static_cast<std::size_t>(i) * cols + k;
      m(i, k) = Complex(re[p], im[p]);
    }
  return m;
}

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      re.push_back(m(i, k).real());
      im.push_back(m(i, k).imag());
    }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

inline Spectrum spectrum_from_json(const Json& j) {
  require(j.is_object(), ErrorCode::ParseError, "spectrum must be a JSON object");
  const Dims d{detail::positive_int(j, "m"), detail::positive_int(j, "n")};
  return {d, detail::number_list(j, "values")};
}

inline Json spectrum_to_json(const Spectrum& s) {
  return {{"m", s.dims().a}, {"n", s.dims().b}, {"values", s.values()}};
}

/// Debug dump; not a stable interchange format.
inline Json sdp_problem_to_json(const SdpProblem& p) {
  auto vec = [](const RealVector& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  auto mat = [&](const RealMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vec(m.row(i).transpose()));
    return rows;
  };
  Json blocks = Json::array();
  for (const auto& blk : p.blocks) {
    Json terms = Json::array();
    for (const auto& [i, f] : blk.terms) terms.push_back({{"var", i}, {"coeff", matrix_to_json(f)}});
    blocks.push_back({{"f0", matrix_to_json(blk.f0)}, {"terms", terms}});
  }
  return {{"variables", p.n}, {"objective", vec(p.c)}, {"lmi_blocks", blocks}, {"ineq_g", mat(p.g)},
          {"ineq_h", vec(p.h)},  {"eq_a", mat(p.a)},      {"eq_b", vec(p.b)}};
}

}  // namespace abssep
