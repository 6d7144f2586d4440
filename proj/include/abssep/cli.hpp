#pragma once

// Command implementations behind the abssep executable.  Each command returns
// its output text and exit code so tests can call it directly.
//
// Exit codes: 0 success, 2 negative verdict, 3 input error.

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "abssep/absppt.hpp"
#include "abssep/bipartite.hpp"
#include "abssep/error.hpp"
#include "abssep/families.hpp"
#include "abssep/io.hpp"
#include "abssep/matcore.hpp"
#include "abssep/posmaps.hpp"
#include "abssep/rng.hpp"
#include "abssep/sdpsolve.hpp"
#include "abssep/witness.hpp"

namespace abssep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 2;
inline constexpr int kExitInput = 3;

inline constexpr std::uint64_t kDefaultSeed = 20140611;

struct RunConfig {
  std::uint64_t seed = kDefaultSeed;
  std::map<std::string, double> tolerances;
  std::map<std::string, long> sample_counts;
  std::string output_path;
  std::string format;  // empty: command default
  unsigned threads = 0;  // 0: hardware concurrency

  double tol(const std::string& name, double fallback) const {
    const auto it = tolerances.find(name);
    return it == tolerances.end() ? fallback : it->second;
  }

  long samples(const std::string& name, long fallback) const {
    const auto it = sample_counts.find(name);
    return it == sample_counts.end() ? fallback : it->second;
  }

  std::string format_or(const std::string& fallback) const { return format.empty() ? fallback : format; }

  unsigned worker_count() const {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
  }
};

inline void check_config(const RunConfig& cfg) {
  for (const auto& [name, n] : cfg.sample_counts)
    require(n >= 1, ErrorCode::ParseError, "sample count '" + name + "' must be at least 1");
  for (const auto& [name, t] : cfg.tolerances)
    require(std::isfinite(t) && t >= 0.0, ErrorCode::ParseError, "tolerance '" + name + "' must be nonnegative");
  require(cfg.format.empty() || cfg.format == "csv" || cfg.format == "json", ErrorCode::ParseError,
          "format must be csv or json");
}

inline double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "bad number for " + what + ": '" + s + "'");
  }
  require(used == s.size(), ErrorCode::ParseError, "bad number for " + what + ": '" + s + "'");
  return v;
}

inline long parse_long(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "bad integer for " + what + ": '" + s + "'");
  }
  require(used == s.size(), ErrorCode::ParseError, "bad integer for " + what + ": '" + s + "'");
  return v;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

/// `name=value` into (name, value).
inline std::pair<std::string, std::string> split_assignment(const std::string& s) {
  const auto eq = s.find('=');
  require(eq != std::string::npos && eq > 0, ErrorCode::ParseError, "expected name=value, got '" + s + "'");
  return {trim(s.substr(0, eq)), trim(s.substr(eq + 1))};
}

inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "seed") {
    const long v = parse_long(value, key);
    require(v >= 0, ErrorCode::ParseError, "seed must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(v);
  } else if (key == "format") {
    cfg.format = value;
  } else if (key == "out") {
    cfg.output_path = value;
  } else if (key == "threads") {
    cfg.threads = static_cast<unsigned>(std::max(0L, parse_long(value, key)));
  } else if (key == "samples") {
    cfg.sample_counts["samples"] = parse_long(value, key);
  } else if (key.rfind("samples.", 0) == 0) {
    cfg.sample_counts[key.substr(8)] = parse_long(value, key);
  } else if (key.rfind("tol.", 0) == 0) {
    cfg.tolerances[key.substr(4)] = parse_double(value, key);
  } else {
    fail(ErrorCode::ParseError, "unknown config key '" + key + "'");
  }
}

/// key=value lines; '#' starts a comment.
inline void load_config_text(RunConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto [k, v] = split_assignment(line);
    apply_setting(cfg, k, v);
  }
}

inline void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::ParseError, "cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  load_config_text(cfg, ss.str());
}

// ---------------------------------------------------------------------------
// Tabular output.

using Cell = std::variant<double, long, std::string>;

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    require(row.size() == header.size(), ErrorCode::InvalidDim, "row width does not match header");
    rows.push_back(std::move(row));
  }

  std::string csv() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
    out += '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        if (const auto* d = std::get_if<double>(&row[i]))
          out += format_number(*d);
        else if (const auto* l = std::get_if<long>(&row[i]))
          out += std::to_string(*l);
        else
          out += std::get<std::string>(row[i]);
      }
      out += '\n';
    }
    return out;
  }

  Json json() const {
    Json arr = Json::array();
    for (const auto& row : rows) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (const auto* d = std::get_if<double>(&row[i]))
          obj[header[i]] = std::isfinite(*d) ? Json(*d) : Json(nullptr);
        else if (const auto* l = std::get_if<long>(&row[i]))
          obj[header[i]] = *l;
        else
          obj[header[i]] = std::get<std::string>(row[i]);
      }
      arr.push_back(obj);
    }
    return arr;
  }

  std::string render(const std::string& format) const { return format == "json" ? json().dump(2) + "\n" : csv(); }
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string output;
};

inline std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// check-spectrum

inline CommandResult cmd_check_spectrum(const Spectrum& s, const RunConfig& cfg) {
  const double tol = cfg.tol("lmi", kLmiTol);
  const AbsPptReport r = check_abs_ppt(s, tol);
  const bool nec = necessary_2x2(s, tol);
  CommandResult out;
  out.exit_code = r.verdict == AbsPpt::No ? kExitNegative : kExitOk;
  const double min_eig = r.lmi_min_eigenvalues.empty() ? 0.0 : r.min_eigenvalue;
  if (cfg.format_or("json") == "csv") {
    Table t{{"m", "n", "verdict", "min_lmi_eigenvalue", "failing_lmi", "necessary_2x2"}, {}};
    t.add({long{s.dims().a}, long{s.dims().b}, to_string(r.verdict), min_eig, long{r.failing_lmi},
           long{nec ? 1 : 0}});
    out.output = t.csv();
  } else {
    Json j = {{"m", s.dims().a},
              {"n", s.dims().b},
              {"verdict", to_string(r.verdict)},
              {"lmi_min_eigenvalues", r.lmi_min_eigenvalues},
              {"min_lmi_eigenvalue", min_eig},
              {"necessary_2x2", nec}};
    j["failing_lmi"] = r.failing_lmi >= 0 ? Json(r.failing_lmi) : Json(nullptr);
    j["failing_lmi_min_eigenvalue"] =
        r.failing_lmi >= 0 ? Json(r.lmi_min_eigenvalues[static_cast<std::size_t>(r.failing_lmi)]) : Json(nullptr);
    out.output = render_json(j);
  }
  return out;
}

// ---------------------------------------------------------------------------
// witness-analyze

inline CommandResult cmd_witness_analyze(const ComplexMatrix& w, const RunConfig& cfg) {
  const WitnessSummary ws = summarize(HermitianMatrix(w));
  const Detectability v = cannot_detect_abs_ppt(ws);
  const double f = ws.ell >= -0.5 ? f_lemma2(std::min(ws.ell, 0.0)) : std::nan("");
  CommandResult out;
  out.exit_code = v == Detectability::Guaranteed ? kExitOk : kExitNegative;
  if (cfg.format_or("json") == "csv") {
    Table t{{"mu1", "ell", "neg_count", "f_ell", "verdict"}, {}};
    t.add({ws.mu1, ws.ell, long{ws.neg_count}, f, to_string(v)});
    out.output = t.csv();
  } else {
    Json j = {{"mu1", ws.mu1}, {"ell", ws.ell}, {"neg_count", ws.neg_count}, {"verdict", to_string(v)}};
    j["f_ell"] = std::isfinite(f) ? Json(f) : Json(nullptr);
    out.output = render_json(j);
  }
  return out;
}

// ---------------------------------------------------------------------------
// verify-certificates

struct VerifyOptions {
  std::optional<std::string> perturb;  // "choi-y"
  std::vector<int> breuer_hall_ns{4, 6};
};

inline CommandResult cmd_verify_certificates(const RunConfig& cfg, const VerifyOptions& opt = {}) {
  const double tol = cfg.tol("cert", 1e-10);
  const long grid = cfg.samples("grid", 21);
  const long lemma2_points = cfg.samples("lemma2", 5);
  Table t{{"certificate", "params", "value", "claimed", "abs_error", "min_eig", "status"}, {}};
  bool rejected = false;
  auto row = [&](const std::string& name, const std::string& params, double value, double claimed, double min_eig) {
    const bool ok = min_eig >= -tol && value <= claimed + tol;
    rejected = rejected || !ok;
    t.add({name, params, value, claimed, std::abs(value - claimed), min_eig, std::string(ok ? "ok" : "rejected")});
  };
  auto bc = [](double b, double c) { return "b=" + format_number(b) + " c=" + format_number(c); };

  const MapSpec choi = MapSpec::choi();
  const CertificateCheck cd = check_diamond_certificate(choi, choi_diamond_certificate());
  row("choi_diamond", "", cd.objective, 4.0 / 3.0, cd.min_eigenvalue);
  row("choi_min_eig", "", -min_eig_lb_from_diamond(cd.objective), 1.0 / 6.0, cd.min_eigenvalue);
  ComplexMatrix y = choi_lambda_max_certificate();
  if (opt.perturb) {
    require(*opt.perturb == "choi-y", ErrorCode::ParseError, "unknown perturbation '" + *opt.perturb + "'");
    y(2, 2) = 5.0 / 6.0;
  }
  const CertificateCheck cl = check_lambda_max_certificate(choi, y);
  row("choi_lambda_max", opt.perturb ? "perturbed" : "", cl.objective, 2.0 / 3.0, cl.min_eigenvalue);

  for (long i = 0; i < grid; ++i)
    for (long j = 0; j < grid; ++j) {
      const double step = grid > 1 ? (4.0 / 3.0) / static_cast<double>(grid - 1) : 0.0;
      const double b = step * static_cast<double>(i), c = step * static_cast<double>(j);
      const MapSpec g = MapSpec::generalized_choi(b, c);
      const CertificateCheck d = check_diamond_certificate(g, generalized_choi_diamond_certificate(b, c));
      row("gen_choi_diamond", bc(b, c), d.objective, (3.0 + b + c) / 3.0, d.min_eigenvalue);
      if (b + c < 2.0 / 3.0) continue;
      const GeneralizedChoiLambdaMax lm = generalized_choi_lambda_max_certificate(b, c);
      const CertificateCheck l = check_lambda_max_certificate(g, lm.y);
      row("gen_choi_lambda_max", bc(b, c), l.objective, lm.claimed, l.min_eigenvalue);
      if (!lm.case_one) {
        const double lhs = b + 2.0 * lm.x;
        const double gap = std::max(std::abs(lhs - (c + 2.0 * lm.yv)),
                                    std::abs(lhs - (2.0 - b - c - (2.0 * std::sqrt(lm.x * lm.yv) - 1.0))));
        row("gen_choi_xy_identity", bc(b, c), gap, 0.0, 0.0);
      }
    }

  for (int n : opt.breuer_hall_ns) {
    const MapSpec bh = MapSpec::breuer_hall(n);
    const std::string p = "n=" + std::to_string(n);
    const CertificateCheck d = check_diamond_certificate(bh, breuer_hall_diamond_certificate(n));
    row("breuer_hall_diamond", p, d.objective, (n + 2.0) / n, d.min_eigenvalue);
    const CertificateCheck l = check_lambda_max_certificate(bh, breuer_hall_lambda_max_certificate(n));
    row("breuer_hall_lambda_max", p, l.objective, 1.0 / (n - 2.0), l.min_eigenvalue);
  }

  const struct {
    const char* name;
    double lo, hi;
  } cases[] = {{"lemma2_case_a", -0.5, lemma2::kBranch1End},
               {"lemma2_case_b", std::nextafter(lemma2::kBranch1End, 0.0), std::nextafter(lemma2::kBranch3Start, -1.0)},
               {"lemma2_case_c", lemma2::kBranch3Start, 0.0}};
  for (const auto& k : cases)
    for (long i = 0; i < lemma2_points; ++i) {
      const double ell =
          lemma2_points > 1 ? k.lo + (k.hi - k.lo) * static_cast<double>(i) / static_cast<double>(lemma2_points - 1)
                            : k.lo;
      const double mu1 = f_lemma2(ell);
      const Lemma2Certificate cert = build_lemma2_certificate(ell, mu1, 9);
      const Lemma2Check chk = check_lemma2_certificate(cert, ell, mu1, 9, tol);
      const double worst = std::min({chk.psd_min, chk.min_y, chk.slack, -chk.residual});
      row(k.name, "ell=" + format_number(ell), 0.0 - cert.t, 0.0, worst);
    }

  CommandResult out;
  out.output = t.render(cfg.format_or("csv"));
  out.exit_code = rejected ? kExitNegative : kExitOk;
  return out;
}

// ---------------------------------------------------------------------------
// fig-data

inline Table fig_f_curve(const RunConfig& cfg) {
  const long n = cfg.samples("f_curve", 1001);
  Table t{{"ell", "f", "label"}, {}};
  for (long i = 0; i < n; ++i) {
    const double x = n > 1 ? -0.5 + 0.5 * static_cast<double>(i) / static_cast<double>(n - 1) : -0.5;
    t.add({x, f_lemma2(std::min(x, 0.0)), std::string()});
  }
  const double s2 = std::sqrt(2.0);
  t.add({-0.5, f_lemma2(-0.5), std::string("i")});
  t.add({-0.4, f_lemma2(-0.4), std::string("ii")});
  t.add({lemma2::kBranch1End, f_lemma2(lemma2::kBranch1End), std::string("iii")});
  t.add({lemma2::kBranch3Start, (1.0 + s2) / 4.0, std::string("iv")});  // left limit at the jump
  t.add({lemma2::kBranch3Start, f_lemma2(lemma2::kBranch3Start), std::string("v")});
  t.add({-0.2, f_lemma2(-0.2), std::string("vi")});
  t.add({0.0, f_lemma2(0.0), std::string("vii")});
  return t;
}

inline std::vector<double> bc_axis(const RunConfig& cfg) {
  const long n = cfg.samples("grid", 41);
  std::vector<double> v;
  for (long i = 0; i < n; ++i) v.push_back(n > 1 ? (4.0 / 3.0) * static_cast<double>(i) / static_cast<double>(n - 1) : 0.0);
  return v;
}

inline Table fig_phi_bc_region(const RunConfig& cfg) {
  Table t{{"b", "c", "positive", "positive_not_cp", "indecomposable", "exposed", "in_hull"}, {}};
  const auto axis = bc_axis(cfg);
  for (double b : axis)
    for (double c : axis)
      t.add({b, c, long{is_positive_bc(b, c)}, long{is_positive_not_cp_bc(b, c)}, long{is_indecomposable_bc(b, c)},
             long{is_exposed_bc(b, c)}, long{in_theorem_hull_bc(b, c)}});
  return t;
}

/// Largest-eigenvalue bound from the closed-form certificate, the matching
/// lower bound on ell from the diamond certificate, and the resulting verdict.
inline Table fig_gen_choi_ub(const RunConfig& cfg) {
  Table t{{"b", "c", "case", "lemma_applies", "mu1_ub", "ell_lb", "f_ell", "verdict"}, {}};
  const auto axis = bc_axis(cfg);
  for (double b : axis)
    for (double c : axis) {
      const GeneralizedChoiLambdaMax lm = generalized_choi_lambda_max_certificate(b, c);
      const double mu1 = check_lambda_max_certificate(MapSpec::generalized_choi(b, c), lm.y).objective;
      const double ell = -(b + c) / 6.0;
      t.add({b, c, long{lm.case_one ? 1 : 2}, long{b + c >= 2.0 / 3.0 ? 1 : 0}, mu1, ell, f_lemma2(ell),
             to_string(cannot_detect_abs_ppt(ell, mu1))});
    }
  return t;
}

inline Table fig_upb_interval(const RunConfig& cfg) {
  const long n = cfg.samples("upb", 301);
  Table t{{"p", "lmi_min_eig", "gb_distance2", "class", "label"}, {}};
  auto add = [&](double p, const std::string& label) {
    const Spectrum s = upb_spectrum(p);
    double f2 = 0.0;
    for (double v : s.values()) f2 += v * v;
    t.add({p, min_eigenvalue(upb_lmi(p)), 9.0 - 1.0 / f2, to_string(upb_classify(p)), label});
  };
  for (long i = 0; i < n; ++i) add(n > 1 ? 0.5 + 0.3 * static_cast<double>(i) / static_cast<double>(n - 1) : 0.5, "");
  add(upb_abs_ppt_threshold(), "abs_ppt_threshold");
  add(upb_abs_sep_threshold(), "abs_sep_threshold");
  return t;
}

inline CommandResult cmd_fig_data(const std::string& figure, const RunConfig& cfg) {
  Table t;
  if (figure == "f_curve")
    t = fig_f_curve(cfg);
  else if (figure == "phi_bc_region")
    t = fig_phi_bc_region(cfg);
  else if (figure == "gen_choi_ub")
    t = fig_gen_choi_ub(cfg);
  else if (figure == "upb_interval")
    t = fig_upb_interval(cfg);
  else
    fail(ErrorCode::ParseError, "unknown figure '" + figure + "'");
  return {kExitOk, t.render(cfg.format_or("csv"))};
}

// ---------------------------------------------------------------------------
// orbit-scan

struct Criterion {
  enum class Kind { Realignment, Map, Ppt } kind = Kind::Ppt;
  std::optional<MapSpec> map;
  std::string name;
};

/// realignment | ppt | choi | gen_choi:b,c (or gen_choi(b,c)) | breuer_hall
inline Criterion parse_criterion(const std::string& s, Dims d) {
  Criterion c;
  c.name = s;
  std::replace(c.name.begin(), c.name.end(), ',', ';');
  if (s == "realignment") {
    c.kind = Criterion::Kind::Realignment;
  } else if (s == "ppt") {
    c.kind = Criterion::Kind::Ppt;
  } else if (s == "choi") {
    c.kind = Criterion::Kind::Map;
    c.map = MapSpec::choi();
  } else if (s.rfind("gen_choi:", 0) == 0 || (s.rfind("gen_choi(", 0) == 0 && s.back() == ')')) {
    const auto args = s.substr(9, s.back() == ')' ? s.size() - 10 : std::string::npos);
    const auto comma = args.find(',');
    require(comma != std::string::npos, ErrorCode::ParseError, "expected gen_choi:b,c");
    c.kind = Criterion::Kind::Map;
    c.map = MapSpec::generalized_choi(parse_double(args.substr(0, comma), "b"), parse_double(args.substr(comma + 1), "c"));
  } else if (s == "breuer_hall") {
    c.kind = Criterion::Kind::Map;
    c.map = MapSpec::breuer_hall(d.b);
  } else {
    fail(ErrorCode::ParseError, "unknown criterion '" + s + "'");
  }
  if (c.map)
    require(c.map->in_dim() == d.b, ErrorCode::InvalidDim, "map dimension does not match the second factor");
  return c;
}

struct OrbitSample {
  double value = 0.0;    // |R|_tr, or the minimum eigenvalue after the map
  double ppt_min = 0.0;  // minimum eigenvalue of the partial transpose
};

inline OrbitSample orbit_sample(const Spectrum& s, const Criterion& crit, const Rng& base, std::uint64_t index) {
  Rng rng = base.split(index);
  const Dims d = s.dims();
  const ComplexMatrix u = haar_unitary(d.total(), rng);
  const ComplexMatrix rho = rotate_diagonal(s.vector(), u).matrix();
  OrbitSample out;
  const ComplexMatrix pt = partial_transpose(rho, d);
  const RealVector ev = eigvalsh(HermitianMatrix(pt));
  out.ppt_min = ev(ev.size() - 1);
  switch (crit.kind) {
    case Criterion::Kind::Realignment: out.value = realignment_norm(rho, d); break;
    case Criterion::Kind::Ppt: out.value = out.ppt_min; break;
    case Criterion::Kind::Map: {
      const RealVector e = eigvalsh(HermitianMatrix(apply_id_tensor(*crit.map, rho, d)));
      out.value = e(e.size() - 1);
      break;
    }
  }
  return out;
}

/// Evaluates every sample on a worker pool; sample i always uses stream i of
/// the seed, so results do not depend on the thread count.
inline std::vector<OrbitSample> orbit_scan(const Spectrum& s, const Criterion& crit, std::uint64_t seed, long samples,
                                           unsigned threads) {
  std::vector<OrbitSample> out(static_cast<std::size_t>(samples));
  const Rng base(seed);
  std::atomic<long> next{0};
  auto work = [&] {
    for (long i; (i = next.fetch_add(1)) < samples;)
      out[static_cast<std::size_t>(i)] = orbit_sample(s, crit, base, static_cast<std::uint64_t>(i));
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(samples)));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return out;
}

inline CommandResult cmd_orbit_scan(const Spectrum& s, const std::string& criterion, const RunConfig& cfg) {
  const Criterion crit = parse_criterion(criterion, s.dims());
  const long samples = cfg.samples("samples", 1000);
  const double tol = cfg.tol("orbit", 1e-8);
  const auto results = orbit_scan(s, crit, cfg.seed, samples, cfg.worker_count());

  const bool upper = crit.kind == Criterion::Kind::Realignment;
  long worst_idx = 0, violations = 0, ppt_violations = 0;
  double ppt_min = results[0].ppt_min;
  for (long i = 0; i < samples; ++i) {
    const auto& r = results[static_cast<std::size_t>(i)];
    const auto& w = results[static_cast<std::size_t>(worst_idx)];
    if (upper ? r.value > w.value : r.value < w.value) worst_idx = i;
    if (upper ? r.value > 1.0 + tol : r.value < -tol) ++violations;
    if (r.ppt_min < -tol) ++ppt_violations;
    ppt_min = std::min(ppt_min, r.ppt_min);
  }
  const bool bad = violations > 0 || ppt_violations > 0;
  Table t{{"criterion", "samples", "seed", "worst_value", "worst_sample", "violations", "ppt_min_eig",
           "ppt_violations", "status"},
          {}};
  t.add({crit.name, samples, static_cast<long>(cfg.seed), results[static_cast<std::size_t>(worst_idx)].value,
         worst_idx, violations, ppt_min, ppt_violations, std::string(bad ? "violation" : "ok")});
  return {bad ? kExitNegative : kExitOk, t.render(cfg.format_or("csv"))};
}

// ---------------------------------------------------------------------------
// family

struct FamilyOptions {
  int n = 3;
  std::optional<double> alpha;
  std::optional<double> p;
};

inline CommandResult cmd_family(const std::string& kind, const FamilyOptions& opt, const RunConfig& cfg) {
  const long points = cfg.samples("family", 201);
  auto sweep = [&](double lo, double hi) {
    std::vector<double> v;
    for (long i = 0; i < points; ++i)
      v.push_back(points > 1 ? lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1) : lo);
    return v;
  };
  Table t;
  bool negative = false;
  auto exact = [](const Spectrum& s) { return s.dims().min() <= 3 ? to_string(is_abs_ppt(s)) : std::string("n/a"); };
  if (kind == "werner") {
    t.header = {"n", "alpha", "class", "lmi_case1", "lmi_case2", "gb_abs_sep", "abs_ppt"};
    const auto alphas = opt.alpha ? std::vector<double>{*opt.alpha} : sweep(-1.0, 1.0);
    for (double a : alphas) {
      const WernerParams w(opt.n, a);
      const auto e = werner_lmi_min_eigs(w);
      const FamilyClass fc = werner_classify(w);
      negative = fc == FamilyClass::NotAbsPPT;
      t.add({long{opt.n}, a, to_string(fc), e.case1, e.case2, long{gurvits_barnum_abs_sep(werner_spectrum(w))},
             exact(werner_spectrum(w))});
    }
  } else if (kind == "isotropic") {
    t.header = {"n", "alpha", "class", "threshold", "abs_ppt"};
    const double lo = -1.0 / (static_cast<double>(opt.n) * opt.n - 1.0);
    const auto alphas = opt.alpha ? std::vector<double>{*opt.alpha} : sweep(lo, 1.0);
    for (double a : alphas) {
      const IsotropicParams ip(opt.n, a);
      const FamilyClass fc = isotropic_classify(ip);
      negative = fc == FamilyClass::NotAbsPPT;
      t.add({long{opt.n}, a, to_string(fc), isotropic_threshold(opt.n), exact(isotropic_spectrum(ip))});
    }
  } else if (kind == "upb") {
    t.header = {"p", "class", "lmi_min_eig", "abs_ppt"};
    const auto ps = opt.p ? std::vector<double>{*opt.p} : sweep(0.5, 0.8);
    for (double p : ps) {
      const UpbMixtureParams u(p);
      const UpbClass uc = upb_classify(u);
      negative = uc == UpbClass::NotAbsPPT;
      t.add({p, to_string(uc), min_eigenvalue(upb_lmi(p)), exact(upb_spectrum(p))});
    }
  } else {
    fail(ErrorCode::ParseError, "unknown family '" + kind + "'");
  }
  const bool single = opt.alpha.has_value() || opt.p.has_value();
  return {single && negative ? kExitNegative : kExitOk, t.render(cfg.format_or("csv"))};
}

}  // namespace abssep::cli
