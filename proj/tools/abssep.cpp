#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "abssep/cli.hpp"

using namespace abssep;
using namespace abssep::cli;

namespace {

struct Flags {
  std::optional<long> seed;
  std::vector<std::string> samples;  // N or name=N
  std::vector<std::string> tols;     // name=value
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<unsigned> threads;
  std::string config;
};

RunConfig build_config(const Flags& f) {
  RunConfig cfg;
  if (!f.config.empty()) load_config_file(cfg, f.config);
  if (f.seed) apply_setting(cfg, "seed", std::to_string(*f.seed));
  for (const auto& s : f.samples) {
    if (s.find('=') == std::string::npos) {
      apply_setting(cfg, "samples", s);
    } else {
      const auto [k, v] = split_assignment(s);
      apply_setting(cfg, "samples." + k, v);
    }
  }
  for (const auto& t : f.tols) {
    const auto [k, v] = split_assignment(t);
    apply_setting(cfg, "tol." + k, v);
  }
  if (f.out) cfg.output_path = *f.out;
  if (f.format) cfg.format = *f.format;
  if (f.threads) cfg.threads = *f.threads;
  check_config(cfg);
  return cfg;
}

int emit(const CommandResult& r, const RunConfig& cfg) {
  if (cfg.output_path.empty()) {
    std::fwrite(r.output.data(), 1, r.output.size(), stdout);
  } else {
    std::ofstream out(cfg.output_path, std::ios::binary);
    require(static_cast<bool>(out), ErrorCode::ParseError, "cannot write " + cfg.output_path);
    out << r.output;
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Absolute separability toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  app.add_option("--seed", flags.seed, "base RNG seed");
  app.add_option("--samples", flags.samples, "sample count N, or name=N; repeatable")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_option("--tol", flags.tols, "named tolerance, name=value; repeatable")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_option("--out", flags.out, "write output here instead of stdout");
  app.add_option("--format", flags.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", flags.threads, "worker threads for orbit scans");
  app.add_option("--config", flags.config, "key=value config file; flags override it");

  std::string spectrum_file, matrix_file, figure, criterion, family;
  VerifyOptions verify;
  FamilyOptions fam;
  std::optional<double> alpha, p;

  auto* check = app.add_subcommand("check-spectrum", "absolute PPT verdict for a spectrum file");
  check->add_option("file", spectrum_file)->required();

  auto* witness = app.add_subcommand("witness-analyze", "can a witness detect any absolutely PPT state");
  witness->add_option("file", matrix_file)->required();

  auto* certs = app.add_subcommand("verify-certificates", "check every analytic dual certificate");
  std::string perturb;
  certs->add_option("--perturb", perturb, "deliberately break a certificate (choi-y)");
  certs->add_option("--bh-n", verify.breuer_hall_ns, "Breuer-Hall dimensions");

  auto* fig = app.add_subcommand("fig-data", "figure data as CSV");
  fig->add_option("figure", figure)
      ->required()
      ->check(CLI::IsMember({"f_curve", "phi_bc_region", "gen_choi_ub", "upb_interval"}));

  auto* orbit = app.add_subcommand("orbit-scan", "test a criterion on Haar orbits of a spectrum");
  orbit->add_option("file", spectrum_file)->required();
  orbit->add_option("--criterion", criterion, "realignment|ppt|choi|gen_choi:b,c|breuer_hall")->required();

  auto* fam_cmd = app.add_subcommand("family", "Werner, isotropic or UPB-mixture classification");
  fam_cmd->add_option("kind", family)->required()->check(CLI::IsMember({"werner", "isotropic", "upb"}));
  fam_cmd->add_option("--n", fam.n, "local dimension");
  fam_cmd->add_option("--alpha", alpha, "single alpha instead of a sweep");
  fam_cmd->add_option("--p", p, "single p instead of a sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    const RunConfig cfg = build_config(flags);
    if (*check) return emit(cmd_check_spectrum(spectrum_from_json(read_json_file(spectrum_file)), cfg), cfg);
    if (*witness) return emit(cmd_witness_analyze(matrix_from_json(read_json_file(matrix_file)), cfg), cfg);
    if (*certs) {
      if (!perturb.empty()) verify.perturb = perturb;
      return emit(cmd_verify_certificates(cfg, verify), cfg);
    }
    if (*fig) return emit(cmd_fig_data(figure, cfg), cfg);
    if (*orbit)
      return emit(cmd_orbit_scan(spectrum_from_json(read_json_file(spectrum_file)), criterion, cfg), cfg);
    if (*fam_cmd) {
      fam.alpha = alpha;
      fam.p = p;
      return emit(cmd_family(family, fam, cfg), cfg);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
