#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "abssep/cli.hpp"

using namespace abssep;
using namespace abssep::cli;

namespace {

struct CliRun {
  int exit_code;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(ABSSEP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string sample(const std::string& name) { return std::string(ABSSEP_SAMPLES_DIR) + "/" + name; }

std::string golden(const std::string& name) {
  std::ifstream in(std::string(ABSSEP_GOLDEN_DIR) + "/" + name, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST(Config, FileThenFlags) {
  RunConfig cfg;
  load_config_text(cfg, "# comment\nseed = 9\nsamples = 50\nsamples.grid=5\ntol.orbit=1e-6\nformat=json\n");
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.samples("samples", 0), 50);
  EXPECT_EQ(cfg.samples("grid", 0), 5);
  EXPECT_DOUBLE_EQ(cfg.tol("orbit", 0.0), 1e-6);
  EXPECT_EQ(cfg.format_or("csv"), "json");
  EXPECT_THROW(load_config_text(cfg, "bogus=1\n"), Error);
  EXPECT_THROW(load_config_text(cfg, "seed\n"), Error);
  EXPECT_THROW(load_config_text(cfg, "seed=abc\n"), Error);
  cfg.sample_counts["grid"] = 0;
  EXPECT_THROW(check_config(cfg), Error);
}

TEST(Table, CsvFormatting) {
  Table t{{"x", "n", "s"}, {}};
  t.add({1.0 / 3.0, 7L, std::string("ok")});
  t.add({1e-20, -1L, std::string()});
  EXPECT_EQ(t.csv(), "x,n,s\n0.333333333333,7,ok\n1e-20,-1,\n");
  EXPECT_THROW(t.add({1.0}), Error);
  EXPECT_EQ(t.json()[0]["n"], 7);
}

TEST(CheckSpectrum, SpecExamples) {
  const RunConfig cfg;
  const auto yes = cmd_check_spectrum(Spectrum::uniform(Dims{3, 3}), cfg);
  EXPECT_EQ(yes.exit_code, kExitOk);
  EXPECT_EQ(parse_json(yes.output)["verdict"], "Yes");
  const auto no = cmd_check_spectrum(isotropic_spectrum({3, 0.2}), cfg);
  EXPECT_EQ(no.exit_code, kExitNegative);
  const Json j = parse_json(no.output);
  EXPECT_EQ(j["verdict"], "No");
  EXPECT_LT(j["failing_lmi_min_eigenvalue"].get<double>(), 0.0);
  const auto nec = cmd_check_spectrum(Spectrum::uniform(Dims{4, 4}), cfg);
  EXPECT_EQ(parse_json(nec.output)["verdict"], "NecessaryPassedOnly");
}

TEST(WitnessAnalyze, SpecExamples) {
  const RunConfig cfg;
  const ComplexMatrix choi = witness_from_map(MapSpec::choi(), max_entangled(3)).matrix();
  const auto r = cmd_witness_analyze(choi, cfg);
  EXPECT_EQ(r.exit_code, kExitOk);
  const Json j = parse_json(r.output);
  EXPECT_EQ(j["verdict"], "Guaranteed");
  EXPECT_NEAR(j["ell"].get<double>(), -1.0 / 6.0, 1e-12);
  EXPECT_NEAR(j["mu1"].get<double>(), 1.0 / 3.0, 1e-12);
  EXPECT_EQ(cmd_witness_analyze(ComplexMatrix(ComplexMatrix::Identity(9, 9) / 9.0), cfg).exit_code, kExitOk);
  const auto mu = extremal_witness_spectrum(-0.4, 0.62, 9);
  ComplexMatrix d = ComplexMatrix::Zero(9, 9);
  for (int i = 0; i < 9; ++i) d(i, i) = mu[static_cast<std::size_t>(i)];
  const auto bad = cmd_witness_analyze(d, cfg);
  EXPECT_EQ(bad.exit_code, kExitNegative);
  EXPECT_EQ(parse_json(bad.output)["verdict"], "Inconclusive");
}

TEST(VerifyCertificates, DefaultsPassAndPerturbationRejects) {
  const RunConfig cfg;
  const auto r = cmd_verify_certificates(cfg);
  EXPECT_EQ(r.exit_code, kExitOk);
  const auto rows = lines(r.output);
  int grid = 0, bh = 0;
  for (const auto& l : rows) {
    if (l.rfind("gen_choi_diamond,", 0) == 0) ++grid;
    if (l.rfind("breuer_hall_diamond,", 0) == 0) ++bh;
    EXPECT_EQ(l.find("rejected"), std::string::npos) << l;
  }
  EXPECT_EQ(grid, 21 * 21);
  EXPECT_EQ(bh, 2);

  VerifyOptions opt;
  opt.perturb = "choi-y";
  const auto bad = cmd_verify_certificates(cfg, opt);
  EXPECT_EQ(bad.exit_code, kExitNegative);
  bool seen = false;
  for (const auto& l : lines(bad.output))
    if (l.rfind("choi_lambda_max,", 0) == 0) {
      EXPECT_EQ(fields(l).back(), "rejected");
      seen = true;
    }
  EXPECT_TRUE(seen);
}

TEST(FigData, SpecExamples) {
  const RunConfig cfg;
  const auto f = lines(cmd_fig_data("f_curve", cfg).output);
  EXPECT_EQ(f.size(), 1u + 1001u + 7u);
  bool vi = false;
  for (const auto& l : f)
    if (fields(l).back() == "vi") {
      EXPECT_NEAR(std::stod(fields(l)[1]), 0.9, 1e-12);
      vi = true;
    }
  EXPECT_TRUE(vi);

  RunConfig small;
  small.sample_counts["grid"] = 4;  // steps of 4/9
  const auto region = lines(cmd_fig_data("phi_bc_region", small).output);
  EXPECT_EQ(region.size(), 1u + 16u);

  RunConfig six;
  six.sample_counts["grid"] = 11;  // 0, 2/15, ..., 4/3 contains 6/5
  bool hit = false;
  for (const auto& l : lines(cmd_fig_data("gen_choi_ub", six).output)) {
    const auto fs = fields(l);
    if (fs[0] == "1.2" && fs[1] == "1.2") {
      EXPECT_NEAR(std::stod(fs[4]), 0.6, 1e-12);
      EXPECT_EQ(fs.back(), "Guaranteed");
      hit = true;
    }
  }
  EXPECT_TRUE(hit);
  EXPECT_THROW(cmd_fig_data("nope", cfg), Error);
}

TEST(OrbitScan, AbsPptSpectrumPasses) {
  RunConfig cfg;
  cfg.sample_counts["samples"] = 300;
  const Spectrum s = sample_abs_ppt_spectrum(Dims{3, 3}, 17);
  for (const char* crit : {"realignment", "choi", "gen_choi:1.2,1.2", "gen_choi(0.5,0.2)"})
    EXPECT_EQ(cmd_orbit_scan(s, crit, cfg).exit_code, kExitOk) << crit;
}

TEST(OrbitScan, IsotropicViolationFound) {
  RunConfig cfg;
  cfg.sample_counts["samples"] = 50;
  const auto r = cmd_orbit_scan(isotropic_spectrum({3, 0.5}), "choi", cfg);
  EXPECT_EQ(r.exit_code, kExitNegative);
  EXPECT_EQ(fields(lines(r.output)[1]).back(), "violation");
}

TEST(OrbitScan, ThreadCountDoesNotChangeOutput) {
  RunConfig one, four;
  one.sample_counts["samples"] = four.sample_counts["samples"] = 64;
  one.threads = 1;
  four.threads = 4;
  const Spectrum s = sample_abs_ppt_spectrum(Dims{3, 3}, 3);
  EXPECT_EQ(cmd_orbit_scan(s, "realignment", one).output, cmd_orbit_scan(s, "realignment", four).output);
}

TEST(OrbitScan, CriterionParsing) {
  EXPECT_THROW(parse_criterion("choi", Dims{2, 2}), Error);
  EXPECT_THROW(parse_criterion("gen_choi:1", Dims{3, 3}), Error);
  EXPECT_THROW(parse_criterion("magic", Dims{3, 3}), Error);
  EXPECT_EQ(parse_criterion("breuer_hall", Dims{2, 4}).map->in_dim(), 4);
  EXPECT_EQ(parse_criterion("gen_choi:1,2", Dims{3, 3}).name, "gen_choi:1;2");
}

TEST(Family, SinglePointsAndSweeps) {
  const RunConfig cfg;
  EXPECT_EQ(cmd_family("werner", {3, 0.2, std::nullopt}, cfg).exit_code, kExitOk);
  EXPECT_EQ(cmd_family("werner", {3, 0.5, std::nullopt}, cfg).exit_code, kExitNegative);
  EXPECT_EQ(cmd_family("isotropic", {3, 0.2, std::nullopt}, cfg).exit_code, kExitNegative);
  EXPECT_EQ(cmd_family("upb", {3, std::nullopt, 0.7}, cfg).exit_code, kExitOk);
  const auto sweep = cmd_family("upb", {}, cfg);
  EXPECT_EQ(sweep.exit_code, kExitOk);
  EXPECT_EQ(lines(sweep.output).size(), 202u);
  EXPECT_THROW(cmd_family("ghz", {}, cfg), Error);
}

// ---------------------------------------------------------------------------
// The executable: exit codes and byte-exact output.

TEST(Executable, ExitCodes) {
  EXPECT_EQ(run_cli("check-spectrum " + sample("uniform_3x3.json")).exit_code, 0);
  EXPECT_EQ(run_cli("check-spectrum " + sample("isotropic_n3_a0.2.json")).exit_code, 2);
  EXPECT_EQ(run_cli("check-spectrum /nonexistent.json").exit_code, 3);
  EXPECT_EQ(run_cli("witness-analyze " + sample("choi_witness.json")).exit_code, 0);
  EXPECT_EQ(run_cli("witness-analyze " + sample("inconclusive_witness.json")).exit_code, 2);
  EXPECT_EQ(run_cli("verify-certificates --perturb choi-y").exit_code, 2);
  EXPECT_EQ(run_cli("verify-certificates --perturb nothing").exit_code, 3);
  EXPECT_EQ(run_cli("fig-data nope").exit_code, 3);
  EXPECT_EQ(run_cli("--tol orbit family werner").exit_code, 3);
  EXPECT_EQ(run_cli("family upb --p 0.6").exit_code, 2);
  EXPECT_EQ(run_cli("").exit_code, 3);
}

TEST(Executable, CheckSpectrumJson) {
  const CliRun r = run_cli("check-spectrum " + sample("uniform_4x4.json"));
  EXPECT_EQ(parse_json(r.out)["verdict"], "NecessaryPassedOnly");
}

TEST(Executable, GoldenFCurve) {
  const CliRun r = run_cli("fig-data f_curve --samples f_curve=41");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, golden("f_curve_41.csv"));
}

TEST(Executable, GoldenUpbInterval) {
  EXPECT_EQ(run_cli("fig-data upb_interval --samples upb=16").out, golden("upb_interval_16.csv"));
}

TEST(Executable, GoldenWernerSweep) {
  EXPECT_EQ(run_cli("family werner --n 3 --samples family=9").out, golden("werner_n3_9.csv"));
}

TEST(Executable, GoldenOrbitScan) {
  const CliRun r = run_cli("orbit-scan " + sample("upb_p0.7.json") + " --criterion realignment --seed 7 --samples 40");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, golden("orbit_upb_realignment.csv"));
}

TEST(Executable, GoldenCertificates) {
  EXPECT_EQ(run_cli("verify-certificates --samples grid=3 --samples lemma2=2").out, golden("certificates_grid3.csv"));
}

TEST(Executable, ConfigFileAndOverride) {
  const std::string path = testing::TempDir() + "abssep_cfg.txt";
  std::ofstream(path) << "samples.f_curve = 41\nformat = json\n";
  const CliRun viaconfig = run_cli("--config " + path + " --format csv fig-data f_curve");
  EXPECT_EQ(viaconfig.out, golden("f_curve_41.csv"));
  const std::string out = testing::TempDir() + "abssep_out.csv";
  EXPECT_EQ(run_cli("--out " + out + " fig-data f_curve --samples f_curve=41").exit_code, 0);
  std::ifstream in(out, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), golden("f_curve_41.csv"));
}
