#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "qillum/cli/config.hpp"
#include "qillum/cli/csv.hpp"
#include "qillum/cli/evaluator.hpp"
#include "qillum/cli/presets.hpp"
#include "qillum/cli/sweep.hpp"
#include "qillum/error.hpp"
#include "support/generators.hpp"

using namespace qillum;
using namespace qillum::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qillum_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig small_config(const fs::path& out) {
  RunConfig cfg = default_config();
  cfg.n_max = 8;
  cfg.T_grid = {0.1, 0.5};
  cfg.K_grid = {10, 1000};
  cfg.grid = {0.01, 0.02};
  cfg.out_dir = out.string();
  return cfg;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(QILLUM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, Defaults) {
  const RunConfig cfg = default_config();
  EXPECT_NEAR(std::sinh(cfg.r) * std::sinh(cfg.r), 0.05, 1e-15);
  EXPECT_EQ(cfg.kappa, 0.01);
  EXPECT_EQ(cfg.n_th, 1.0);
  EXPECT_EQ(cfg.n_max, 24);
  EXPECT_FALSE(cfg.eta.has_value());
}

TEST(Config, Grids) {
  const auto t = default_T_grid();
  EXPECT_TRUE(std::is_sorted(t.begin(), t.end()));
  EXPECT_EQ(t.front(), 0.01);
  EXPECT_EQ(t.back(), 0.99);
  for (double named : {0.041, 0.125, 0.5, 0.96}) EXPECT_NE(std::find(t.begin(), t.end(), named), t.end()) << named;
  EXPECT_EQ(t.size(), 99u);

  const auto k = default_K_grid();
  EXPECT_EQ(k.front(), 10);
  EXPECT_EQ(k.back(), 10000000);
  EXPECT_TRUE(std::is_sorted(k.begin(), k.end()));

  EXPECT_EQ(parse_real_grid("0.1,0.2, 0.3"), (std::vector<double>{0.1, 0.2, 0.3}));
  const auto span = parse_real_grid("0:1:5");
  ASSERT_EQ(span.size(), 5u);
  EXPECT_DOUBLE_EQ(span[2], 0.5);
  EXPECT_EQ(parse_int_list("1,10,1e6"), (std::vector<long long>{1, 10, 1000000}));
  EXPECT_THROW(parse_real_grid("0.1,abc"), InvalidArgument);
  EXPECT_THROW(parse_int_list("1.5"), InvalidArgument);
  EXPECT_THROW(parse_protocol_list("pa,xyz"), InvalidArgument);
}

TEST(Config, FileAndOverrides) {
  RunConfig cfg = default_config();
  std::istringstream in(
      "# background\n"
      "kappa = 0.02\n"
      "nth = 2   # inline\n"
      "env-cutoff = 30\n"
      "eta = 0.1\n"
      "protocols = pa, nlpa1\n"
      "scheme = photon_diff\n"
      "T = 0.1,0.2\n");
  load_config_stream(cfg, in, "inline");
  EXPECT_EQ(cfg.kappa, 0.02);
  EXPECT_EQ(cfg.n_th, 2.0);
  EXPECT_EQ(cfg.env_cutoff, 30);
  EXPECT_EQ(cfg.eta, 0.1);
  EXPECT_EQ(cfg.protocols.size(), 2u);
  EXPECT_EQ(cfg.scheme, receiver::Scheme::PhotonDiff);
  EXPECT_EQ(cfg.T_grid.size(), 2u);
  apply_setting(cfg, "eta", "none");
  EXPECT_FALSE(cfg.eta.has_value());
  apply_setting(cfg, "kappa", "0.5");
  EXPECT_EQ(cfg.kappa, 0.5);

  std::istringstream bad("bogus = 1\n");
  EXPECT_THROW(load_config_stream(cfg, bad, "inline"), InvalidArgument);
  EXPECT_THROW(load_config_file(cfg, "/nonexistent/qillum.cfg"), IoError);

  RunConfig range = default_config();
  range.T_grid = {1.0};
  EXPECT_THROW(validate(range), InvalidArgument);
  range = default_config();
  range.kappa = 0.0;
  EXPECT_THROW(validate(range), InvalidArgument);
}

TEST(Csv, FormatAndRoundTrip) {
  EXPECT_EQ(format_real(0.5), "5.0000000000000000e-01");
  EXPECT_EQ(format_real(NAN), "nan");
  EXPECT_EQ(format_real(-INFINITY), "-inf");
  gen::Source src(21);
  CsvTable t;
  t.header = {"x", "y", "z"};
  for (int i = 0; i < 200; ++i) {
    const double scale = std::pow(10.0, src.uniform(-300.0, 300.0));
    t.add_numeric_row({src.normal(), src.uniform() * scale, -scale});
  }
  const CsvTable back = parse_csv(t.render());
  ASSERT_EQ(back.header, t.header);
  ASSERT_EQ(back.rows.size(), t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const double orig = std::stod(t.rows[i][j]);
      const double parsed = std::stod(back.rows[i][j]);
      EXPECT_LE(std::abs(parsed - orig), 1e-12 * std::abs(orig));
    }
  const std::string text = t.render();
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
}

TEST(Csv, WriteFailsOnUnwritableDirectory) {
  const fs::path base = scratch("blocker");
  fs::create_directories(base);
  std::ofstream(base / "file") << "x";
  CsvTable t;
  t.header = {"a"};
  EXPECT_THROW(write_csv(base / "file" / "sub", "t.csv", t), IoError);
  fs::remove_all(base);
}

TEST(Sweep, BellLimitEntropy) {
  RunConfig cfg = default_config();
  cfg.sweep = "T";
  cfg.metric = "entropy";
  cfg.grid = {0.0};
  cfg.protocols = {engineer::Protocol::Nlpa1};
  std::ostringstream log;
  const CsvTable t = sweep_table(cfg, log);
  EXPECT_EQ(t.header, (std::vector<std::string>{"T", "protocol", "entropy"}));
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0][1], "nlpa1");
  EXPECT_EQ(std::stod(t.rows[0][2]), 1.0);
}

TEST(Sweep, IndistinguishableLimit) {
  RunConfig cfg = default_config();
  cfg.sweep = "kappa";
  cfg.metric = "q";
  cfg.grid = {1e-6};
  cfg.protocols = {engineer::Protocol::Tmss};
  std::ostringstream log;
  const CsvTable t = sweep_table(cfg, log);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_GE(std::stod(t.rows[0][2]), 1.0 - 1e-4);
}

TEST(Sweep, CopiesFollowChernoffCurve) {
  RunConfig cfg = default_config();
  cfg.n_max = 12;
  cfg.sweep = "K";
  cfg.metric = "p_error";
  cfg.grid = {1, 10, 100};
  cfg.protocols = {engineer::Protocol::Tmss, engineer::Protocol::Nlpa1};
  cfg.T_grid = {0.3};
  std::ostringstream log;
  const CsvTable t = sweep_table(cfg, log);
  ASSERT_EQ(t.rows.size(), 6u);
  Evaluator ev(cfg);
  for (const auto& row : t.rows) {
    const auto p = engineer::parse_protocol(row[1]).value();
    const double q = ev.q_value(p, 0.3, cfg.kappa, cfg.eta);
    EXPECT_NEAR(std::stod(row[2]), 0.5 * std::pow(q, std::stod(row[0])), 1e-15);
  }
}

TEST(Sweep, GainForReferenceIsRejected) {
  RunConfig cfg = default_config();
  cfg.sweep = "T";
  cfg.metric = "gain";
  cfg.grid = {0.5};
  cfg.protocols = {engineer::Protocol::Tmss};
  std::ostringstream log;
  EXPECT_THROW(sweep_table(cfg, log), InvalidArgument);
  cfg.grid = {0.5, 0.2};
  cfg.protocols = {engineer::Protocol::Pa};
  EXPECT_THROW(sweep_table(cfg, log), InvalidArgument);
  cfg.grid = {};
  cfg.sweep = "eta";
  EXPECT_THROW(sweep_table(cfg, log), InvalidArgument);
  cfg.sweep = "depth";
  EXPECT_THROW(sweep_table(cfg, log), InvalidArgument);
}

TEST(Presets, WriteExactlyDeclaredFiles) {
  for (const auto& name : preset_names()) {
    const fs::path out = scratch("preset_" + name);
    RunConfig cfg = small_config(out);
    Evaluator ev(cfg);
    std::ostringstream log;
    const auto written = run_preset(name, cfg, ev, log);
    std::set<std::string> expected;
    for (const auto& f : preset_files(name)) expected.insert(f);
    std::set<std::string> found;
    for (const auto& e : fs::directory_iterator(out)) found.insert(e.path().filename().string());
    EXPECT_EQ(found, expected) << name;
    EXPECT_EQ(written.size(), expected.size()) << name;
    for (const auto& p : written) {
      const CsvTable t = parse_csv(slurp(p));
      EXPECT_FALSE(t.header.empty()) << p;
      EXPECT_FALSE(t.rows.empty()) << p;
    }
    fs::remove_all(out);
  }
  EXPECT_EQ(preset_names().size(), 17u);
  EXPECT_THROW(preset_files("fig2"), InvalidArgument);
}

TEST(Presets, Fig1aColumnsAndReference) {
  const fs::path out = scratch("fig1a_cols");
  RunConfig cfg = default_config();
  cfg.T_grid = {0.1, 0.5};
  cfg.out_dir = out.string();
  Evaluator ev(cfg);
  std::ostringstream log;
  const auto files = run_preset("fig1a", cfg, ev, log);
  const CsvTable t = parse_csv(slurp(files.at(0)));
  EXPECT_EQ(t.header, (std::vector<std::string>{"T", "EV_pa", "EV_ps", "EV_pc", "EV_nlpa1", "EV_tmss"}));
  for (const auto& row : t.rows) EXPECT_NEAR(std::stod(row[5]), 0.29, 0.001);
  EXPECT_NE(log.str().find("T* fig1a nlpa1"), std::string::npos);
  fs::remove_all(out);
}

TEST(Presets, Deterministic) {
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  for (const std::string name : {"fig1c", "fig9b"}) {
    RunConfig ca = small_config(a);
    RunConfig cb = small_config(b);
    Evaluator ea(ca);
    Evaluator eb(cb);
    std::ostringstream log;
    const auto fa = run_preset(name, ca, ea, log);
    const auto fb = run_preset(name, cb, eb, log);
    ASSERT_EQ(fa.size(), fb.size());
    for (std::size_t i = 0; i < fa.size(); ++i) EXPECT_EQ(slurp(fa[i]), slurp(fb[i])) << fa[i];
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Binary, ExitCodes) {
  const fs::path out = scratch("binary");
  EXPECT_EQ(run_cli("--version"), 0);
  EXPECT_EQ(run_cli("--list-presets"), 0);
  EXPECT_EQ(run_cli("--preset fig1a --T 0.1,0.5 --out " + out.string()), 0);
  EXPECT_TRUE(fs::exists(out / "fig1a.csv"));
  EXPECT_EQ(run_cli("--preset nope"), 2);
  EXPECT_EQ(run_cli("--no-such-flag"), 2);
  EXPECT_EQ(run_cli("--preset fig1a --kappa 2"), 2);
  EXPECT_EQ(run_cli("--preset fig1a --config /nonexistent/qillum.cfg"), 4);
  std::ofstream(out / "blocker") << "x";
  EXPECT_EQ(run_cli("--preset fig1a --T 0.5 --out " + (out / "blocker" / "sub").string()), 4);
  EXPECT_EQ(run_cli("--sweep T --metric gain --grid 0.5 --protocols tmss --out " + out.string()), 2);
  fs::remove_all(out);
}
