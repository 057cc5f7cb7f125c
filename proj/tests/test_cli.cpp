#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "oseen/commands.hpp"
#include "oseen/errors.hpp"
#include "oseen/run_config.hpp"
#include "oseen/run_store.hpp"
#include "oseen/svg.hpp"

namespace fs = std::filesystem;
using namespace oseen::cli;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("oseen_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(OSEEN_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Config, FileParsingAndPrecedence) {
  const fs::path dir = scratch_dir("config");
  const fs::path file = dir / "run.conf";
  std::ofstream(file) << "# comment\n n = 201\nt_min = -10  # trailing\nroute = log\n\n";
  const auto entries = read_config_file(file.string());
  EXPECT_EQ(entries.at("n"), "201");
  EXPECT_EQ(entries.at("t_min"), "-10");
  RunConfig cfg;
  apply_config_entries(cfg, entries, [](const std::string& key) { return key == "n"; });
  EXPECT_EQ(cfg.n, 601);
  EXPECT_DOUBLE_EQ(cfg.t_min, -10.0);
  EXPECT_EQ(cfg.route, "log");
  cfg.output_dir = dir.string();
  cfg.validate();

  std::ofstream(dir / "bad.conf") << "nonsense = 3\n";
  EXPECT_THROW(read_config_file((dir / "bad.conf").string()), oseen::ConfigError);
  RunConfig broken;
  broken.t_min = 5.0;
  EXPECT_THROW(broken.validate(), oseen::ConfigError);
  EXPECT_THROW(apply_config_entry(broken, "n", "many"), oseen::ConfigError);
}

TEST(Config, NumberLists) {
  EXPECT_EQ(parse_number_list("1e3,3e3, 1e4"), (std::vector<double>{1e3, 3e3, 1e4}));
  EXPECT_THROW(parse_number_list("1e3,,2"), oseen::ConfigError);
  EXPECT_THROW(parse_number_list("abc"), oseen::ConfigError);
}

TEST(RunStoreIo, AtomicWriteAndCsv) {
  const fs::path dir = scratch_dir("store");
  atomic_write(dir / "a.txt", "hello\n");
  EXPECT_EQ(slurp(dir / "a.txt"), "hello\n");
  atomic_write(dir / "a.txt", "again\n");
  EXPECT_EQ(slurp(dir / "a.txt"), "again\n");
  for (const auto& e : fs::directory_iterator(dir)) EXPECT_EQ(e.path().filename(), "a.txt");

  CsvWriter csv;
  csv.meta("command", "x");
  csv.columns({"a", "b"});
  csv.row({"1", "2"});
  csv.footer("total", 3.0);
  const std::string s = csv.str();
  EXPECT_NE(s.find("# command = x"), std::string::npos);
  EXPECT_EQ(csv.body(), csv_body(s));
  EXPECT_EQ(csv.body().find('#'), std::string::npos);
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
}

TEST(Svg, MarchingSquaresOnAPlane) {
  Eigen::MatrixXd f(3, 3);
  std::vector<double> x = {0.0, 1.0, 2.0}, y = {0.0, 1.0, 2.0};
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) f(j, i) = x[i];
  }
  const auto segs = svg::marching_squares(f, x, y, 0.5);
  ASSERT_EQ(segs.size(), 2u);
  for (const auto& s : segs) {
    EXPECT_DOUBLE_EQ(s.x0, 0.5);
    EXPECT_DOUBLE_EQ(s.x1, 0.5);
  }
  EXPECT_TRUE(svg::marching_squares(f, x, y, 5.0).empty());
  const auto t = svg::ticks(1.0, 1000.0, true);
  EXPECT_EQ(t, (std::vector<double>{1.0, 10.0, 100.0, 1000.0}));
  for (double v : svg::ticks(0.0, 1.0, false)) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  const std::string doc = svg::line_plot({{"s", {1, 2}, {3, 4}, false}}, {"t", "x", "y", false, false});
  EXPECT_NE(doc.find("<svg"), std::string::npos);
  EXPECT_NE(doc.find("</svg>"), std::string::npos);
}

TEST(Binary, UsageErrors) {
  EXPECT_EQ(run_cli("sweep --alpha 1e3").code, kExitUsage);
  EXPECT_EQ(run_cli("bogus").code, kExitUsage);
  EXPECT_EQ(run_cli("--help").code, kExitOk);
  EXPECT_EQ(run_cli("sweep --alpha 1e3 --k 2 --t-min 5 --output-dir /tmp").code, kExitUsage);
}

TEST(Binary, SweepIsDeterministicAndResumable) {
  const fs::path root = scratch_dir("sweep");
  const std::string common = "sweep --alpha 1e3 --k 2 --nu-count 3 --n 161 --t-min -8 --t-max 3 --no-svg --output-dir " +
                             root.string();
  const RunResult a = run_cli(common + " --name a");
  const RunResult b = run_cli(common + " --name b");
  ASSERT_EQ(a.code, kExitOk) << a.out;
  ASSERT_EQ(b.code, kExitOk) << b.out;
  const std::string body_a = csv_body(slurp(root / "a" / "sweep.csv"));
  EXPECT_FALSE(body_a.empty());
  EXPECT_EQ(body_a, csv_body(slurp(root / "b" / "sweep.csv")));

  const auto manifest = nlohmann::json::parse(slurp(root / "a" / "manifest.json"));
  EXPECT_EQ(manifest.at("schema"), kManifestSchema);
  EXPECT_EQ(manifest.at("command"), "sweep");
  EXPECT_EQ(manifest.at("exit_code"), 0);
  EXPECT_EQ(manifest.at("config").at("n"), 161);
  for (const auto& art : manifest.at("artifacts")) EXPECT_TRUE(fs::exists(root / "a" / art.at("file").get<std::string>()));

  const RunResult r = run_cli(common + " --name a --resume");
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_NE(r.out.find("resumed"), std::string::npos) << r.out;
  EXPECT_EQ(csv_body(slurp(root / "a" / "sweep.csv")), body_a);

  // Resuming with a different configuration is refused.
  EXPECT_EQ(run_cli(common + " --name a --resume --n 201").code, kExitUsage);
}

TEST(Binary, ConfigFileLosesToFlags) {
  const fs::path root = scratch_dir("precedence");
  std::ofstream(root / "c.conf") << "n = 201\nt_min = -8\nt_max = 3\nsvg = false\n";
  const RunResult r = run_cli("--config " + (root / "c.conf").string() + " --n 161 --output-dir " + root.string() +
                              " --name p sweep --alpha 1e3 --k 2 --nu-count 2");
  ASSERT_EQ(r.code, kExitOk) << r.out;
  const auto manifest = nlohmann::json::parse(slurp(root / "p" / "manifest.json"));
  EXPECT_EQ(manifest.at("config").at("n"), 161);
  EXPECT_EQ(manifest.at("config").at("t_min"), -8.0);
  EXPECT_FALSE(fs::exists(root / "p" / "sweep.svg"));
}

TEST(Binary, OutputRootFromEnvironment) {
  const fs::path root = scratch_dir("env");
  const std::string cmd = std::string(kOutputRootEnv) + "=" + root.string() + " " + std::string(OSEEN_CLI_PATH) +
                          " spectrum --alpha 0 --k 3 --count 3 --n 161 --t-min -8 --t-max 3 --no-svg --name e >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  EXPECT_TRUE(WIFEXITED(status));
  EXPECT_TRUE(fs::exists(root / "e" / "spectrum.csv"));
}
