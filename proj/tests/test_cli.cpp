#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "experiments.hpp"
#include "output.hpp"

namespace fs = std::filesystem;
using namespace cdft::cli;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cdft_test_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Config shipped(const std::string& name) { return Config::load(fs::path(CDFT_CONFIG_DIR) / name); }

Config with(const std::string& name, const std::string& extra_or_replace) {
  std::string text = slurp(fs::path(CDFT_CONFIG_DIR) / name);
  std::istringstream edits(extra_or_replace);
  std::string line;
  while (std::getline(edits, line)) {
    const std::string key = line.substr(0, line.find('='));
    std::istringstream in(text);
    std::string out, l;
    while (std::getline(in, l))
      if (l.rfind(key, 0) != 0) out += l + "\n";
    text = out + line + "\n";
  }
  return Config::parse(text);
}

int run(const std::string& exp, const Config& c, const fs::path& out, bool assert_tol = false,
        std::optional<std::uint64_t> seed = {}) {
  std::ostringstream log;
  return run_experiment(exp, c, RunOptions{out, assert_tol, seed}, log);
}

int run_binary(const std::string& args) {
  const int status = std::system((std::string(CDFT_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, ParsesGrammar) {
  const Config c = Config::parse("# comment\n\na.b = 3.5\nname = hello world  \nlist = 1, 2.5,3\nflag = true\n");
  EXPECT_EQ(c.number("a.b"), 3.5);
  EXPECT_EQ(c.text("name"), "hello world");
  EXPECT_EQ(c.list("list"), (std::vector<double>{1, 2.5, 3}));
  EXPECT_TRUE(c.boolean("flag", false));
  EXPECT_EQ(c.integer("missing", 7), 7);
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(Config::parse("novalue\n"), ConfigError);
  EXPECT_THROW(Config::parse("a = 1\na = 2\n"), ConfigError);
  EXPECT_THROW(Config::parse("bad key = 1\n"), ConfigError);
  EXPECT_THROW(Config::parse("a = \n"), ConfigError);
  EXPECT_THROW(Config::parse("a = x\n").number("a"), ConfigError);
  EXPECT_THROW(Config::parse("a = 1.5\n").integer("a"), ConfigError);
  EXPECT_THROW(Config::parse("a = yes\n").boolean("a", false), ConfigError);
}

TEST(Config, MissingKeyIsNamed) {
  try {
    Config::parse("a = 1\n").require({"a", "lattice.N"});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("lattice.N"), std::string::npos);
  }
}

TEST(Config, HashIgnoresLayout) {
  EXPECT_EQ(Config::parse("a = 1\nb = 2\n").hash(), Config::parse("# x\nb=2\n\na =1\n").hash());
  EXPECT_NE(Config::parse("a = 1\n").hash(), Config::parse("a = 2\n").hash());
}

TEST(Output, SeventeenDigits) {
  EXPECT_EQ(std::stod(format_double(0.1)), 0.1);
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Cli, EvolveIsDeterministic) {
  const fs::path a = scratch("det_a"), b = scratch("det_b"), c = scratch("det_c");
  ASSERT_EQ(run("evolve", shipped("evolve.cfg"), a), kOk);
  ASSERT_EQ(run("evolve", shipped("evolve.cfg"), b), kOk);
  EXPECT_EQ(slurp(a / "report.csv"), slurp(b / "report.csv"));
  ASSERT_EQ(run("evolve", shipped("evolve.cfg"), c, false, 43), kOk);
  EXPECT_NE(slurp(a / "report.csv"), slurp(c / "report.csv"));
}

TEST(Cli, ReportHeaderAndMetadata) {
  const fs::path out = scratch("meta");
  ASSERT_EQ(run("evolve", shipped("evolve.cfg"), out), kOk);
  std::istringstream in(slurp(out / "report.csv"));
  std::string header, line;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("step,t,", 0), 0u);
  std::getline(in, line);
  EXPECT_EQ(line, "# experiment=evolve");
  std::getline(in, line);
  EXPECT_EQ(line, "# config_hash=" + hex64(shipped("evolve.cfg").hash()));
  std::getline(in, line);
  EXPECT_EQ(line, std::string("# tool_version=") + kToolVersion);
  std::getline(in, line);
  EXPECT_EQ(line, "# seed=42");
}

TEST(Cli, ConfigErrorsExitTwo) {
  const fs::path out = scratch("errors");
  Config missing = Config::parse("experiment = evolve\nlattice.L = 4\n");
  EXPECT_EQ(run("evolve", missing, out), kConfigError);
  EXPECT_EQ(run("evolve", with("evolve.cfg", "lattice.N = 7"), out), kConfigError);
  EXPECT_EQ(run("packet", with("packet.cfg", "packet.sweep = 0"), out), kConfigError);
  EXPECT_EQ(run("em", shipped("evolve.cfg"), out), kConfigError);
  EXPECT_EQ(run("fock", with("fock_eight.cfg", "fock.energies_b = 1,1,1,1,1,1,1,1,1"), out), kConfigError);
}

TEST(Cli, CorruptedRunBreachesOnlyWithAssert) {
  const fs::path out = scratch("corrupt");
  EXPECT_EQ(run("evolve", shipped("evolve_corrupt.cfg"), out, true), kAssertionBreach);
  EXPECT_EQ(run("evolve", shipped("evolve_corrupt.cfg"), out, false), kOk);
  EXPECT_EQ(run("evolve", shipped("evolve.cfg"), out, true), kOk);
}

TEST(Cli, NonFiniteIsNumericalFailure) {
  const fs::path out = scratch("nonfinite");
  EXPECT_EQ(run("em", with("em.cfg", "em.amplitude = inf"), out), kNumericalFailure);
}

TEST(Cli, FockSpectrumFile) {
  const fs::path out = scratch("fock");
  ASSERT_EQ(run("fock", shipped("fock.cfg"), out, true), kOk);
  const std::string s = slurp(out / "spectrum.csv");
  EXPECT_NE(s.find("hamiltonian_naive,0,-1\nhamiltonian_naive,1,0\nhamiltonian_naive,2,0\nhamiltonian_naive,3,1\n"),
            std::string::npos);
  EXPECT_NE(s.find("hamiltonian_normal,0,0\nhamiltonian_normal,1,1\nhamiltonian_normal,2,1\nhamiltonian_normal,3,2\n"),
            std::string::npos);
}

TEST(Cli, ShippedConfigsPassUnderAssert) {
  for (const char* name : {"evolve", "em", "fock", "grassmann"}) {
    const fs::path out = scratch(std::string("ok_") + name);
    EXPECT_EQ(run(name, shipped(std::string(name) + ".cfg"), out, true), kOk) << name;
  }
  EXPECT_EQ(run("fock", shipped("fock_eight.cfg"), scratch("ok_fock8"), true), kOk);
}

TEST(Binary, ExitCodes) {
  const fs::path out = scratch("binary");
  const std::string cfg = std::string(CDFT_CONFIG_DIR) + "/";
  EXPECT_EQ(run_binary("fock --config " + cfg + "fock.cfg --out " + out.string()), 0);
  EXPECT_EQ(run_binary("evolve --config " + cfg + "evolve_corrupt.cfg --assert --out " + out.string()), 3);
  EXPECT_EQ(run_binary("evolve --config " + cfg + "fock.cfg --out " + out.string()), 2);
  EXPECT_EQ(run_binary("evolve --config /nonexistent.cfg"), 2);
  EXPECT_EQ(run_binary("nosuchcommand"), 2);
  const fs::path bad = out / "bad.cfg";
  std::ofstream(bad) << "experiment = evolve\nlattice.L = 4\n";
  EXPECT_EQ(run_binary("evolve --config " + bad.string() + " --out " + out.string()), 2);
}
