#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nact::cli::Config;

namespace {

struct Invocation {
  int code;
  std::string out, err;
};

Invocation nact_run(std::vector<const char*> args) {
  args.insert(args.begin(), "nact");
  std::ostringstream out, err;
  const int code = nact::cli::dispatch(static_cast<int>(args.size()), args.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, Enumerate) {
  const Invocation r = nact_run({"enumerate", "--count", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0\ttrue\n1\tfalse\n2\tx in x\n3\tnot x in x\n");
  const Invocation j = nact_run({"enumerate", "--count", "1", "--start", "3", "--format", "jsonl"});
  EXPECT_EQ(j.out, "{\"index\":3,\"formula\":\"not x in x\"}\n");
}

TEST(Cli, NegativeFindingsExitZero) {
  const Invocation r = nact_run({"stratify", "x in x"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Unstratifiable"), std::string::npos);
  const Invocation sa = nact_run({"sa", "not x in $Ru", "--max-steps", "200"});
  EXPECT_EQ(sa.code, 0);
  EXPECT_EQ(sa.out.rfind("Unknown", 0), 0u);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(nact_run({}).code, 2);
  EXPECT_EQ(nact_run({"frobnicate"}).code, 2);
  EXPECT_EQ(nact_run({"stratify", "x in"}).code, 2);
  EXPECT_EQ(nact_run({"sa", "x = x", "--system", "NACT-ZF"}).code, 2);
  EXPECT_EQ(nact_run({"sa", "x = x", "--max-steps", "lots"}).code, 2);
  EXPECT_EQ(nact_run({"model-check", "--max-size", "9"}).code, 2);
}

TEST(Cli, OperationalErrorsExitOne) {
  EXPECT_EQ(nact_run({"sa", "x in x1"}).code, 1);  // not parameter-free
  EXPECT_EQ(nact_run({"model-check", "--system", "NACT-PriNSA", "--max-size", "1"}).code, 1);
  EXPECT_EQ(nact_run({"degree", "--ledger", "/nonexistent/ledger.jsonl"}).code, 1);
}

TEST(Cli, ModelCheck) {
  const Invocation one = nact_run({"model-check", "--model", "1:0", "--schemas", "Axiom5,Axiom6"});
  EXPECT_EQ(one.code, 0);
  EXPECT_NE(one.out.find("1:0 satisfies"), std::string::npos);
  const Invocation none = nact_run({"model-check", "--max-size", "3", "--system", "NACT+", "--format", "jsonl"});
  EXPECT_EQ(none.code, 0);
  const auto last = nlohmann::json::parse(none.out.substr(none.out.rfind('{')));
  EXPECT_EQ(last["models_found"], 0);
}

TEST(Cli, ProveWritesCheckedTrace) {
  const fs::path trace = fs::temp_directory_path() / "nact-cli-trace.txt";
  const Invocation r = nact_run({"prove", "--axiom", "set($si')", "--goal", "false", "--trace",
                          trace.c_str()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Proved"), std::string::npos);
  EXPECT_NE(r.out.find("trace check ok"), std::string::npos);
  EXPECT_TRUE(fs::file_size(trace) > 0);
  fs::remove(trace);
}

TEST(Cli, RunAndDegree) {
  const fs::path p = fs::temp_directory_path() / "nact-cli-ledger.jsonl";
  fs::remove(p);
  const Invocation run = nact_run({"run", "--system", "NACT-SiNSA", "--count", "60", "--max-steps", "300",
                            "--ledger", p.c_str(), "--format", "jsonl"});
  ASSERT_EQ(run.code, 0) << run.err;
  const auto j = nlohmann::json::parse(run.out);
  EXPECT_EQ(j["enumerated"], 60);
  const Invocation d = nact_run({"degree", "--ledger", p.c_str(), "--window", "10"});
  EXPECT_EQ(d.code, 0);
  EXPECT_NE(d.out.find("final ratio"), std::string::npos);
  // corrupt it
  std::ofstream(p, std::ios::app) << "{\"kind\":\"record\"}\n";
  EXPECT_EQ(nact_run({"degree", "--ledger", p.c_str()}).code, 1);
  fs::remove(p);
}

TEST(Config, FileEnvAndFlagsLayer) {
  Config cfg;
  std::istringstream in(
      "# budgets\nmax_steps = 1234\nsystem = NACT-SiNSA\nschemas = PriNSA, SiNSA\nformat=jsonl\n");
  nact::cli::load_config(cfg, in);
  EXPECT_EQ(cfg.max_steps, 1234u);
  EXPECT_EQ(cfg.system, "NACT-SiNSA");
  EXPECT_EQ(cfg.schemas, (std::vector<std::string>{"PriNSA", "SiNSA"}));
  EXPECT_EQ(cfg.format, "jsonl");

  std::istringstream bad("colour = blue\n");
  EXPECT_THROW(nact::cli::load_config(cfg, bad), std::invalid_argument);
  std::istringstream bad_value("max_steps = -3\n");
  EXPECT_THROW(nact::cli::load_config(cfg, bad_value), std::invalid_argument);

  ::setenv("NACT_MAX_STEPS", "77", 1);
  nact::cli::apply_env(cfg);
  ::unsetenv("NACT_MAX_STEPS");
  EXPECT_EQ(cfg.max_steps, 77u);
}

TEST(Config, FlagBeatsConfigFile) {
  const fs::path p = fs::temp_directory_path() / "nact-cli.conf";
  std::ofstream(p) << "format = jsonl\n";
  const Invocation from_file = nact_run({"--config", p.c_str(), "enumerate", "--count", "1"});
  EXPECT_EQ(from_file.out, "{\"index\":0,\"formula\":\"true\"}\n");
  const Invocation flag = nact_run({"--config", p.c_str(), "enumerate", "--count", "1", "--format", "text"});
  EXPECT_EQ(flag.out, "0\ttrue\n");
  std::ofstream(p) << "nonsense = 1\n";
  EXPECT_EQ(nact_run({"--config", p.c_str(), "systems"}).code, 2);
  fs::remove(p);
}
