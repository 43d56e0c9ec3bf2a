#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace nact::cli {

/// Settings shared by all subcommands. Sources, later ones winning: built-in
/// defaults, the config file, NACT_* environment variables, flags.
struct Config {
  std::string system = "NACT-PriNSA";
  std::vector<std::string> schemas;  // non-empty: custom system instead of the preset
  bool parameter_free_only = false;
  unsigned gsa_chain_bound = 2;
  bool meta_singsa = false;
  bool hnp_gate = false;
  std::size_t max_steps = 50000;
  std::size_t max_equality_depth = 8;
  std::size_t max_term_size = 64;
  std::size_t count = 100;
  std::string ledger;
  std::string format = "text";  // text | jsonl
  double epsilon = 0.001;
  std::size_t window = 100;
};

/// Reads "key = value" lines; '#' starts a comment. Throws
/// std::invalid_argument for unknown keys or bad values.
void load_config(Config& cfg, std::istream& in);
void apply_setting(Config& cfg, const std::string& key, const std::string& value);
/// NACT_MAX_STEPS and NACT_LEDGER.
void apply_env(Config& cfg);

/// Runs one command line. Exit codes: 0 success (including negative findings
/// such as Unknown or Unstratifiable), 1 operational failure, 2 usage error.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nact::cli
