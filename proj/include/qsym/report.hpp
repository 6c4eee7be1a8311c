#ifndef QSYM_REPORT_HPP
#define QSYM_REPORT_HPP

#include "qsym/io.hpp"
#include "qsym/limits.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qsym {

enum class Status { Pass, Fail, Flagged };
std::string to_string(Status s);

struct Certificate {
  std::string claim_id;
  io::Json params = io::Json::object();
  Status status = Status::Pass;
  io::Json witness = io::Json::object();
  double runtime_ms = 0.0;
  // Where the expected value comes from: "closed form", "oracle", "quoted",
  // "identity" or "plumbing".
  std::string expected_source;
};

enum class Format { Json, Csv, Md };
std::string to_string(Format f);
Format format_from_string(const std::string& s);

struct SuiteConfig {
  std::vector<int> N;          // empty: each suite uses its own range
  std::optional<int> kmax;     // empty: suite default
  double tolerance = 1e-9;
  std::uint64_t seed = 7;
  int jobs = 1;
  Format format = Format::Json;
  std::string output;          // empty: stdout
  bool timings = false;
  Limits limits = Limits::defaults();
};

/// key=value lines, '#' starts a comment. Keys mirror the CLI flags.
/// Throws ConfigError on unknown keys or bad values.
std::map<std::string, std::string> read_config_file(const std::string& path);
void apply_setting(SuiteConfig& c, const std::string& key, const std::string& value);

const std::vector<std::string>& suite_names();

/// Runs one suite or "all"; certificates sorted by claim_id. Throws
/// ConfigError for an unknown selector or an unusable range.
std::vector<Certificate> run_suite(const std::string& selector, const SuiteConfig& config);

struct Summary {
  int total = 0, pass = 0, fail = 0, flagged = 0;
  std::vector<std::string> flagged_claims;
  std::vector<std::string> failed_claims;
  int exit_code() const { return fail > 0 ? 1 : 0; }
};

Summary summarize(const std::vector<Certificate>& certs);

io::Json to_json(const Certificate& c, bool timings);
std::string emit(const std::vector<Certificate>& certs, Format format, bool timings = false);

}  // namespace qsym

#endif
