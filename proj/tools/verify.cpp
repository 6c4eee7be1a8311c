#include "qsym/errors.hpp"
#include "qsym/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kExitConfig = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Run the verification suites and print certificates."};
  app.set_version_flag("--version", "verify 0.1");

  std::string selector;
  std::string config_path;
  std::map<std::string, std::string> flags;
  bool timings = false;

  std::string names;
  for (const auto& n : qsym::suite_names()) names += (names.empty() ? "" : " | ") + n;
  app.add_option("selector", selector, names)->required();
  app.add_option("--config", config_path, "key = value file; flags override it");
  for (const auto& [key, help] : std::vector<std::pair<std::string, std::string>>{
           {"N", "comma separated values of N"},
           {"kmax", "largest k"},
           {"tolerance", "tolerance for floating checks"},
           {"seed", "seed for the random models"},
           {"jobs", "worker threads"},
           {"format", "json | csv | md"},
           {"output", "write the document here instead of stdout"},
           {"max-dim", "tensor dimension cap"}}) {
    const std::string k = key == "max-dim" ? "max_dim" : key;
    app.add_option_function<std::string>("--" + key, [&flags, k](const std::string& v) { flags[k] = v; }, help);
  }
  app.add_flag("--timings", timings, "include runtime_ms (output is then not reproducible)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  qsym::SuiteConfig config;
  std::vector<qsym::Certificate> certs;
  try {
    if (!config_path.empty())
      for (const auto& [k, v] : qsym::read_config_file(config_path)) qsym::apply_setting(config, k, v);
    for (const auto& [k, v] : flags) qsym::apply_setting(config, k, v);
    if (timings) config.timings = true;
    certs = qsym::run_suite(selector, config);
  } catch (const qsym::ConfigError& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return kExitConfig;
  }

  const std::string doc = qsym::emit(certs, config.format, config.timings);
  if (config.output.empty()) {
    std::cout << doc;
  } else {
    std::ofstream out(config.output);
    if (!out || !(out << doc)) {
      std::cerr << "verify: cannot write '" << config.output << "'\n";
      return kExitConfig;
    }
  }

  const auto s = qsym::summarize(certs);
  std::cerr << s.pass << " pass, " << s.fail << " fail, " << s.flagged << " flagged\n";
  for (const auto& id : s.flagged_claims) std::cerr << "  FLAGGED " << id << "\n";
  for (const auto& id : s.failed_claims) std::cerr << "  FAIL " << id << "\n";
  return s.exit_code();
}
