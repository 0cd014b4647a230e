#include <CLI11.hpp>

#include <iostream>

#include "octic/errors.hpp"
#include "octic/verify.hpp"

using namespace octic;

namespace {

void print_summary(const VerificationReport& report) {
  for (const auto& c : report.checks) {
    std::cout << (c.status == "pass" ? "PASS " : c.status == "fail" ? "FAIL " : "SKIP ") << c.id << "  " << c.anchor;
    if (report.timing) std::cout << "  (" << c.seconds << " s)";
    std::cout << "\n";
    if (c.status == "fail") std::cerr << "failed check " << c.id << ": " << c.data.dump() << "\n";
  }
  std::cout << "overall: " << report.overall() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification tool for the double octic family"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string t;
  bool no_timing = false;
  app.add_option("--prime", cfg.p, "prime p > 5")->capture_default_str();
  app.add_option("--t", t, "family parameter, a rational (default: p)");
  app.add_option("--ext-degrees", cfg.ext_degrees, "extension degrees k for counts over F_{p^k}")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "worker threads")->capture_default_str();
  app.add_option("--cache", cfg.cache, "count cache file");
  app.add_option("--report", cfg.report, "write the JSON report here");
  app.add_flag("--no-timing", no_timing, "omit elapsed times (byte-identical reports)");
  app.add_flag("--allow-large", cfg.allow_large, "permit extension degrees above 3");
  app.add_option("--arrangement", cfg.arrangement, "arrangement file, or 'builtin' for the eight-plane family")->capture_default_str();
  for (const auto& name : subcommands()) app.add_subcommand(name, "run the " + name + " checks")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  if (!t.empty()) cfg.t = t;
  cfg.timing = !no_timing;

  try {
    auto report = run(app.get_subcommands().front()->get_name(), cfg);
    print_summary(report);
    if (!cfg.report.empty()) emit_report(report, cfg.report);
    return report.passed() ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
