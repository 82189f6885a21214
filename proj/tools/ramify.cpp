#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ramify/runners.hpp"

namespace {

constexpr int kInvalidConfig = 2;
constexpr int kInternalError = 3;

int fail(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return kInvalidConfig;
}

ramify::Rational parse_rational(const std::string& text) {
  ramify::Rational r;
  if (r.set_str(text, 10) != 0) throw ramify::config_error("--precision: '" + text + "' is not a rational number");
  r.canonicalize();
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Check ramification claims for compositum extensions of valued fields"};
  ramify::RunConfig cfg;
  std::string precision;
  std::string out;

  app.add_option("runner", cfg.runner, "Runner to execute")
      ->required()
      ->check(CLI::IsMember(
          {"example12", "example14", "example15", "example16", "sweeps", "lemma17", "lemma18", "lcm-table"}));
  app.add_option("--prime", cfg.prime, "Residue characteristic");
  app.add_option("--n", cfg.n, "Degree parameter (example n, series length, or table bound)");
  app.add_option("--q", cfg.q, "Prime q for lemma18");
  app.add_option("--e-max", cfg.e_max, "Largest index for lemma17");
  app.add_option("--degree-bound", cfg.degree_bound, "Monomial degree bound for the value-group oracle");
  app.add_option("--precision", precision, "Working precision (rational)");
  app.add_option("--seed", cfg.seed, "Seed for randomized checks");
  app.add_option("--steps", cfg.steps, "Newton steps for example15");
  app.add_option("--samples", cfg.samples, "Sample count for example12");
  app.add_option("--mode", cfg.mode, "example16 valuation modes: plain, shifted, composed, transcendental, all");
  app.add_option("--d", cfg.d, "example16 coefficient d as a series, e.g. t^2");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", out, "Write the report to this file instead of stdout");
  app.add_flag("--degenerate", cfg.degenerate, "Run the degenerate variant of the example");
  app.add_flag("--strict", cfg.strict, "Treat inconclusive claims as failures");
  app.add_flag("--timing", cfg.timing, "Record wall-clock runtime in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInvalidConfig;
  }

  ramify::Report report;
  try {
    if (!precision.empty()) cfg.precision = parse_rational(precision);
    report = ramify::run(cfg);
  } catch (const ramify::config_error& e) {
    return fail(e);
  } catch (const ramify::precondition_error& e) {
    return fail(e);
  } catch (const ramify::no_residue_root& e) {
    return fail(e);
  } catch (const ramify::parse_error& e) {
    return fail(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }

  const std::string text = cfg.format == "json" ? ramify::to_json(report) : ramify::to_text(report);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open " << out << "\n";
      return kInvalidConfig;
    }
    f << text;
  }
  return ramify::exit_status(report, cfg.strict);
}
