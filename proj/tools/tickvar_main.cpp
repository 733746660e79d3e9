// tickvar: variation analytics for tick price series.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "tickvar/cli.hpp"

namespace {

void add_common(CLI::App* sub, tickvar::RunConfig& cfg, std::string& format) {
  sub->add_option("-o,--output", cfg.output_path, "Output file (default: stdout)");
  sub->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  tickvar::RunConfig cfg;
  std::string format;

  CLI::App app{"Variation analytics for tick price series"};
  app.set_version_flag("--version", tickvar::version());
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  auto* analyze = app.add_subcommand("analyze", "Variation, oscillation and structure report");
  add_common(analyze, cfg, format);
  analyze->add_option("-i,--input", cfg.input_path, "Tick CSV (default: stdin)");
  analyze->add_option("-n,--n", cfg.n, "Transitions between elementary segments")
      ->capture_default_str();
  analyze->add_option("--epsilon-rho", cfg.epsilon_rho, "Density condition tolerance in (0, 1)")
      ->capture_default_str();

  auto* dist = app.add_subcommand("dist", "Exact and Gaussian distribution of differences");
  add_common(dist, cfg, format);
  dist->add_option("-n,--n", cfg.n, "Transitions")->capture_default_str();
  dist->add_option("--alpha", cfg.alpha, "Structure parameter, |alpha| < 1")
      ->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo differences vs predicted moments");
  add_common(simulate, cfg, format);
  simulate->add_option("-n,--n", cfg.n, "Transitions")->capture_default_str();
  simulate->add_option("--alpha", cfg.alpha, "Structure parameter, |alpha| < 1")
      ->capture_default_str();
  simulate->add_option("--samples", cfg.samples, "Number of draws")->capture_default_str();
  simulate->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();

  auto* fattails = app.add_subcommand("fattails", "Heavy-tail histogram and coefficient report");
  add_common(fattails, cfg, format);
  fattails->add_option("--samples", cfg.samples, "Number of draws")->capture_default_str();
  fattails->add_option("--bins", cfg.bins, "Histogram bins")->capture_default_str();
  fattails->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  fattails->add_option("--summary", cfg.summary_path, "JSON summary file (with --format csv)");
  fattails->add_flag("--strict", cfg.strict, "Fail on draws with no preimage");

  auto* indicator = app.add_subcommand("indicator", "Rolling decline-probability indicator");
  add_common(indicator, cfg, format);
  indicator->add_option("-i,--input", cfg.input_path, "Tick CSV (default: stdin)");
  indicator->add_option("-n,--n", cfg.n, "Transitions per window")->capture_default_str();
  indicator->add_option("--window", cfg.window, "Window length in ticks")->capture_default_str();
  indicator->add_option("--epsilon-rho", cfg.epsilon_rho, "Density condition tolerance")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (format == "json") cfg.format = tickvar::OutputFormat::Json;
  if (format == "csv") cfg.format = tickvar::OutputFormat::Csv;
  return tickvar::run(cfg, std::cout, std::cerr);
}
