#include "tickvar/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include "tickvar/counting.hpp"
#include "tickvar/errors.hpp"
#include "tickvar/fattails.hpp"
#include "tickvar/indicator.hpp"
#include "tickvar/structure.hpp"
#include "tickvar/ticks.hpp"
#include "tickvar/variation.hpp"

#ifndef TICKVAR_VERSION
#define TICKVAR_VERSION "0.0.0"
#endif

namespace tickvar {

using nlohmann::ordered_json;

const char* version() { return TICKVAR_VERSION; }

namespace {

struct Output {
  std::string main;
  std::optional<std::string> summary;
  std::vector<std::string> warnings;
};

const char* format_name(OutputFormat f) { return f == OutputFormat::Json ? "json" : "csv"; }

void dump_into(const ordered_json& v, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case ordered_json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        out += ordered_json(it.key()).dump();
        out += ": ";
        dump_into(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        dump_into(item, out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case ordered_json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? format_number(d) : "null";
      return;
    }
    default:
      out += v.dump();
  }
}

std::string read_input(const RunConfig& cfg) {
  if (!cfg.input_path || cfg.input_path->empty() || *cfg.input_path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(*cfg.input_path, std::ios::binary);
  if (!in) throw InputError("cannot open input file '" + *cfg.input_path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

ordered_json header(const RunConfig& cfg) {
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = version();
  j["config"] = cfg.to_json();
  return j;
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string row;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) row += ',';
    first = false;
    row += c;
  }
  row += '\n';
  return row;
}

std::string num(double v) { return format_number(v); }
std::string num(std::int64_t v) { return std::to_string(v); }
std::string num(std::uint64_t v) { return std::to_string(v); }

// analyze ------------------------------------------------------------------

Output run_analyze(const RunConfig& cfg) {
  const TickSeries series = parse_csv(read_input(cfg));
  if (cfg.n < 1) throw DomainError("analyze: --n must be >= 1");
  if (!(cfg.epsilon_rho > 0.0 && cfg.epsilon_rho < 1.0)) {
    throw DomainError("analyze: --epsilon-rho must lie in (0, 1)");
  }

  Output o;
  const VariationSummary vs = variation_summary(series);
  ordered_json r = header(cfg);
  r["ticks"] = series.size();
  r["span"] = {series.start(), series.end()};
  r["V"] = vs.V;
  r["D"] = vs.D;
  r["sigma_plus"] = vs.sigma_plus;
  r["sigma_minus"] = vs.sigma_minus;
  r["hyperbola_residuals"] = {
      {"difference", vs.sigma_plus - vs.sigma_minus - vs.D},
      {"sum", vs.sigma_plus + vs.sigma_minus - vs.V},
      {"product", vs.sigma_plus * vs.sigma_minus - (vs.V * vs.V - vs.D * vs.D) / 4.0}};

  const std::vector<std::string> structure_keys = {
      "segments", "V_osc",  "V_osc_over_V", "lambda", "rho",     "rho_bar",
      "alpha1",   "alpha2", "alpha",        "v_model", "density_condition"};
  for (const auto& k : structure_keys) r[k] = nullptr;

  try {
    const auto part = partition(series, static_cast<std::size_t>(cfg.n));
    const auto osc = segment_oscillations(series, part);
    r["segments"] = part.segment_count;
    r["V_osc"] = oscillation_variation(osc);
    r["V_osc_over_V"] = vs.V > 0.0 ? r["V_osc"].get<double>() / vs.V : NAN;
    const auto profile = density_profile(osc, cfg.epsilon_rho);
    const auto params = structure_params(osc, profile);
    const auto cond = density_condition(profile);
    r["lambda"] = profile.lambda;
    r["rho"] = profile.densities;
    r["rho_bar"] = profile.rho_bar;
    r["alpha1"] = params.alpha1;
    r["alpha2"] = params.alpha2;
    r["alpha"] = params.alpha;
    r["v_model"] = params.v_model;
    r["density_condition"] = {{"epsilon_rho", profile.epsilon_rho},
                              {"fraction_ok", cond.fraction_ok},
                              {"worst_gap", cond.worst_gap}};
  } catch (const DomainError& e) {
    o.warnings.push_back(e.what());
  }
  r["warnings"] = o.warnings;

  if (cfg.effective_format() == OutputFormat::Json) {
    o.main = dump_json(r) + "\n";
    return o;
  }
  o.main = "key,value\n";
  for (const char* k : {"V", "D", "sigma_plus", "sigma_minus", "V_osc", "V_osc_over_V", "lambda",
                        "rho_bar", "alpha1", "alpha2", "alpha", "v_model"}) {
    const auto& v = r[k];
    o.main += csv_row({k, v.is_null() ? std::string() : num(v.get<double>())});
  }
  return o;
}

// dist ---------------------------------------------------------------------

Output run_dist(const RunConfig& cfg) {
  const CountingDistribution dist = distribution_table(cfg.n, cfg.alpha);
  Output o;
  if (cfg.effective_format() == OutputFormat::Csv) {
    o.main = "z,p_exact,p_gauss,zeta\n";
    for (const auto& row : dist.rows) {
      o.main += csv_row({num(row.z), num(row.p_exact), num(row.p_gauss), num(row.zeta)});
    }
    return o;
  }
  double total = 0.0;
  ordered_json table = ordered_json::array();
  for (const auto& row : dist.rows) {
    total += row.p_exact;
    table.push_back(
        {{"z", row.z}, {"p_exact", row.p_exact}, {"p_gauss", row.p_gauss}, {"zeta", row.zeta}});
  }
  ordered_json r = header(cfg);
  r["n"] = dist.frame.n;
  r["alpha"] = dist.alpha;
  r["z0"] = dist.frame.z0;
  r["n_prime"] = dist.frame.n_prime;
  r["z_min"] = dist.frame.z_min;
  r["z_max"] = dist.frame.z_max;
  r["delta_zeta"] = delta_zeta(cfg.n);
  r["prob_nonpositive"] = prob_nonpositive(cfg.alpha, cfg.n);
  r["prob_nonpositive_discrete"] = dist.discrete_nonpositive();
  r["normalization"] = total;
  r["table"] = std::move(table);
  o.main = dump_json(r) + "\n";
  return o;
}

// simulate -----------------------------------------------------------------

Output run_simulate(const RunConfig& cfg) {
  if (cfg.samples < 2) throw DomainError("simulate: --samples must be >= 2");
  const auto d = sample_difference(cfg.n, cfg.alpha, cfg.samples, cfg.seed);
  const ShiftedFrame frame = shift_frame(cfg.n, even_shift(cfg.n, cfg.alpha));

  Output o;
  if (cfg.effective_format() == OutputFormat::Csv) {
    std::map<std::int64_t, std::uint64_t> counts;
    for (auto v : d) ++counts[v];
    o.main = "d,count\n";
    for (const auto& [v, c] : counts) o.main += csv_row({num(v), num(c)});
    return o;
  }

  __int128 sum = 0;
  __int128 sum_sq = 0;
  double nonpositive = 0.0;
  for (auto v : d) {
    sum += v;
    sum_sq += static_cast<__int128>(v) * v;
    if (v < 0) {
      nonpositive += 1.0;
    } else if (v == 0) {
      nonpositive += 0.5;
    }
  }
  const auto count = static_cast<long double>(d.size());
  const long double mean = static_cast<long double>(sum) / count;
  const long double variance =
      (static_cast<long double>(sum_sq) - static_cast<long double>(sum) * mean) / (count - 1.0L);
  const double two_n = 2.0 * static_cast<double>(cfg.n);
  const double predicted_mean = -two_n * cfg.alpha;
  const double predicted_var = two_n * (1.0 - std::abs(cfg.alpha));
  const double std_err = std::sqrt(static_cast<double>(variance / count));

  ordered_json r = header(cfg);
  r["z0"] = frame.z0;
  r["n_prime"] = frame.n_prime;
  r["samples"] = d.size();
  r["mean"] = static_cast<double>(mean);
  r["variance"] = static_cast<double>(variance);
  r["standard_error"] = std_err;
  r["predicted"] = {{"mean", predicted_mean},
                    {"variance", predicted_var},
                    {"mean_shifted_frame", static_cast<double>(frame.z0)},
                    {"variance_shifted_frame", 2.0 * static_cast<double>(frame.n_prime)}};
  r["mean_z_score"] = std_err > 0.0 ? (static_cast<double>(mean) - predicted_mean) / std_err : NAN;
  r["variance_rel_error"] = (static_cast<double>(variance) - predicted_var) / predicted_var;
  r["fraction_nonpositive"] = nonpositive / static_cast<double>(d.size());
  r["prob_nonpositive"] = prob_nonpositive(cfg.alpha, cfg.n);
  o.main = dump_json(r) + "\n";
  return o;
}

// fattails -----------------------------------------------------------------

Output run_fattails(const RunConfig& cfg) {
  HistogramOptions opt;
  opt.samples = cfg.samples;
  opt.bins = cfg.bins;
  opt.seed = cfg.seed;
  opt.strict = cfg.strict;
  const FatTailHistogram h = simulate_histogram(opt);

  std::string csv = "bin_left,bin_right,count_model,count_normal\n";
  ordered_json bins = ordered_json::array();
  for (const auto& b : h.bins) {
    csv += csv_row({num(b.left), num(b.right), num(b.count_model), num(b.count_normal)});
    bins.push_back({{"bin_left", b.left},
                    {"bin_right", b.right},
                    {"count_model", b.count_model},
                    {"count_normal", b.count_normal}});
  }

  ordered_json summary = header(cfg);
  summary["samples"] = opt.samples;
  summary["half_width"] = opt.half_width;
  ordered_json tails = ordered_json::array();
  for (const auto& t : h.tails) {
    tails.push_back({{"threshold", t.threshold},
                     {"model", t.model},
                     {"normal", t.normal},
                     {"ratio", t.normal > 0.0 ? t.model / t.normal : NAN}});
  }
  summary["tail_mass"] = std::move(tails);
  summary["model_max_abs"] = h.model_max_abs;
  summary["normal_max_abs"] = h.normal_max_abs;
  summary["model_outside"] = h.model_outside;
  summary["normal_outside"] = h.normal_outside;
  summary["zero_atom"] = h.zero_atom;
  summary["non_invertible"] = {{"count", h.non_invertible.count},
                               {"pinned_to", kDistortionPeak},
                               {"zeta0_min", h.non_invertible.zeta0_min},
                               {"zeta0_max", h.non_invertible.zeta0_max},
                               {"zeta0_examples", h.non_invertible.zeta0_examples}};
  const MonotonicityReport mono = check_monotonicity(0.5, 8.0, 1601);
  summary["monotonicity"] = {{"zeta0", 0.5},
                             {"monotone", mono.monotone},
                             {"first_decrease", mono.first_decrease},
                             {"max_drop", mono.max_drop},
                             {"zero_jump", mono.zero_jump}};
  ordered_json disc = ordered_json::array();
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto d = closed_form_discrepancy(0.1 * i, 6.0, 1201);
    worst = std::max(worst, d.max_abs);
    disc.push_back({{"zeta0", d.zeta0}, {"max_abs", d.max_abs}, {"at_zeta", d.at_zeta}});
  }
  summary["closed_form_vs_exact"] = {{"max_abs", worst}, {"by_zeta0", std::move(disc)}};

  Output o;
  if (cfg.effective_format() == OutputFormat::Csv) {
    o.main = std::move(csv);
    if (cfg.summary_path) o.summary = dump_json(summary) + "\n";
  } else {
    summary["histogram"] = std::move(bins);
    o.main = dump_json(summary) + "\n";
  }
  return o;
}

// indicator ----------------------------------------------------------------

Output run_indicator(const RunConfig& cfg) {
  const TickSeries series = parse_csv(read_input(cfg));
  if (cfg.n < 1) throw DomainError("indicator: --n must be >= 1");
  const IndicatorRun run =
      rolling_indicator(series, cfg.window, static_cast<std::size_t>(cfg.n), cfg.epsilon_rho);

  Output o;
  o.warnings = run.warnings;
  if (cfg.effective_format() == OutputFormat::Csv) {
    o.main = "window_end,n,alpha,mu,sigma,p_decline,band_lower,band_upper\n";
    for (const auto& s : run.snapshots) {
      o.main += csv_row({num(s.window_end), num(s.n), num(s.alpha), num(s.mu), num(s.sigma),
                         num(s.p_decline), num(s.band.lower), num(s.band.upper)});
    }
    return o;
  }
  ordered_json r = header(cfg);
  r["operational_choices"] = {{"window_ticks", cfg.window},
                              {"stride_ticks", run.stride},
                              {"alpha_clamp", kAlphaClamp},
                              {"omega_bar", "lambda * rho_bar"},
                              {"band_anchor", "last price in window"}};
  ordered_json snaps = ordered_json::array();
  for (const auto& s : run.snapshots) {
    snaps.push_back({{"window_end", s.window_end},
                     {"n", s.n},
                     {"omega_bar", s.omega_bar},
                     {"alpha", s.alpha},
                     {"alpha_clamped", s.alpha_clamped},
                     {"mu", s.mu},
                     {"sigma", s.sigma},
                     {"p_decline", s.p_decline},
                     {"band_lower", s.band.lower},
                     {"band_upper", s.band.upper}});
  }
  r["snapshots"] = std::move(snaps);
  r["warnings"] = run.warnings;
  o.main = dump_json(r) + "\n";
  return o;
}

Output dispatch(const RunConfig& cfg) {
  if (cfg.subcommand == "analyze") return run_analyze(cfg);
  if (cfg.subcommand == "dist") return run_dist(cfg);
  if (cfg.subcommand == "simulate") return run_simulate(cfg);
  if (cfg.subcommand == "fattails") return run_fattails(cfg);
  if (cfg.subcommand == "indicator") return run_indicator(cfg);
  throw InputError("unknown subcommand '" + cfg.subcommand + "'");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open output file '" + path + "'");
  f << text;
  if (!f) throw InputError("failed writing '" + path + "'");
}

}  // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string dump_json(const ordered_json& value) {
  std::string out;
  dump_into(value, out, 0);
  return out;
}

OutputFormat RunConfig::effective_format() const {
  if (format) return *format;
  return subcommand == "indicator" ? OutputFormat::Csv : OutputFormat::Json;
}

ordered_json RunConfig::to_json() const {
  ordered_json j;
  j["subcommand"] = subcommand;
  j["input_path"] = input_path ? ordered_json(*input_path) : ordered_json(nullptr);
  j["seed"] = seed;
  j["format"] = format_name(effective_format());
  j["n"] = n;
  j["alpha"] = alpha;
  j["epsilon_rho"] = epsilon_rho;
  j["window"] = window;
  j["samples"] = samples;
  j["bins"] = bins;
  j["strict"] = strict;
  return j;
}

std::string run_to_string(const RunConfig& config) { return dispatch(config).main; }

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const Output o = dispatch(config);
    for (const auto& w : o.warnings) err << "warning: " << w << '\n';
    if (config.output_path && !config.output_path->empty() && *config.output_path != "-") {
      write_file(*config.output_path, o.main);
    } else {
      out << o.main;
    }
    if (o.summary) write_file(*config.summary_path, *o.summary);
    return 0;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace tickvar
