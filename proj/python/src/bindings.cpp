#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tickvar/cli.hpp"
#include "tickvar/counting.hpp"
#include "tickvar/errors.hpp"
#include "tickvar/fattails.hpp"
#include "tickvar/indicator.hpp"
#include "tickvar/structure.hpp"
#include "tickvar/ticks.hpp"
#include "tickvar/variation.hpp"

namespace py = pybind11;
using namespace tickvar;

namespace {

TickSeries make_series(const std::vector<Timestamp>& t, const std::vector<double>& price) {
  if (t.size() != price.size()) throw InputError("timestamps and prices differ in length");
  std::vector<TickPoint> pts;
  pts.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) pts.push_back({t[i], price[i]});
  return TickSeries(std::move(pts));
}

py::dict summary_dict(const VariationSummary& v) {
  py::dict d;
  d["V"] = v.V;
  d["D"] = v.D;
  d["sigma_plus"] = v.sigma_plus;
  d["sigma_minus"] = v.sigma_minus;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Variation analytics for tick price series";
  m.attr("__version__") = version();

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  m.def("variation_summary",
        [](const std::vector<Timestamp>& t, const std::vector<double>& price) {
          return summary_dict(variation_summary(make_series(t, price)));
        },
        py::arg("timestamps"), py::arg("prices"));

  m.def("jordan_decompose",
        [](const std::vector<Timestamp>& t, const std::vector<double>& price) {
          auto j = jordan_decompose(make_series(t, price));
          return py::make_tuple(j.f_plus, j.f_minus);
        },
        py::arg("timestamps"), py::arg("prices"));

  m.def("structure",
        [](const std::vector<Timestamp>& t, const std::vector<double>& price, std::size_t n,
           double epsilon_rho) {
          const auto series = make_series(t, price);
          const auto osc = segment_oscillations(series, partition(series, n));
          const auto profile = density_profile(osc, epsilon_rho);
          const auto s = structure_params(osc, profile);
          py::dict d;
          d["lambda"] = profile.lambda;
          d["rho"] = profile.densities;
          d["rho_bar"] = profile.rho_bar;
          d["alpha1"] = s.alpha1;
          d["alpha2"] = s.alpha2;
          d["alpha"] = s.alpha;
          d["v_model"] = s.v_model;
          d["V_osc"] = oscillation_variation(osc);
          return d;
        },
        py::arg("timestamps"), py::arg("prices"), py::arg("n"), py::arg("epsilon_rho") = 0.25);

  m.def("binom_pz_exact", &binom_pz_exact, py::arg("n"), py::arg("z"));
  m.def("binom_count", [](std::int64_t n, std::int64_t z) { return py::int_(py::str(binom_count(n, z).str())); },
        py::arg("n"), py::arg("z"));
  m.def("pz_gaussian", &pz_gaussian, py::arg("n"), py::arg("z"));
  m.def("normal_cdf", &normal_cdf, py::arg("x"));
  m.def("prob_nonpositive", &prob_nonpositive, py::arg("alpha"), py::arg("n"));
  m.def("sample_difference", &sample_difference, py::arg("n"), py::arg("alpha"), py::arg("count"),
        py::arg("seed"));

  m.def("solve_coeffs",
        [](double zeta0) {
          const auto c = solve_coeffs(zeta0);
          return py::make_tuple(c.C1, c.C2);
        },
        py::arg("zeta0"));
  m.def("fat_tail_cdf", &fat_tail_cdf, py::arg("zeta"), py::arg("zeta0"));

  m.def("moments_from_alpha",
        [](std::int64_t n, double alpha, double omega_bar) {
          const auto mo = moments_from_alpha(n, alpha, omega_bar);
          return py::make_tuple(mo.mu, mo.sigma);
        },
        py::arg("n"), py::arg("alpha"), py::arg("omega_bar") = 1.0);
  m.def("prob_decline", &prob_decline, py::arg("mu"), py::arg("sigma"));
  m.def("variation_band",
        [](std::int64_t n, double alpha, double omega_bar, double anchor) {
          const auto b = variation_band(n, alpha, omega_bar, anchor);
          return py::make_tuple(b.lower, b.upper);
        },
        py::arg("n"), py::arg("alpha"), py::arg("omega_bar"), py::arg("anchor_price"));

  m.def("run",
        [](const std::string& subcommand, std::optional<std::string> input, std::int64_t n,
           double alpha, std::size_t samples, std::uint64_t seed, std::size_t bins,
           std::size_t window, double epsilon_rho, const std::string& format) {
          RunConfig cfg;
          cfg.subcommand = subcommand;
          cfg.input_path = std::move(input);
          cfg.n = n;
          cfg.alpha = alpha;
          cfg.samples = samples;
          cfg.seed = seed;
          cfg.bins = bins;
          cfg.window = window;
          cfg.epsilon_rho = epsilon_rho;
          if (format == "json") cfg.format = OutputFormat::Json;
          else if (format == "csv") cfg.format = OutputFormat::Csv;
          else if (!format.empty()) throw InputError("format must be json or csv");
          py::gil_scoped_release release;
          return run_to_string(cfg);
        },
        "Runs a CLI subcommand and returns its report text.", py::arg("subcommand"),
        py::arg("input") = py::none(), py::arg("n") = 10, py::arg("alpha") = 0.0,
        py::arg("samples") = 100'000, py::arg("seed") = 0, py::arg("bins") = 60,
        py::arg("window") = 200, py::arg("epsilon_rho") = 0.25, py::arg("format") = "");
}
