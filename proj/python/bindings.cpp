#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "distress/classification.hpp"
#include "distress/cli.hpp"
#include "distress/diagnostics.hpp"
#include "distress/model_io.hpp"
#include "distress/report.hpp"
#include "distress/special_functions.hpp"

namespace py = pybind11;
using namespace distress;

namespace {

std::map<std::string, double> named(const std::vector<std::string>& names, const Eigen::VectorXd& v) {
  std::map<std::string, double> out;
  for (std::size_t j = 0; j < names.size(); ++j) out[names[j]] = v[static_cast<Eigen::Index>(j)];
  return out;
}

RatioVector ratios_from(const std::map<std::string, double>& m) {
  std::array<double, 6> v{};
  for (std::size_t j = 0; j < kRatioNames.size(); ++j) {
    const auto it = m.find(std::string(kRatioNames[j]));
    if (it == m.end()) fail(ErrorKind::Binding, "missing ratio \"" + std::string(kRatioNames[j]) + "\"");
    v[j] = it->second;
  }
  return RatioVector::from_values(v);
}

ScoringMode mode_from(const std::string& s) {
  const auto m = parse_scoring_mode(s);
  if (!m) fail(ErrorKind::Config, "mode must be raw or normalized");
  return *m;
}

ClassificationZones zones_from(const ModelFile& f, const std::string& spec) {
  if (spec == "derived") return derived_zones(f.model);
  if (spec == "paper") return published_zones();
  return zones_from_json(spec);
}

ModelFile fit_training(const std::string& csv, const std::string& window, const std::string& priors,
                       const std::map<std::string, std::string>& labels) {
  std::map<std::string, GroupLabel> overrides;
  for (const auto& [bank, text] : labels) {
    const auto g = parse_group_label(text);
    if (!g) fail(ErrorKind::Config, "bad label \"" + text + "\" for " + bank);
    overrides[bank] = *g;
  }
  const auto records = parse_panel(csv);
  const auto raw = build_training_set(assemble_training_samples(records, parse_year_range(window), overrides));
  ModelFile f;
  f.stats = fit_normalizer(raw);
  f.model = fit(normalize(f.stats, raw), priors == "proportional" ? PriorRule::Proportional : PriorRule::Equal);
  return f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-group discriminant analysis for bank distress";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result([&]() { return py::object(py::exception<Error>(m, "DistressError")); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::object& type = error_type.get_stored();
      py::object exc = type(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(type.ptr(), exc.ptr());
    }
  });

  py::class_<ModelFile>(m, "Model")
      .def_property_readonly("variables", [](const ModelFile& f) { return f.model.variables; })
      .def_property_readonly("coefficients",
                             [](const ModelFile& f) { return named(f.model.variables, f.model.coefficients); })
      .def_property_readonly("standardized",
                             [](const ModelFile& f) { return named(f.model.variables, f.model.standardized); })
      .def_property_readonly("constant", [](const ModelFile& f) { return f.model.constant; })
      .def_property_readonly("centroids", [](const ModelFile& f) { return f.model.centroid; })
      .def_property_readonly("group_sizes", [](const ModelFile& f) { return f.model.n; })
      .def_property_readonly("eigenvalue", [](const ModelFile& f) { return f.model.eigenvalue; })
      .def_property_readonly("canonical_correlation", [](const ModelFile& f) { return f.model.canonical_correlation; })
      .def_property_readonly("wilks_lambda", [](const ModelFile& f) { return f.model.wilks_lambda; })
      .def_property_readonly("within_correlation", [](const ModelFile& f) { return f.model.within_corr; })
      .def_property_readonly("training_scores", [](const ModelFile& f) { return f.model.training_scores; })
      .def_property_readonly("cutoff", [](const ModelFile& f) { return cutoff_point(f.model); })
      .def("to_json", [](const ModelFile& f) { return model_to_json(f); })
      .def(
          "score",
          [](const ModelFile& f, const std::map<std::string, double>& ratios, const std::string& mode) {
            return score_observation(f.model, f.stats, ratios_from(ratios), mode_from(mode));
          },
          py::arg("ratios"), py::arg("mode") = "normalized")
      .def(
          "zone",
          [](const ModelFile& f, double score, const std::string& zones) {
            return std::string(to_string(classify_zone(score, zones_from(f, zones))));
          },
          py::arg("score"), py::arg("zones") = "derived")
      .def(
          "fisher_label",
          [](const ModelFile& f, const std::map<std::string, double>& ratios) {
            const auto z = apply(f.stats, ratios_from(ratios));
            return std::string(to_string(fisher_classify(f.model, z).label));
          },
          py::arg("ratios"));

  m.def("fit_csv", &fit_training, py::arg("csv"), py::arg("window") = "2012:2015", py::arg("priors") = "equal",
        py::arg("labels") = std::map<std::string, std::string>{},
        "Fit on training CSV text; returns a Model.");
  m.def("load_model", [](const std::string& text) { return model_from_json(text); }, py::arg("json_text"));

  m.def(
      "wilks_test",
      [](double eigenvalue, std::size_t n, std::size_t p, std::size_t g, double alpha) {
        const auto w = wilks_test(eigenvalue, n, p, g, alpha);
        return py::dict(py::arg("lambda") = w.lambda, py::arg("chi_square") = w.chi_square, py::arg("df") = w.df,
                        py::arg("p_value") = w.p_value, py::arg("significant") = w.significant);
      },
      py::arg("eigenvalue"), py::arg("n"), py::arg("p"), py::arg("g") = 2, py::arg("alpha") = kDefaultAlpha);
  m.def(
      "box_m_test",
      [](const std::vector<std::vector<double>>& groups, double alpha) {
        const auto b = box_m_test(groups, alpha);
        return py::dict(py::arg("m") = b.m, py::arg("f") = b.f_approx, py::arg("df1") = b.df1,
                        py::arg("df2") = b.df2, py::arg("p_value") = b.p_value,
                        py::arg("homogeneous") = b.homogeneous);
      },
      py::arg("scores_by_group"), py::arg("alpha") = kDefaultAlpha);
  m.def(
      "score_eigenvalue", [](const std::vector<std::vector<double>>& groups) { return score_eigenvalue(groups); },
      py::arg("scores_by_group"));
  m.def(
      "diagnose",
      [](const ModelFile& f, double alpha, double threshold) {
        return render_diagnostics_json(run_diagnostics(f.model, alpha, threshold));
      },
      py::arg("model"), py::arg("alpha") = kDefaultAlpha, py::arg("collinearity_threshold") = kDefaultCollinearityThreshold,
      "Diagnostic battery as a JSON document.");
  m.def(
      "evaluate",
      [](const ModelFile& f, const std::vector<std::string>& panels, const std::string& zones,
         const std::string& mode) {
        std::vector<BankYearRecord> records;
        for (const auto& text : panels) {
          auto part = parse_panel(text);
          records.insert(records.end(), part.begin(), part.end());
        }
        const auto rep = evaluate_panel(f.model, f.stats, records, ActualLabels::from_records(records),
                                        zones_from(f, zones), mode_from(mode));
        return render_evaluation_json(rep);
      },
      py::arg("model"), py::arg("panels"), py::arg("zones") = "derived", py::arg("mode") = "raw",
      "Evaluation report as a JSON document. zones is derived, paper, or zones JSON text.");

  m.def("ln_gamma", &ln_gamma, py::arg("x"));
  m.def("reg_inc_gamma_p", &reg_inc_gamma_p, py::arg("a"), py::arg("x"));
  m.def("reg_inc_beta", &reg_inc_beta, py::arg("x"), py::arg("a"), py::arg("b"));
  m.def("chi_square_sf", &chi_square_sf, py::arg("x"), py::arg("df"));
  m.def("f_sf", &f_sf, py::arg("x"), py::arg("d1"), py::arg("d2"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line; returns (exit_code, stdout, stderr).");
}
