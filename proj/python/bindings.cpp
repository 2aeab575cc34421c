#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "besov/chaos.hpp"
#include "besov/corpus.hpp"
#include "besov/embedding.hpp"
#include "besov/error.hpp"
#include "besov/gaussian.hpp"
#include "besov/sigma.hpp"
#include "besov/suite.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

besov::CorpusEntry entry_from(const std::string& spec_or_name) {
  json spec = json::parse(spec_or_name, nullptr, false);
  if (spec.is_discarded() || spec.is_string()) {
    const std::string name = spec.is_string() ? spec.get<std::string>() : spec_or_name;
    for (const auto& s : besov::default_corpus_specs())
      if (s.at("name") == name) return besov::make_corpus_entry(s);
    throw besov::UsageError("unknown corpus id '" + name + "'");
  }
  return besov::make_corpus_entry(spec);
}

std::string curve_json(const besov::ModulusCurve& c) { return c.to_json().dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bindings for the besov-lab numerical core";

  py::register_exception<besov::UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<besov::Error>(m, "BesovError", PyExc_RuntimeError);

  m.def("c_t", &besov::c_t, py::arg("t"));
  m.def("gauss_constant", &besov::gauss_constant, py::arg("p"));
  m.def("nu_n", &besov::nu_n, py::arg("n"));
  m.def("sigma_upper_constant", &besov::sigma_upper_constant, py::arg("n"));
  m.def("embedding_constant", [](int n, double p) { return besov::embedding_constant(n, p).value; }, py::arg("n"),
        py::arg("p"));

  m.def("default_corpus_json", [] {
    json arr = json::array();
    for (const auto& s : besov::default_corpus_specs()) arr.push_back(s);
    return arr.dump();
  });

  m.def(
      "omega_curve_json",
      [](const std::string& entry, double p, std::vector<double> eps, double spacing) {
        const auto e = entry_from(entry);
        return curve_json(besov::omega_curve(e.sample(spacing), p, eps));
      },
      py::arg("entry"), py::arg("p"), py::arg("eps"), py::arg("spacing"));

  m.def(
      "sigma_curve_json",
      [](const std::string& entry, double p, std::vector<double> eps, double spacing, int budget) {
        const auto e = entry_from(entry);
        return curve_json(besov::sigma_curve_variational(e.sample(spacing), p, eps, budget));
      },
      py::arg("entry"), py::arg("p"), py::arg("eps"), py::arg("spacing"), py::arg("budget") = 60);

  m.def(
      "a_gamma",
      [](const std::string& entry, double p, double t) { return besov::a_gamma(entry_from(entry).hermite(), p, t); },
      py::arg("entry"), py::arg("p"), py::arg("t"));

  m.def(
      "chaos_energies",
      [](const std::string& entry, int K) {
        const auto d = besov::chaos_decompose(entry_from(entry).hermite(), K);
        std::vector<double> best;
        for (int N = 0; N <= K + 1; ++N) best.push_back(besov::best_approx(d, N).value);
        return best;
      },
      py::arg("entry"), py::arg("K"));

  m.def(
      "run_suite_json",
      [](const std::string& suite, const std::string& config, std::optional<std::string> out_dir) {
        json doc = json::parse(config, nullptr, false);
        if (doc.is_discarded()) throw besov::UsageError("config is not valid JSON");
        const auto cfg = besov::SuiteConfig::from_json(doc, suite);
        besov::SuiteResult res;
        {
          py::gil_scoped_release release;
          res = besov::run_suite(cfg);
        }
        if (out_dir) besov::write_outputs(res, *out_dir);
        json j = res.to_json();
        j["exit_code"] = res.exit_code(false);
        return j.dump();
      },
      py::arg("suite"), py::arg("config") = "{}", py::arg("out_dir") = std::nullopt);
}
