#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "glqk/cluster.hpp"
#include "glqk/errors.hpp"
#include "glqk/experiment.hpp"
#include "glqk/gram.hpp"
#include "glqk/hamiltonian.hpp"
#include "glqk/kernel_pca.hpp"
#include "glqk/kernels.hpp"
#include "glqk/krr.hpp"
#include "glqk/krylov.hpp"
#include "glqk/planner.hpp"
#include "glqk/pool_io.hpp"
#include "glqk/probes.hpp"
#include "glqk/shadow.hpp"
#include "glqk/statevector.hpp"
#include "glqk/svm.hpp"

namespace py = pybind11;
using namespace glqk;
using nlohmann::json;

namespace {

ObservablePolynomial poly(const std::string& text) { return ObservablePolynomial::parse(text); }

KernelConfig kernel_cfg(const std::string& text) { return KernelConfig::from_json(json::parse(text)); }

ShadowRefs refs(const std::vector<ClassicalShadow>& v) {
  ShadowRefs r;
  for (const auto& s : v) r.push_back(&s);
  return r;
}

py::dict model_dict(const TrainedModel& m) {
  py::dict d;
  d["alpha"] = m.alpha;
  d["bias"] = m.bias;
  d["b2"] = m.b2;
  d["residual"] = m.residual;
  d["stationarity"] = m.stationarity;
  d["kkt_violation"] = m.kkt_violation;
  d["iterations"] = m.iterations;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "geometrically local quantum kernels";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<NumericFailure>(m, "NumericFailure", PyExc_ArithmeticError);
  py::register_exception<ResourceLimit>(m, "ResourceLimit", PyExc_MemoryError);

  m.def("version", &version_string);
  m.def("derive_seed", [](std::uint64_t master, int tag, std::uint64_t index) {
    return derive_seed(master, static_cast<Stream>(tag), index);
  });

  py::class_<StateVector>(m, "StateVector")
      .def(py::init<Eigen::VectorXcd>())
      .def_static("basis", &StateVector::basis, py::arg("n"), py::arg("index") = 0)
      .def_property_readonly("qubits", &StateVector::qubits)
      .def_property_readonly("amplitudes", [](const StateVector& s) { return s.amplitudes(); })
      .def("expectation", [](const StateVector& s, const std::string& p) {
        // p in polynomial JSON factor form: [[site, "X"], ...]
        std::vector<PauliString::Entry> e;
        for (const auto& pair : json::parse(p))
          e.emplace_back(pair[0].get<int>(), pauli_from_char(pair[1].get<std::string>()[0]));
        return pauli_expectation(s, PauliString(e));
      });

  m.def("random_product_state", &random_product_state, py::arg("n"), py::arg("symmetric"), py::arg("seed"));
  m.def("evolve_random", [](int n, bool symmetric, std::uint64_t seed, const StateVector& init, double t) {
    return evolve(HamiltonianSpec::random(n, symmetric, seed), init, t);
  });
  m.def("xxz_ground_state", [](int n, double J, double Delta, std::uint64_t seed) {
    const auto g = ground_state(HamiltonianSpec::xxz(n, J, Delta), seed);
    return py::make_tuple(g.state, g.energy, g.residual);
  });
  m.def("disturb_inversion_symmetric", &disturb_inversion_symmetric);
  m.def("order_parameter_z", &order_parameter_z);
  m.def("translation_symmetry_defect", &translation_symmetry_defect);
  m.def("evaluate_exact", [](const std::string& g, const StateVector& s) {
    return evaluate_exact(poly(g), expectation_oracle(s));
  });
  m.def("target_polynomial", [](const std::string& id, int n) { return target_polynomial(id, n).dump(); });

  py::class_<ClassicalShadow>(m, "ClassicalShadow")
      .def_readonly("n", &ClassicalShadow::n)
      .def_readonly("T", &ClassicalShadow::T)
      .def_readonly("seed", &ClassicalShadow::seed)
      .def_property_readonly("records", [](const ClassicalShadow& s) {
        py::array_t<std::uint8_t> a({s.T, s.n});
        std::copy(s.records.begin(), s.records.end(), a.mutable_data());
        return a;
      });
  m.def("sample_shadow", &sample_shadow, py::arg("state"), py::arg("T"), py::arg("seed"));
  m.def("estimate_polynomial", [](const ClassicalShadow& s, const std::string& g) {
    return estimate_polynomial(s, poly(g));
  });
  m.def("read_pool", [](const std::string& path) {
    const auto pool = read_pool(path);
    py::list shadows, labels;
    for (const auto& e : pool.entries) {
      shadows.append(e.shadow);
      labels.append(e.label);
    }
    return py::make_tuple(pool.dims, shadows, labels);
  });

  m.def("qubit_overlap", &qubit_overlap);
  m.def("shadow_kernel", &shadow_kernel, py::arg("a"), py::arg("b"), py::arg("tau") = 1.0, py::arg("gamma") = 1.0);
  m.def("truncated_shadow_kernel",
        [](const ClassicalShadow& a, const ClassicalShadow& b, std::vector<int> sites, double tau, double gamma) {
          return truncated_shadow_kernel(a, b, Subsystem{std::move(sites)}, tau, gamma);
        },
        py::arg("a"), py::arg("b"), py::arg("sites"), py::arg("tau") = 1.0, py::arg("gamma") = 1.0);
  m.def("kernel_value", [](const ClassicalShadow& a, const ClassicalShadow& b, std::vector<int> dims,
                           const std::string& cfg) { return kernel_value(a, b, Lattice(dims), kernel_cfg(cfg)); });
  m.def("gram",
        [](const std::vector<ClassicalShadow>& rows, std::vector<int> dims, const std::string& cfg, bool standardized) {
          const auto r = refs(rows);
          const Lattice lat(dims);
          const auto g = gram(r, nullptr, lat, kernel_cfg(cfg));
          return standardized ? standardize(g).values : g.values;
        },
        py::arg("shadows"), py::arg("dims"), py::arg("config"), py::arg("standardized") = true);

  m.def("krr_fit", [](const Eigen::MatrixXd& k, const Eigen::VectorXd& y, double lambda) {
    return model_dict(krr_fit(k, y, lambda));
  });
  m.def("svm_fit", [](const Eigen::MatrixXd& k, const Eigen::VectorXd& y, double C) {
    return model_dict(svm_fit(k, y, C));
  });
  m.def("kernel_pca", [](const Eigen::MatrixXd& k, int components) {
    const auto r = kernel_pca(k, components);
    return py::make_tuple(r.coordinates, r.eigenvalues, r.complete);
  }, py::arg("k"), py::arg("components") = 2);

  m.def("analyze", [](const std::string& g, std::vector<int> dims, int delta, int zeta) {
    const Lattice lat(dims);
    const auto dec = cluster_approximation(poly(g), lat, delta);
    const auto cover = local_cover_number(dec, lat, zeta);
    json out = {{"alpha_g", cover.value},
                {"alpha_exact", cover.exact},
                {"beta_g", local_factor_count(dec)},
                {"merged_terms", dec.terms.size()},
                {"l1_ca", dec.l1_norm()},
                {"g_ca", dec.flattened().to_json()}};
    return out.dump();
  });
  m.def("plan_resources", [](const std::string& g, std::vector<int> dims, double xi, double eps, bool symmetric,
                             const std::string& kernel) {
    const auto fam = kernel == "shadow" ? KernelFamily::kShadow : KernelFamily::kGlqk;
    return plan_resources(poly(g), Lattice(dims), xi, eps, symmetric, fam).to_json().dump();
  });

  m.def("config_hash", [](const std::string& cfg) { return ExperimentConfig::from_json(json::parse(cfg)).hash(); });
  m.def("plan_report", [](const std::string& cfg) { return plan_report(ExperimentConfig::from_json(json::parse(cfg))).dump(); });
  m.def("analyze_report",
        [](const std::string& cfg) { return analyze_report(ExperimentConfig::from_json(json::parse(cfg))).dump(); });
  m.def("run_experiment", [](const std::string& cfg_text) {
    const auto cfg = ExperimentConfig::from_json(json::parse(cfg_text));
    ExperimentResult res;
    {
      py::gil_scoped_release nogil;
      res = run_experiment(cfg, generate_pool(cfg));
    }
    json rows = json::array();
    for (const auto& r : res.rows)
      rows.push_back({{"kernel", to_string(r.kernel)}, {"N_train", r.N_train}, {"repeat", r.repeat},
                      {"score", r.score}, {"reg", r.reg}, {"h", r.h}, {"zeta", r.zeta}});
    json summary = json::array();
    for (const auto& s : res.summary)
      summary.push_back({{"kernel", to_string(s.kernel)}, {"N_train", s.N_train}, {"mean", s.mean}, {"std", s.std},
                         {"runs", s.runs}});
    return json{{"n", res.n}, {"rows", rows}, {"summary", summary}}.dump();
  });
}
