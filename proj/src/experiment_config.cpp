#include "glqk/experiment_config.hpp"

#include <cstdio>
#include <filesystem>
#include <set>

#include "glqk/errors.hpp"
#include "glqk/pool_io.hpp"

namespace glqk {

namespace {

const std::set<std::string> kTopKeys = {
    "task",   "n",        "dims",    "symmetric", "target",    "N_pool",  "T",
    "t_evolve", "Delta",  "J_range", "J_exclusion", "order_width", "N_train", "M_test",
    "kernels", "tau",     "gamma",   "grids",     "folds",     "repeats", "seed",
    "standardize", "plan", "analyze", "pca"};

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<T>();
}

}  // namespace

int ExperimentConfig::qubits() const {
  int n = 1;
  for (int d : dims) n *= d;
  return n;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j, const std::string& base_dir) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!kTopKeys.count(key)) throw InvalidArgument("unknown config key '" + key + "'");
  }
  ExperimentConfig c;
  c.base_dir = base_dir;
  try {
    const auto task = get_or<std::string>(j, "task", "random_dynamics");
    if (task == "random_dynamics") c.task = DataTask::kRandomDynamics;
    else if (task == "qpr") c.task = DataTask::kQpr;
    else throw InvalidArgument("task must be random_dynamics or qpr");
    if (j.contains("dims")) c.dims = j["dims"].get<std::vector<int>>();
    else if (j.contains("n")) c.dims = {j["n"].get<int>()};
    c.symmetric = get_or(j, "symmetric", c.symmetric);
    c.target = get_or<std::string>(j, "target", c.target);
    c.N_pool = get_or(j, "N_pool", c.N_pool);
    c.T = get_or(j, "T", c.T);
    c.t_evolve = get_or(j, "t_evolve", c.t_evolve);
    c.Delta = get_or(j, "Delta", c.Delta);
    if (j.contains("J_range")) {
      const auto r = j["J_range"].get<std::vector<double>>();
      if (r.size() != 2) throw InvalidArgument("J_range must have two entries");
      c.J_min = r[0];
      c.J_max = r[1];
    }
    c.J_exclusion = get_or(j, "J_exclusion", c.J_exclusion);
    c.order_width = get_or(j, "order_width", c.order_width);
    c.N_train = get_or(j, "N_train", c.N_train);
    c.M_test = get_or(j, "M_test", c.M_test);
    if (j.contains("kernels")) {
      c.kernels.clear();
      for (const auto& k : j["kernels"]) c.kernels.push_back(kernel_kind_from_string(k.get<std::string>()));
    }
    c.tau = get_or(j, "tau", c.tau);
    c.gamma = get_or(j, "gamma", c.gamma);
    if (j.contains("grids")) c.grid = GridSpec::from_json(j["grids"]);
    c.folds = get_or(j, "folds", c.folds);
    c.repeats = get_or(j, "repeats", c.repeats);
    c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
    c.standardize = get_or(j, "standardize", c.standardize);
    if (j.contains("plan")) {
      const auto& p = j["plan"];
      c.plan.polynomial = p.value("polynomial", nlohmann::json());
      c.plan.xi = p.value("xi", c.plan.xi);
      c.plan.epsilon = p.value("epsilon", c.plan.epsilon);
      c.plan.n_values = p.value("n", c.plan.n_values);
      c.plan.tau = p.value("tau", c.plan.tau);
      c.plan.gamma = p.value("gamma", c.plan.gamma);
    }
    if (j.contains("analyze")) {
      const auto& a = j["analyze"];
      c.analyze.polynomial = a.value("polynomial", nlohmann::json());
      c.analyze.dims = a.value("dims", std::vector<int>{});
      c.analyze.delta = a.value("delta", c.analyze.delta);
      c.analyze.zeta = a.value("zeta", c.analyze.zeta);
    }
    if (j.contains("pca")) {
      const auto& p = j["pca"];
      if (p.contains("kernel")) c.pca.kernel = KernelConfig::from_json(p["kernel"]);
      c.pca.count = p.value("count", c.pca.count);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed config: ") + e.what());
  }

  if (c.dims.empty()) throw InvalidArgument("dims must not be empty");
  for (int d : c.dims)
    if (d < 1) throw InvalidArgument("lattice sides must be positive");
  if (c.T < 1) throw InvalidArgument("T must be positive");
  if (c.N_pool < 1) throw InvalidArgument("N_pool must be positive");
  if (c.M_test < 1) throw InvalidArgument("M_test must be positive");
  if (c.repeats < 1) throw InvalidArgument("repeats must be positive");
  if (c.N_train.empty()) throw InvalidArgument("N_train must not be empty");
  for (int v : c.N_train)
    if (v < c.folds) throw InvalidArgument("every N_train value must be at least the fold count");
  if (!(c.tau > 0) || !(c.gamma > 0)) throw InvalidArgument("tau and gamma must be positive");
  if (!(c.J_min < c.J_max)) throw InvalidArgument("J_range must be increasing");
  if (c.target != "g1" && c.target != "g2" && c.target != "g3") {
    throw InvalidArgument("target must be g1, g2 or g3");
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("config '" + path + "' is not JSON: " + e.what());
  }
  const auto dir = std::filesystem::path(path).parent_path().string();
  return from_json(j, dir.empty() ? "." : dir);
}

nlohmann::json ExperimentConfig::to_json() const {
  std::vector<std::string> ks;
  for (auto k : kernels) ks.push_back(to_string(k));
  return {{"task", task == DataTask::kQpr ? "qpr" : "random_dynamics"},
          {"dims", dims},
          {"symmetric", symmetric},
          {"target", target},
          {"N_pool", N_pool},
          {"T", T},
          {"t_evolve", t_evolve},
          {"Delta", Delta},
          {"J_range", {J_min, J_max}},
          {"J_exclusion", J_exclusion},
          {"order_width", order_width},
          {"N_train", N_train},
          {"M_test", M_test},
          {"kernels", ks},
          {"tau", tau},
          {"gamma", gamma},
          {"grids", grid.to_json()},
          {"folds", folds},
          {"repeats", repeats},
          {"seed", seed},
          {"standardize", standardize},
          {"plan",
           {{"polynomial", plan.polynomial},
            {"xi", plan.xi},
            {"epsilon", plan.epsilon},
            {"n", plan.n_values},
            {"tau", plan.tau},
            {"gamma", plan.gamma}}},
          {"analyze",
           {{"polynomial", analyze.polynomial},
            {"dims", analyze.dims},
            {"delta", analyze.delta},
            {"zeta", analyze.zeta}}},
          {"pca", {{"kernel", pca.kernel.to_json()}, {"count", pca.count}}}};
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string ExperimentConfig::hash() const { return fnv1a_hex(to_json().dump()); }

ObservablePolynomial load_polynomial(const nlohmann::json& spec, const std::string& base_dir) {
  if (spec.is_null()) throw InvalidArgument("no polynomial given");
  if (spec.is_string()) {
    std::filesystem::path p(spec.get<std::string>());
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    return ObservablePolynomial::parse(read_file(p.string()));
  }
  return ObservablePolynomial::from_json(spec);
}

}  // namespace glqk
