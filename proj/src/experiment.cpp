#include "glqk/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "glqk/cluster.hpp"
#include "glqk/errors.hpp"
#include "glqk/gram.hpp"
#include "glqk/hamiltonian.hpp"
#include "glqk/kernel_pca.hpp"
#include "glqk/krylov.hpp"
#include "glqk/metrics.hpp"
#include "glqk/planner.hpp"
#include "glqk/probes.hpp"
#include "glqk/rng.hpp"
#include "glqk/shadow.hpp"

#ifndef GLQK_GIT_DESCRIBE
#define GLQK_GIT_DESCRIBE "unknown"
#endif

namespace glqk {

namespace {

const char* kTargets[] = {"g1", "g2", "g3"};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Runs body(i) for i in [0, count) across threads; the first exception (by
// index) is rethrown afterwards so errors do not depend on scheduling.
template <typename F>
void parallel_for(int count, F body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<std::size_t> shuffled(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.index(i)]);
  return p;
}

std::filesystem::path out_path(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  return std::filesystem::path(dir) / name;
}

void write_text(const std::filesystem::path& p, const std::string& s) { write_file(p.string(), s); }

Lattice plan_lattice(int n, int D) { return Lattice(std::vector<int>(static_cast<std::size_t>(D), n)); }

}  // namespace

std::string version_string() { return GLQK_GIT_DESCRIBE; }

std::string provenance_line(const ExperimentConfig& cfg) {
  return "# config_hash=" + cfg.hash() + " version=" + version_string();
}

// ---------------------------------------------------------------- generate

ShadowPool generate_pool(const ExperimentConfig& cfg, nlohmann::json* manifest) {
  const int n = cfg.qubits();
  if (n > kMaxQubits) {
    throw InvalidArgument("n=" + std::to_string(n) + " exceeds the simulator cap of " +
                          std::to_string(kMaxQubits) + " qubits");
  }
  if (n < 2) throw InvalidArgument("pools need at least two qubits");
  if (cfg.dims.size() != 1) throw InvalidArgument("data generation supports one-dimensional chains only");
  if (cfg.task == DataTask::kQpr) {
    if (n % 2) throw InvalidArgument("the bond-alternating chain needs an even n");
    if (cfg.order_width < 1 || 2 * cfg.order_width > n) {
      throw InvalidArgument("order_width must lie in [1, n/2]");
    }
    if (cfg.J_exclusion >= 0 && cfg.J_min >= 1 - cfg.J_exclusion && cfg.J_max <= 1 + cfg.J_exclusion) {
      throw InvalidArgument("J_range lies entirely inside the exclusion band");
    }
  }

  ShadowPool pool;
  pool.dims = cfg.dims;
  pool.T = cfg.T;
  pool.entries.resize(static_cast<std::size_t>(cfg.N_pool));

  std::vector<ObservablePolynomial> targets;
  for (const char* id : kTargets) targets.push_back(target_polynomial(id, n));

  parallel_for(cfg.N_pool, [&](int i) {
    const auto idx = static_cast<std::uint64_t>(i);
    const std::uint64_t shadow_seed = derive_seed(cfg.seed, Stream::kShadow, idx);
    nlohmann::json meta;
    meta["index"] = i;
    meta["shadow_seed"] = shadow_seed;
    StateVector state;
    double label = 0.0;

    if (cfg.task == DataTask::kRandomDynamics) {
      const std::uint64_t hs = derive_seed(cfg.seed, Stream::kHamiltonian, idx);
      const std::uint64_t is = derive_seed(cfg.seed, Stream::kInitialState, idx);
      const auto spec = HamiltonianSpec::random(n, cfg.symmetric, hs);
      const auto init = random_product_state(n, cfg.symmetric, is);
      state = evolve(spec, init, cfg.t_evolve);
      const auto oracle = expectation_oracle(state);
      nlohmann::json labels;
      for (std::size_t k = 0; k < targets.size(); ++k) labels[kTargets[k]] = evaluate_exact(targets[k], oracle);
      label = labels[cfg.target].get<double>();
      meta["hamiltonian"] = to_string(spec.kind);
      meta["hamiltonian_seed"] = hs;
      meta["state_seed"] = is;
      meta["t"] = cfg.t_evolve;
      meta["labels"] = labels;
      if (cfg.symmetric) meta["defect"] = translation_symmetry_defect(state);
    } else {
      Rng rng(derive_seed(cfg.seed, Stream::kCoupling, idx));
      double J;
      do {
        J = rng.uniform(cfg.J_min, cfg.J_max);
      } while (std::abs(J - 1.0) < cfg.J_exclusion);
      const std::uint64_t gs_seed = derive_seed(cfg.seed, Stream::kGroundStart, idx);
      const std::uint64_t ds = derive_seed(cfg.seed, Stream::kDisturbance, idx);
      const auto gs = ground_state(HamiltonianSpec::xxz(n, J, cfg.Delta), gs_seed);
      state = disturb_inversion_symmetric(gs.state, ds);
      label = J > 1.0 ? 1.0 : -1.0;
      meta["J"] = J;
      meta["Delta"] = cfg.Delta;
      meta["energy"] = gs.energy;
      meta["residual"] = gs.residual;
      meta["ground_seed"] = gs_seed;
      meta["disturbance_seed"] = ds;
      meta["z"] = order_parameter_z(state, cfg.order_width);
      meta["labels"] = {{"phase", label}};
    }
    auto& e = pool.entries[static_cast<std::size_t>(i)];
    e.shadow = sample_shadow(state, cfg.T, shadow_seed);
    e.label = label;
    meta["label"] = label;
    e.metadata = std::move(meta);
  });

  if (manifest) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : pool.entries) entries.push_back(e.metadata);
    *manifest = {{"config", cfg.to_json()},
                 {"config_hash", cfg.hash()},
                 {"version", version_string()},
                 {"count", pool.size()},
                 {"dims", pool.dims},
                 {"T", pool.T},
                 {"entries", std::move(entries)}};
    if (cfg.task == DataTask::kQpr) {
      (*manifest)["label_rule"] = "+1 for J > 1, -1 otherwise";
      (*manifest)["J_exclusion"] = cfg.J_exclusion;
    }
  }
  return pool;
}

void cmd_generate(const ExperimentConfig& cfg, const std::string& pool_path, std::ostream& log) {
  nlohmann::json manifest;
  const auto pool = generate_pool(cfg, &manifest);
  const auto parent = std::filesystem::path(pool_path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  write_pool(pool, pool_path);
  manifest["pool_file"] = std::filesystem::path(pool_path).filename().string();
  write_file(pool_path + ".manifest.json", manifest.dump(2) + "\n");
  log << "wrote " << pool.size() << " entries (n=" << pool.qubits() << ", T=" << pool.T << ") to "
      << pool_path << "\n";
}

// -------------------------------------------------------------- experiment

double ExperimentResult::mean_score(KernelKind kernel, int N_train) const {
  for (const auto& s : summary)
    if (s.kernel == kernel && s.N_train == N_train) return s.mean;
  throw InvalidArgument("no summary row for the requested kernel and N_train");
}

Eigen::VectorXd pool_labels(const ShadowPool& pool, const ExperimentConfig& cfg) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(pool.size()));
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto& e = pool.entries[i];
    double v = e.label;
    if (cfg.task == DataTask::kRandomDynamics) {
      const auto& m = e.metadata;
      if (m.contains("labels") && m["labels"].contains(cfg.target)) {
        v = m["labels"][cfg.target].get<double>();
      }
    } else if (v != 1.0 && v != -1.0) {
      throw InvalidArgument("classification pool labels must be +1 or -1");
    }
    y(static_cast<Eigen::Index>(i)) = v;
  }
  return y;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const ShadowPool& pool) {
  pool.validate();
  const Lattice lat = pool.lattice();
  const int n = lat.size();
  const Task task = cfg.learning_task();
  const int max_train = *std::max_element(cfg.N_train.begin(), cfg.N_train.end());
  const std::size_t needed = static_cast<std::size_t>(max_train + cfg.M_test);
  if (pool.size() < needed) {
    throw InvalidArgument("pool holds " + std::to_string(pool.size()) + " entries but " +
                          std::to_string(needed) + " are needed (max N_train + M_test)");
  }
  const Eigen::VectorXd y_pool = pool_labels(pool, cfg);

  // Splits per repeat: test first, then a nested training prefix.
  std::vector<std::vector<std::size_t>> test_of(static_cast<std::size_t>(cfg.repeats));
  std::vector<std::vector<std::size_t>> train_of(static_cast<std::size_t>(cfg.repeats));
  std::set<std::size_t> used;
  for (int r = 0; r < cfg.repeats; ++r) {
    const auto perm = shuffled(pool.size(), derive_seed(cfg.seed, Stream::kSplit, static_cast<std::uint64_t>(r)));
    auto& te = test_of[static_cast<std::size_t>(r)];
    auto& tr = train_of[static_cast<std::size_t>(r)];
    te.assign(perm.begin(), perm.begin() + cfg.M_test);
    tr.assign(perm.begin() + cfg.M_test, perm.begin() + static_cast<std::ptrdiff_t>(needed));
    used.insert(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(needed));
  }
  const std::vector<std::size_t> U(used.begin(), used.end());
  std::vector<Eigen::Index> pos(pool.size(), -1);
  ShadowRefs refs;
  for (std::size_t k = 0; k < U.size(); ++k) {
    pos[U[k]] = static_cast<Eigen::Index>(k);
    refs.push_back(&pool.entries[U[k]].shadow);
  }

  // Full grams over the union, keyed by (kernel, h, zeta).
  using Key = std::tuple<KernelKind, int, int>;
  std::map<Key, Eigen::MatrixXd> full;
  std::map<Key, Eigen::VectorXd> raw_diag;
  for (KernelKind kind : cfg.kernels) {
    if (kind == KernelKind::kShadow) {
      KernelConfig kc{KernelKind::kShadow, cfg.tau, cfg.gamma, 0, 0};
      auto g = gram(refs, nullptr, lat, kc);
      raw_diag[{kind, 0, 0}] = g.values.diagonal();
      full[{kind, 0, 0}] = cfg.standardize ? standardize(g).values : g.values;
      continue;
    }
    for (int zeta : cfg.grid.zetas) {
      if (zeta < 1 || zeta > lat.min_side()) continue;
      Eigen::MatrixXd w = glqk_window_mean(refs, nullptr, lat, zeta, cfg.tau, cfg.gamma);
      const Eigen::VectorXd d = w.diagonal();
      if (cfg.standardize) {
        const Eigen::ArrayXd s = d.array().sqrt().inverse();
        w = (s.matrix().asDiagonal() * w * s.matrix().asDiagonal()).eval();
        w.diagonal().setOnes();
      }
      for (int h : cfg.grid.hs) {
        full[{kind, h, zeta}] = w.array().pow(h).matrix();
        raw_diag[{kind, h, zeta}] = d.array().pow(h).matrix();
      }
    }
  }

  // g(sigma) for every used shadow, for the noise floor.
  std::vector<double> estimate(pool.size(), std::numeric_limits<double>::quiet_NaN());
  if (task == Task::kRegression) {
    const auto g = target_polynomial(cfg.target, n);
    for (std::size_t i : U) estimate[i] = estimate_polynomial(pool.entries[i].shadow, g);
  }

  const int nk = static_cast<int>(cfg.kernels.size());
  const int nn = static_cast<int>(cfg.N_train.size());
  const int runs = nk * nn * cfg.repeats;
  ExperimentResult res;
  res.n = n;
  res.rows.resize(static_cast<std::size_t>(runs));
  res.cv.resize(static_cast<std::size_t>(runs));
  res.models.resize(static_cast<std::size_t>(runs));
  std::vector<std::vector<ScatterRow>> scatter(static_cast<std::size_t>(runs));

  parallel_for(runs, [&](int run) {
    const int ki = run / (nn * cfg.repeats);
    const int ni = (run / cfg.repeats) % nn;
    const int r = run % cfg.repeats;
    const KernelKind kind = cfg.kernels[static_cast<std::size_t>(ki)];
    const int N = cfg.N_train[static_cast<std::size_t>(ni)];
    const auto& te = test_of[static_cast<std::size_t>(r)];
    const std::vector<std::size_t> tr(train_of[static_cast<std::size_t>(r)].begin(),
                                      train_of[static_cast<std::size_t>(r)].begin() + N);
    std::vector<Eigen::Index> tr_pos, te_pos;
    for (auto i : tr) tr_pos.push_back(pos[i]);
    for (auto i : te) te_pos.push_back(pos[i]);

    Eigen::VectorXd y(N);
    for (int a = 0; a < N; ++a) y(a) = y_pool(static_cast<Eigen::Index>(tr[static_cast<std::size_t>(a)]));

    std::map<std::pair<int, int>, Eigen::MatrixXd> cache;
    GramProvider provider = [&](int h, int zeta) -> const Eigen::MatrixXd* {
      auto it = full.find({kind, h, zeta});
      if (it == full.end()) return nullptr;
      auto [c, inserted] = cache.try_emplace({h, zeta});
      if (inserted) c->second = it->second(tr_pos, tr_pos);
      return &c->second;
    };
    // Folds are shared by both kernels at the same (N, repeat).
    const auto fold_seed = derive_seed(cfg.seed, Stream::kFolds, static_cast<std::uint64_t>(ni * cfg.repeats + r));
    auto outcome = grid_search_cv(provider, y, task, kind, cfg.grid, cfg.folds, fold_seed);
    const auto& best = outcome.report.best();
    const Key key{kind, best.h, best.zeta};
    const Eigen::MatrixXd k_test = full.at(key)(tr_pos, te_pos);
    const Eigen::VectorXd pred = outcome.model.predict(k_test);
    Eigen::VectorXd y_test(static_cast<Eigen::Index>(te.size()));
    for (std::size_t a = 0; a < te.size(); ++a) y_test(static_cast<Eigen::Index>(a)) = y_pool(static_cast<Eigen::Index>(te[a]));

    RunRow row;
    row.kernel = kind;
    row.N_train = N;
    row.repeat = r;
    try {
      row.score = task == Task::kRegression ? r_squared(y_test, pred) : accuracy(y_test, pred);
    } catch (const UndefinedMetric&) {
      row.score = std::numeric_limits<double>::quiet_NaN();
    }
    row.reg = best.reg;
    row.h = best.h;
    row.zeta = best.zeta;
    row.cv_score = best.score;
    row.b2 = outcome.model.b2;
    row.noise_floor = std::numeric_limits<double>::quiet_NaN();
    if (task == Task::kRegression) {
      Eigen::VectorXd est(y_test.size());
      for (std::size_t a = 0; a < te.size(); ++a) est(static_cast<Eigen::Index>(a)) = estimate[te[a]];
      row.noise_floor = shadow_noise_floor(y_test, est);
      auto& sc = scatter[static_cast<std::size_t>(run)];
      for (std::size_t a = 0; a < te.size(); ++a) {
        sc.push_back({kind, N, r, te[a], y_test(static_cast<Eigen::Index>(a)), pred(static_cast<Eigen::Index>(a))});
      }
    }

    auto& model = outcome.model;
    model.train_indices = tr;
    const auto& rd = raw_diag.at(key);
    model.train_diag = rd(tr_pos);
    res.rows[static_cast<std::size_t>(run)] = row;
    res.cv[static_cast<std::size_t>(run)] = std::move(outcome.report);
    res.models[static_cast<std::size_t>(run)] = std::move(model);
  });

  for (auto& s : scatter) res.scatter.insert(res.scatter.end(), s.begin(), s.end());

  for (int ki = 0; ki < nk; ++ki) {
    for (int ni = 0; ni < nn; ++ni) {
      SummaryRow s;
      s.kernel = cfg.kernels[static_cast<std::size_t>(ki)];
      s.N_train = cfg.N_train[static_cast<std::size_t>(ni)];
      std::vector<double> scores;
      double floor_sum = 0.0;
      for (int r = 0; r < cfg.repeats; ++r) {
        const auto& row = res.rows[static_cast<std::size_t>((ki * nn + ni) * cfg.repeats + r)];
        if (std::isfinite(row.score)) scores.push_back(row.score);
        floor_sum += row.noise_floor;
      }
      s.runs = static_cast<int>(scores.size());
      s.noise_floor = floor_sum / cfg.repeats;
      if (scores.empty()) {
        s.mean = s.std = std::numeric_limits<double>::quiet_NaN();
      } else {
        double m = 0.0;
        for (double v : scores) m += v;
        m /= static_cast<double>(scores.size());
        double v2 = 0.0;
        for (double v : scores) v2 += (v - m) * (v - m);
        s.mean = m;
        s.std = std::sqrt(v2 / static_cast<double>(scores.size()));
      }
      res.summary.push_back(s);
    }
  }
  return res;
}

void cmd_experiment(const ExperimentConfig& cfg, const std::string& pool_path,
                    const std::string& out_dir, std::ostream& log) {
  const auto pool = read_pool(pool_path);
  if (pool.dims != cfg.dims) {
    log << "note: pool lattice differs from config dims; using the pool's\n";
  }
  const auto res = run_experiment(cfg, pool);
  const std::string prov = provenance_line(cfg) + "\n";
  const std::string n = std::to_string(res.n);

  std::ostringstream rows;
  rows << prov << "kernel,n,N_train,repeat,score,reg,h,zeta,cv_score,noise_floor,b2\n";
  for (const auto& r : res.rows) {
    rows << to_string(r.kernel) << ',' << n << ',' << r.N_train << ',' << r.repeat << ',' << num(r.score)
         << ',' << num(r.reg) << ',' << r.h << ',' << r.zeta << ',' << num(r.cv_score) << ','
         << num(r.noise_floor) << ',' << num(r.b2) << '\n';
  }
  write_text(out_path(out_dir, "results.csv"), rows.str());

  std::ostringstream sum;
  sum << prov << "kernel,n,N_train,mean,std,runs,noise_floor\n";
  for (const auto& s : res.summary) {
    sum << to_string(s.kernel) << ',' << n << ',' << s.N_train << ',' << num(s.mean) << ','
        << num(s.std) << ',' << s.runs << ',' << num(s.noise_floor) << '\n';
    log << std::left << std::setw(7) << to_string(s.kernel) << " n=" << n << " N=" << s.N_train
        << "  score " << num(s.mean) << " +- " << num(s.std) << "\n";
  }
  write_text(out_path(out_dir, "summary.csv"), sum.str());

  std::ostringstream sc;
  sc << prov << "kernel,n,N_train,repeat,index,y_true,y_pred\n";
  for (const auto& s : res.scatter) {
    sc << to_string(s.kernel) << ',' << n << ',' << s.N_train << ',' << s.repeat << ',' << s.index
       << ',' << num(s.y_true) << ',' << num(s.y_pred) << '\n';
  }
  write_text(out_path(out_dir, "scatter.csv"), sc.str());

  nlohmann::json cv = nlohmann::json::array();
  for (const auto& r : res.cv) cv.push_back(r.to_json());
  write_text(out_path(out_dir, "cv_reports.json"),
             nlohmann::json({{"config_hash", cfg.hash()}, {"version", version_string()}, {"reports", cv}}).dump(2) + "\n");
  nlohmann::json models = nlohmann::json::array();
  for (const auto& m : res.models) models.push_back(m.to_json());
  write_text(out_path(out_dir, "models.json"),
             nlohmann::json({{"config_hash", cfg.hash()}, {"version", version_string()}, {"models", models}}).dump(2) + "\n");
}

// -------------------------------------------------------------------- plan

nlohmann::json plan_report(const ExperimentConfig& cfg) {
  const auto g = load_polynomial(cfg.plan.polynomial, cfg.base_dir);
  const int D = static_cast<int>(cfg.dims.size());
  nlohmann::json plans = nlohmann::json::array();
  for (int n : cfg.plan.n_values) {
    const Lattice lat = plan_lattice(n, D);
    for (KernelFamily fam : {KernelFamily::kGlqk, KernelFamily::kShadow}) {
      for (bool sym : {false, true}) {
        plans.push_back(plan_resources(g, lat, cfg.plan.xi, cfg.plan.epsilon, sym, fam, cfg.plan.tau,
                                       cfg.plan.gamma)
                            .to_json());
      }
    }
  }
  return {{"polynomial", g.to_json()},
          {"xi", cfg.plan.xi},
          {"epsilon", cfg.plan.epsilon},
          {"dimension", D},
          {"plans", plans}};
}

void cmd_plan(const ExperimentConfig& cfg, const std::string& out_dir, std::ostream& log) {
  const auto rep = plan_report(cfg);
  log << "xi=" << num(cfg.plan.xi) << " epsilon=" << num(cfg.plan.epsilon) << "\n";
  log << std::left << std::setw(18) << "regime" << std::setw(6) << "n" << std::setw(7) << "alpha"
      << std::setw(6) << "beta" << std::setw(6) << "delta" << std::setw(6) << "zeta" << std::setw(4)
      << "h" << std::setw(14) << "log10 N" << std::setw(14) << "T" << std::setw(14) << "B^2"
      << "lambda\n";
  for (const auto& p : rep["plans"]) {
    log << std::left << std::setw(18) << p["regime"].get<std::string>() << std::setw(6) << p["n"].get<int>()
        << std::setw(7) << p["alpha_g"].get<int>() << std::setw(6) << p["beta_g"].get<int>() << std::setw(6)
        << p["delta"].get<int>() << std::setw(6) << p["zeta"].get<int>() << std::setw(4)
        << (p["h"].is_null() ? std::string("-") : std::to_string(p["h"].get<int>()))
        << std::setw(14) << num(p["log10_N"].get<double>()) << std::setw(14) << p["T"].get<std::uint64_t>()
        << std::setw(14) << num(p["B2"].get<double>()) << num(p["lambda"].get<double>()) << "\n";
    for (const auto& w : p["warnings"]) log << "  warning: " << w.get<std::string>() << "\n";
  }
  if (!out_dir.empty()) write_text(out_path(out_dir, "plan.json"), rep.dump(2) + "\n");
}

// ----------------------------------------------------------------- analyze

nlohmann::json analyze_report(const ExperimentConfig& cfg) {
  const auto g = load_polynomial(cfg.analyze.polynomial, cfg.base_dir);
  const Lattice lat(cfg.analyze.dims.empty() ? cfg.dims : cfg.analyze.dims);
  nlohmann::json rep = {{"dims", lat.dims()},
                        {"delta", cfg.analyze.delta},
                        {"zeta", cfg.analyze.zeta},
                        {"terms", nlohmann::json::array()}};
  if (g.empty()) {
    rep["merged_terms"] = 0;
    rep["l1_ca"] = 0.0;
    return rep;
  }
  g.check_on(lat);
  const auto dec = cluster_approximation(g, lat, cfg.analyze.delta);
  const auto cover = local_cover_number(dec, lat, cfg.analyze.zeta);
  for (std::size_t i = 0; i < g.terms().size(); ++i) {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& f : dec.per_term[i]) {
      nlohmann::json cl = nlohmann::json::array();
      for (const auto& c : f) cl.push_back(c.to_string());
      factors.push_back(cl);
    }
    rep["terms"].push_back({{"coefficient", g.terms()[i].coefficient}, {"clusters", factors}});
  }
  rep["merged_terms"] = dec.terms.size();
  rep["l1_ca"] = dec.l1_norm();
  rep["alpha_g"] = cover.value;
  rep["alpha_exact"] = cover.exact;
  rep["beta_g"] = local_factor_count(dec);
  rep["m"] = g.body();
  rep["p"] = g.degree();
  return rep;
}

void cmd_analyze(const ExperimentConfig& cfg, const std::string& out_dir, std::ostream& log) {
  const auto rep = analyze_report(cfg);
  if (rep["terms"].empty()) {
    log << "empty polynomial\n";
  } else {
    int i = 0;
    for (const auto& t : rep["terms"]) {
      log << "term " << i++ << " (c=" << num(t["coefficient"].get<double>()) << "):";
      for (const auto& f : t["clusters"]) {
        log << " [";
        bool first = true;
        for (const auto& c : f) {
          log << (first ? "" : " | ") << c.get<std::string>();
          first = false;
        }
        log << "]";
      }
      log << "\n";
    }
    log << "merged terms: " << rep["merged_terms"].get<std::size_t>() << "\n"
        << "|g_CA|_1: " << num(rep["l1_ca"].get<double>()) << "\n"
        << "alpha_g: " << rep["alpha_g"].get<int>() << (rep["alpha_exact"].get<bool>() ? "" : " (greedy bound)")
        << "\n"
        << "beta_g: " << rep["beta_g"].get<int>() << "\n";
  }
  if (!out_dir.empty()) write_text(out_path(out_dir, "analyze.json"), rep.dump(2) + "\n");
}

// --------------------------------------------------------------------- pca

void class_separation(const Eigen::VectorXd& x, const Eigen::VectorXd& labels, double& gap,
                      double& pooled_std) {
  double sum[2] = {0, 0};
  int cnt[2] = {0, 0};
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const int c = labels(i) > 0 ? 1 : 0;
    sum[c] += x(i);
    ++cnt[c];
  }
  if (cnt[0] == 0 || cnt[1] == 0) throw InvalidArgument("class separation needs both classes");
  const double mu[2] = {sum[0] / cnt[0], sum[1] / cnt[1]};
  double ss = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double d = x(i) - mu[labels(i) > 0 ? 1 : 0];
    ss += d * d;
  }
  gap = std::abs(mu[1] - mu[0]);
  pooled_std = std::sqrt(ss / static_cast<double>(x.size()));
}

PcaOutput run_pca(const ExperimentConfig& cfg, const ShadowPool& pool) {
  pool.validate();
  const int count = cfg.pca.count;
  if (count < 2 || static_cast<std::size_t>(count) > pool.size()) {
    throw InvalidArgument("pca count must lie in [2, pool size]");
  }
  const Lattice lat = pool.lattice();
  ShadowRefs refs;
  PcaOutput out;
  out.labels.resize(count);
  for (int i = 0; i < count; ++i) {
    refs.push_back(&pool.entries[static_cast<std::size_t>(i)].shadow);
    out.index.push_back(static_cast<std::size_t>(i));
    out.labels(i) = pool.entries[static_cast<std::size_t>(i)].label;
  }
  auto g = gram(refs, nullptr, lat, cfg.pca.kernel);
  if (cfg.standardize) g = standardize(g);
  const auto pca = kernel_pca(g.values, 2);
  out.coordinates = Eigen::MatrixXd::Zero(count, 2);
  out.coordinates.leftCols(pca.coordinates.cols()) = pca.coordinates;
  bool two_class = true;
  for (int i = 0; i < count; ++i)
    if (out.labels(i) != 1.0 && out.labels(i) != -1.0) two_class = false;
  if (two_class) {
    try {
      class_separation(out.coordinates.col(0), out.labels, out.gap, out.pooled_std);
    } catch (const InvalidArgument&) {
      out.gap = out.pooled_std = std::numeric_limits<double>::quiet_NaN();
    }
  } else {
    out.gap = out.pooled_std = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

void cmd_pca(const ExperimentConfig& cfg, const std::string& pool_path, const std::string& out_dir,
             std::ostream& log) {
  const auto pool = read_pool(pool_path);
  const auto out = run_pca(cfg, pool);
  std::ostringstream csv;
  csv << provenance_line(cfg) << "\nindex,label,pc1,pc2\n";
  for (std::size_t i = 0; i < out.index.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    csv << out.index[i] << ',' << num(out.labels(r)) << ',' << num(out.coordinates(r, 0)) << ','
        << num(out.coordinates(r, 1)) << '\n';
  }
  write_text(out_path(out_dir, "pca.csv"), csv.str());
  log << "kernel " << to_string(cfg.pca.kernel.kind) << ": pc1 class-mean gap " << num(out.gap)
      << ", pooled std " << num(out.pooled_std) << "\n";
}

}  // namespace glqk
