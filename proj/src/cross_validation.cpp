#include "glqk/cross_validation.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "glqk/errors.hpp"
#include "glqk/krr.hpp"
#include "glqk/metrics.hpp"
#include "glqk/rng.hpp"
#include "glqk/svm.hpp"

namespace glqk {

namespace {

template <typename V>
std::vector<V> canonical(std::vector<V> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Eigen::MatrixXd take(const Eigen::MatrixXd& k, const std::vector<Eigen::Index>& r,
                     const std::vector<Eigen::Index>& c) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) out(i, j) = k(r[i], c[j]);
  return out;
}

Eigen::VectorXd take(const Eigen::VectorXd& y, const std::vector<Eigen::Index>& r) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(r.size()));
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = y[r[i]];
  return out;
}

TrainedModel fit(Task task, const Eigen::MatrixXd& k, const Eigen::VectorXd& y, double reg) {
  return task == Task::kRegression ? krr_fit(k, y, reg) : svm_fit(k, y, reg);
}

}  // namespace

nlohmann::json GridSpec::to_json() const {
  return {{"lambda", lambdas}, {"h", hs}, {"zeta", zetas}, {"C", Cs}};
}

GridSpec GridSpec::from_json(const nlohmann::json& j) {
  GridSpec g;
  try {
    if (j.contains("lambda")) g.lambdas = j["lambda"].get<std::vector<double>>();
    if (j.contains("h")) g.hs = j["h"].get<std::vector<int>>();
    if (j.contains("zeta")) g.zetas = j["zeta"].get<std::vector<int>>();
    if (j.contains("C")) g.Cs = j["C"].get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed grid: ") + e.what());
  }
  for (double v : g.lambdas)
    if (!(v > 0)) throw InvalidArgument("lambda grid values must be positive");
  for (double v : g.Cs)
    if (!(v > 0)) throw InvalidArgument("C grid values must be positive");
  for (int v : g.hs)
    if (v < 1) throw InvalidArgument("h grid values must be >= 1");
  for (int v : g.zetas)
    if (v < 1) throw InvalidArgument("zeta grid values must be >= 1");
  return g;
}

const CVCell& CVReport::best() const {
  if (selected < 0) throw InvalidArgument("no cell was selected");
  return cells[static_cast<std::size_t>(selected)];
}

nlohmann::json CVReport::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  const char* reg = task == Task::kRegression ? "lambda" : "C";
  for (const auto& c : cells) {
    nlohmann::json j = {{reg, c.reg}, {"score", c.score}, {"fold_scores", c.fold_scores}};
    if (kernel == KernelKind::kGlqk) {
      j["h"] = c.h;
      j["zeta"] = c.zeta;
    }
    if (c.skipped) {
      j["skipped"] = true;
      j["note"] = c.note;
      j["score"] = nullptr;
    }
    cs.push_back(std::move(j));
  }
  nlohmann::json out = {{"task", to_string(task)}, {"kernel", to_string(kernel)},
                        {"folds", folds},          {"seed", seed},
                        {"fold_of", fold_of},      {"cells", std::move(cs)},
                        {"selected", selected}};
  return out;
}

std::vector<int> assign_folds(const Eigen::VectorXd& y, Task task, int folds, std::uint64_t seed) {
  const Eigen::Index n = y.size();
  if (folds < 2) throw InvalidArgument("at least two folds are required");
  if (n < folds) throw InvalidArgument("fewer samples than folds");
  Rng rng(seed);
  auto shuffle = [&](std::vector<Eigen::Index>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.index(i)]);
  };
  std::vector<std::vector<Eigen::Index>> groups;
  if (task == Task::kClassification) {
    groups.resize(2);
    for (Eigen::Index i = 0; i < n; ++i) groups[y[i] >= 0 ? 1 : 0].push_back(i);
  } else {
    groups.resize(1);
    for (Eigen::Index i = 0; i < n; ++i) groups[0].push_back(i);
  }
  std::vector<int> fold_of(static_cast<std::size_t>(n), 0);
  int pos = 0;
  for (auto& g : groups) {
    shuffle(g);
    for (Eigen::Index i : g) fold_of[static_cast<std::size_t>(i)] = pos++ % folds;
  }
  return fold_of;
}

CVOutcome grid_search_cv(const GramProvider& grams, const Eigen::VectorXd& y, Task task,
                         KernelKind kernel, const GridSpec& grid, int folds, std::uint64_t seed) {
  const Eigen::Index n = y.size();
  CVOutcome out;
  CVReport& rep = out.report;
  rep.task = task;
  rep.kernel = kernel;
  rep.folds = folds;
  rep.seed = seed;
  rep.fold_of = assign_folds(y, task, folds, seed);

  const auto regs = canonical(task == Task::kRegression ? grid.lambdas : grid.Cs);
  const auto hs = kernel == KernelKind::kGlqk ? canonical(grid.hs) : std::vector<int>{0};
  const auto zetas = kernel == KernelKind::kGlqk ? canonical(grid.zetas) : std::vector<int>{0};
  if (regs.empty() || hs.empty() || zetas.empty()) throw InvalidArgument("empty hyperparameter grid");

  std::vector<std::vector<Eigen::Index>> train(folds), val(folds);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int f = rep.fold_of[static_cast<std::size_t>(i)];
    for (int g = 0; g < folds; ++g) (g == f ? val[g] : train[g]).push_back(i);
  }

  for (double reg : regs) {
    for (int h : hs) {
      for (int zeta : zetas) {
        CVCell cell;
        cell.reg = reg;
        cell.h = h;
        cell.zeta = zeta;
        const Eigen::MatrixXd* k = grams(h, zeta);
        if (!k) {
          cell.skipped = true;
          cell.note = "zeta exceeds the lattice side";
          rep.cells.push_back(std::move(cell));
          continue;
        }
        if (k->rows() != n || k->cols() != n) throw InvalidArgument("gram shape does not match labels");
        double total = 0.0;
        int counted = 0;
        for (int f = 0; f < folds; ++f) {
          const Eigen::VectorXd ytr = take(y, train[f]);
          const Eigen::VectorXd yva = take(y, val[f]);
          double score;
          try {
            const bool both = (ytr.array() > 0).any() && (ytr.array() < 0).any();
            if (task == Task::kClassification && !both) {
              // Degenerate fold: predict the only class present.
              const double c = ytr[0] >= 0 ? 1.0 : -1.0;
              score = accuracy(yva, Eigen::VectorXd::Constant(yva.size(), c));
            } else {
              const TrainedModel m = fit(task, take(*k, train[f], train[f]), ytr, reg);
              const Eigen::VectorXd pred = m.predict(take(*k, train[f], val[f]));
              score = task == Task::kRegression ? r_squared(yva, pred) : accuracy(yva, pred);
            }
          } catch (const UndefinedMetric&) {
            cell.fold_scores.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
          }
          cell.fold_scores.push_back(score);
          total += score;
          ++counted;
        }
        if (counted == 0) {
          cell.skipped = true;
          cell.note = "no fold produced a defined score";
        } else {
          cell.score = total / counted;
        }
        rep.cells.push_back(std::move(cell));
      }
    }
  }

  for (std::size_t c = 0; c < rep.cells.size(); ++c) {
    if (rep.cells[c].skipped) continue;
    if (rep.selected < 0 || rep.cells[c].score > rep.cells[static_cast<std::size_t>(rep.selected)].score) {
      rep.selected = static_cast<int>(c);
    }
  }
  if (rep.selected < 0) throw InvalidArgument("every grid cell was skipped");

  const CVCell& best = rep.best();
  const Eigen::MatrixXd* k = grams(best.h, best.zeta);
  out.model = fit(task, *k, y, best.reg);
  out.model.standardized = true;
  out.model.train_indices.resize(static_cast<std::size_t>(n));
  std::iota(out.model.train_indices.begin(), out.model.train_indices.end(), std::size_t{0});
  return out;
}

}  // namespace glqk
