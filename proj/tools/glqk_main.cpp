#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "glqk/errors.hpp"
#include "glqk/experiment.hpp"

namespace {

struct Args {
  std::string config;
  std::string pool;
  std::string out = ".";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 0;
};

void add_common(CLI::App* sub, Args& a) {
  sub->add_option("--config", a.config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
  sub->add_option("--pool", a.pool, "shadow pool file");
  sub->add_option("--out", a.out, "output directory");
  sub->add_option_function<std::uint64_t>(
      "--seed", [&a](const std::uint64_t& s) { a.seed = s; a.seed_given = true; }, "master seed override");
  sub->add_option("--threads", a.threads, "worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geometrically local quantum kernels: data, kernels, learning, planning"};
  app.require_subcommand(1);
  Args a;
  auto* gen = app.add_subcommand("generate", "simulate states and write a shadow pool");
  auto* exp = app.add_subcommand("experiment", "train and evaluate kernels on a pool");
  auto* plan = app.add_subcommand("plan", "resource plans for the four learning regimes");
  auto* ana = app.add_subcommand("analyze", "cluster decomposition and local cover numbers");
  auto* pca = app.add_subcommand("pca", "kernel PCA coordinates of pool entries");
  for (auto* s : {gen, exp, plan, ana, pca}) add_common(s, a);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
#ifdef _OPENMP
    if (a.threads > 0) omp_set_num_threads(a.threads);
#endif
    auto cfg = glqk::ExperimentConfig::load(a.config);
    if (a.seed_given) cfg.seed = a.seed;
    const std::string pool = a.pool.empty() ? a.out + "/pool.glqs" : a.pool;

    if (gen->parsed()) glqk::cmd_generate(cfg, pool, std::cout);
    else if (exp->parsed()) glqk::cmd_experiment(cfg, pool, a.out, std::cout);
    else if (plan->parsed()) glqk::cmd_plan(cfg, a.out, std::cout);
    else if (ana->parsed()) glqk::cmd_analyze(cfg, a.out, std::cout);
    else if (pca->parsed()) glqk::cmd_pca(cfg, pool, a.out, std::cout);
  } catch (const glqk::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const glqk::NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const glqk::ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
