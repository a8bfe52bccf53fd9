// Copyright 2026 The GQPINN Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: twirl, describe, train, benchmark, baseline,
// expressibility, validate.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gqpinn/ansatz.hpp"
#include "gqpinn/archive.hpp"
#include "gqpinn/error.hpp"
#include "gqpinn/experiment.hpp"
#include "gqpinn/expressibility.hpp"
#include "gqpinn/fixtures.hpp"
#include "gqpinn/symmetry.hpp"

namespace {

using namespace gqpinn;

constexpr int kOk = 0;
constexpr int kIntegrity = 1;
constexpr int kUsage = 2;

/// "3", "1..10" or "1,2,5".
std::vector<std::size_t> parse_range(const std::string& text) {
  std::vector<std::size_t> out;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || v == 0) {
      throw StructuralError("bad range '" + text + "': expected positive integers");
    }
    return static_cast<std::size_t>(v);
  };
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const auto a = number(text.substr(0, dots)), b = number(text.substr(dots + 2));
    if (b < a) throw StructuralError("bad range '" + text + "': end before start");
    for (auto k = a; k <= b; ++k) out.push_back(k);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(number(item));
  if (out.empty()) throw StructuralError("empty range");
  return out;
}

std::string default_output() {
  const char* env = std::getenv("GQPINN_OUTPUT_DIR");
  return env && *env ? env : "gqpinn_results";
}

/// Flags shared by the archive-producing subcommands. Each override only
/// applies when given, so a config file supplies the rest.
struct RunFlags {
  std::string config;
  std::string problem;
  std::string sizes;
  std::size_t seeds = 0;
  std::uint64_t first_seed = 0;
  int epochs = 0;
  unsigned jobs = 1;
  std::string output;
  bool plot = false;
  std::size_t qubits = 0;
  std::size_t rotations = 0;
  std::string gradient;
  LbfgsConfig lbfgs;
  StencilConfig stencil;
  std::vector<CLI::Option*> lbfgs_opts, stencil_opts;
  CLI::Option *problem_opt = nullptr, *sizes_opt = nullptr, *seeds_opt = nullptr,
              *first_seed_opt = nullptr, *epochs_opt = nullptr, *qubits_opt = nullptr,
              *rotations_opt = nullptr, *gradient_opt = nullptr;

  void attach(CLI::App* app, const std::string& size_flag, const std::string& size_help) {
    app->add_option("--config", config, "JSON run configuration (flags override it)");
    problem_opt = app->add_option("--problem", problem, "problem name");
    sizes_opt = app->add_option(size_flag, sizes, size_help);
    seeds_opt = app->add_option("--seeds", seeds, "number of seeds");
    first_seed_opt = app->add_option("--first-seed", first_seed, "first seed (default 1)");
    epochs_opt = app->add_option("--epochs", epochs, "training epochs (default 50)");
    app->add_option("--jobs", jobs, "parallel runs")->check(CLI::PositiveNumber);
    app->add_option("--output", output, "archive directory (default $GQPINN_OUTPUT_DIR)");
    app->add_flag("--emit-plot-data", plot, "write plot_<model>.tsv series");
    qubits_opt = app->add_option("--qubits", qubits, "baseline circuit qubit count");
    rotations_opt = app->add_option("--rotations", rotations, "baseline rotations per qubit (3|4)");
    gradient_opt = app->add_option("--gradient", gradient, "auto|adjoint|finite_difference");
    lbfgs_opts = {
        app->add_option("--lr", lbfgs.lr, "first trial step scale (default 0.7)"),
        app->add_option("--max-iter", lbfgs.max_iter, "iterations per epoch (default 20)"),
        app->add_option("--max-eval", lbfgs.max_eval, "evaluations per epoch (default 25)"),
        app->add_option("--tolerance-grad", lbfgs.tolerance_grad, "default 1e-7"),
        app->add_option("--tolerance-change", lbfgs.tolerance_change, "default 1e-9"),
        app->add_option("--history-size", lbfgs.history_size, "default 100")};
    stencil_opts = {
        app->add_option("--h-input", stencil.h_input, "input stencil step (default 1e-3)"),
        app->add_option("--h-param", stencil.h_param, "parameter stencil step (default 1e-4)")};
  }

  ExperimentSpec build(std::vector<std::string> models, const std::string& default_sizes,
                       std::size_t default_seeds) const {
    ExperimentSpec s;
    if (!config.empty()) {
      std::ifstream f(config);
      if (!f) throw StructuralError("cannot read config " + config);
      std::stringstream text;
      text << f.rdbuf();
      s = archive::spec_from_config(text.str());
    } else {
      s.sizes = parse_range(default_sizes);
      s.seeds = default_seeds;
    }
    if (!models.empty()) s.models = std::move(models);
    if (*problem_opt) s.problem = problem;
    if (*sizes_opt) s.sizes = parse_range(sizes);
    if (*seeds_opt) s.seeds = seeds;
    if (*first_seed_opt) s.first_seed = first_seed;
    if (*epochs_opt) s.train.epochs = epochs;
    if (*qubits_opt) s.options.qpinn_qubits = qubits;
    if (*rotations_opt) s.options.rotations = rotations;
    if (*gradient_opt) {
      const std::string json = "{\"gradient\":\"" + gradient + "\"}";
      s.train.gradient = archive::spec_from_config(json).train.gradient;
    }
    auto& l = s.train.lbfgs;
    if (*lbfgs_opts[0]) l.lr = lbfgs.lr;
    if (*lbfgs_opts[1]) l.max_iter = lbfgs.max_iter;
    if (*lbfgs_opts[2]) l.max_eval = lbfgs.max_eval;
    if (*lbfgs_opts[3]) l.tolerance_grad = lbfgs.tolerance_grad;
    if (*lbfgs_opts[4]) l.tolerance_change = lbfgs.tolerance_change;
    if (*lbfgs_opts[5]) l.history_size = lbfgs.history_size;
    if (*stencil_opts[0]) s.train.stencil.h_input = stencil.h_input;
    if (*stencil_opts[1]) s.train.stencil.h_param = stencil.h_param;
    s.jobs = jobs;
    s.validate();
    return s;
  }
};

int run_and_archive(const ExperimentSpec& spec, const RunFlags& f) {
  const std::string dir = f.output.empty() ? default_output() : f.output;
  std::cerr << "config " << archive::config_hash(spec) << " -> " << dir << "\n";
  const auto cells = run_experiment(spec, [](const ExperimentResult& c, const TrainRun& r) {
    std::fprintf(stderr, "%s p=%zu seed=%llu %s mae=%.3e (%.1fs)\n", c.model.c_str(), c.size,
                 static_cast<unsigned long long>(r.seed), r.failed ? "FAILED" : "ok",
                 r.failed ? 0.0 : r.final_mae(), r.wall_seconds);
  });
  archive::write(dir, spec, cells, f.plot);

  std::size_t failed = 0;
  std::printf("model\tparameters\tsize\tmedian_mae\tmin_mae\tfailed\n");
  for (const auto& c : cells) {
    const auto a = c.aggregate();
    failed += a.failed;
    std::printf("%s\t%zu\t%zu\t%.6e\t%.6e\t%zu\n", c.model.c_str(), c.parameter_count, c.size,
                a.median_mae, a.min_mae, a.failed);
  }
  if (failed) std::cerr << "warning: " << failed << " run(s) failed; see runs.tsv\n";
  return kOk;
}

std::vector<std::string> split_names(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (!name.empty()) out.push_back(name);
    }
  }
  return out;
}

int print_checks(const std::vector<fixtures::Check>& checks, int& failures) {
  for (const auto& c : checks) {
    const char* tag = c.passed ? "PASS" : (c.advisory ? "NOTE" : "FAIL");
    std::printf("%s  %-28s %s\n", tag, c.name.c_str(), c.detail.c_str());
    if (!c.passed && !c.advisory) ++failures;
  }
  return failures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetry-equivariant quantum PINN toolkit"};
  app.require_subcommand(1);
  int status = kOk;

  // twirl
  auto* twirl = app.add_subcommand("twirl", "print the equivariant generator set of a pool");
  std::string group;
  std::size_t twirl_qubits = 2;
  std::vector<std::string> pool_text;
  twirl->add_option("--group", group, "k4|so2|z2")->required();
  twirl->add_option("--qubits", twirl_qubits, "register size (2 or 4)");
  twirl->add_option("--generator", pool_text, "custom pool entry (repeatable)");
  twirl->callback([&] {
    GroupRepresentation rep = [&] {
      if (group == "k4") return k4_rep(twirl_qubits).representation;
      if (group == "so2") return so2_rep(twirl_qubits).representation;
      if (group == "z2") {
        if (twirl_qubits != 2) throw StructuralError("z2 acts on 2 qubits");
        return z2_rep().representation;
      }
      throw StructuralError("unknown group: " + group);
    }();
    std::vector<PauliSum> pool;
    if (pool_text.empty()) {
      pool = twirl_qubits == 4 ? generator_sets::four_qubit_pool()
                               : generator_sets::two_qubit_pool();
    } else {
      for (const auto& t : pool_text) pool.push_back(parse_pauli_sum(t, twirl_qubits));
    }
    for (const auto& g : equivariant_generator_set(pool, rep).generators) {
      std::printf("%s\n", to_string(g).c_str());
    }
  });

  // describe
  auto* desc = app.add_subcommand("describe", "print an ansatz's ops and parameter map");
  std::string desc_name, desc_problem = "poisson2d";
  std::size_t desc_layers = 1, desc_qubits = 0, desc_rot = 3;
  desc->add_option("--ansatz", desc_name, "ansatz name")->required();
  desc->add_option("--layers", desc_layers, "layer count")->check(CLI::PositiveNumber);
  desc->add_option("--problem", desc_problem, "problem (fixes the input dimension)");
  desc->add_option("--qubits", desc_qubits, "baseline qubit count");
  desc->add_option("--rotations", desc_rot, "baseline rotations per qubit (3|4)");
  desc->callback([&] {
    const auto prob = make_problem(desc_problem);
    const auto a = make_ansatz(desc_name, desc_layers, prob.input_dim, desc_qubits, desc_rot);
    std::printf("%s", describe(a).c_str());
  });

  // train / benchmark
  auto* tr = app.add_subcommand("train", "train one ansatz over seeds into an archive");
  RunFlags train_flags;
  std::string train_model;
  tr->add_option("--ansatz", train_model, "ansatz name");
  train_flags.attach(tr, "--layers", "layer count or range");
  tr->callback([&] {
    std::vector<std::string> models;
    if (!train_model.empty()) models.push_back(train_model);
    const auto spec = train_flags.build(models, "1", 1);
    status = run_and_archive(spec, train_flags);
  });

  auto* bench = app.add_subcommand("benchmark", "sweep ansatz x layers x seeds into an archive");
  RunFlags bench_flags;
  std::vector<std::string> bench_models;
  bench->add_option("--ansatz", bench_models, "ansatz names (repeatable or comma list)");
  bench_flags.attach(bench, "--layers", "layer range, e.g. 1..10");
  bench->callback([&] {
    const auto spec = bench_flags.build(split_names(bench_models), "1..10", 10);
    status = run_and_archive(spec, bench_flags);
  });

  auto* base = app.add_subcommand("baseline", "classical PINN / SI-PINN sweep into an archive");
  RunFlags base_flags;
  std::vector<std::string> base_models;
  base->add_option("--model", base_models, "pinn|sipinn (repeatable or comma list)");
  base_flags.attach(base, "--hidden", "hidden width or range, e.g. 1..6");
  base->callback([&] {
    const auto models = split_names(base_models);
    for (const auto& m : models) {
      if (m != "pinn" && m != "sipinn") throw StructuralError("baseline model must be pinn or sipinn");
    }
    const auto spec = base_flags.build(models, "1..6", 10);
    status = run_and_archive(spec, base_flags);
  });

  // expressibility
  auto* expr = app.add_subcommand("expressibility", "KL divergence to Haar per layer count");
  std::vector<std::string> expr_models;
  std::string expr_layers = "1..6", expr_problem = "poisson2d", expr_output;
  std::size_t expr_pairs = 5000, expr_bins = 75, expr_qubits = 0, expr_rot = 3;
  std::uint64_t expr_seed = 1;
  unsigned expr_jobs = 1;
  expr->add_option("--ansatz", expr_models, "ansatz names")->required();
  expr->add_option("--layers", expr_layers, "layer range");
  expr->add_option("--problem", expr_problem, "domain for the data inputs");
  expr->add_option("--pairs", expr_pairs, "state pairs")->check(CLI::PositiveNumber);
  expr->add_option("--bins", expr_bins, "histogram bins")->check(CLI::PositiveNumber);
  expr->add_option("--seed", expr_seed, "sampling seed");
  expr->add_option("--qubits", expr_qubits, "baseline qubit count");
  expr->add_option("--rotations", expr_rot, "baseline rotations per qubit (3|4)");
  expr->add_option("--jobs", expr_jobs, "parallel chunks")->check(CLI::PositiveNumber);
  expr->add_option("--output", expr_output, "also write expressibility.tsv here");
  expr->callback([&] {
    const auto prob = make_problem(expr_problem);
    const auto layers = parse_range(expr_layers);
    std::vector<KlReport> reports;
    std::string key = expr_problem + ";" + std::to_string(expr_pairs) + ";" +
                      std::to_string(expr_bins) + ";" + std::to_string(expr_seed) + ";" +
                      std::to_string(expr_qubits) + ";" + std::to_string(expr_rot);
    for (const auto& name : split_names(expr_models)) {
      for (auto p : layers) {
        const auto a = make_ansatz(name, p, prob.input_dim, expr_qubits, expr_rot);
        reports.push_back(kl_report(name, p, a.circuit, prob.sample_domain, expr_pairs,
                                    expr_seed, expr_bins, expr_jobs));
        key += ";" + name + ":" + std::to_string(p);
      }
    }
    char hash[20];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(archive::fnv1a64(key)));
    std::printf("%s", archive::expressibility_tsv(hash, reports).c_str());
    if (!expr_output.empty()) archive::write_expressibility(expr_output, hash, reports);
  });

  // validate
  auto* val = app.add_subcommand("validate", "run fixture suites; optionally check an archive");
  std::string val_archive;
  val->add_option("--archive", val_archive, "archive directory to verify");
  val->callback([&] {
    int failures = 0;
    print_checks(fixtures::generator_sets(), failures);
    print_checks(fixtures::residuals(), failures);
    print_checks(fixtures::bessel(), failures);
    if (!val_archive.empty()) {
      const auto problems = archive::verify(val_archive);
      for (const auto& p : problems) std::printf("FAIL  archive: %s\n", p.c_str());
      if (problems.empty()) std::printf("PASS  archive %s\n", val_archive.c_str());
      failures += static_cast<int>(problems.size());
    }
    status = failures ? kIntegrity : kOk;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericIntegrityError& e) {
    std::cerr << "integrity error: " << e.what() << "\n";
    return kIntegrity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIntegrity;
  }
  return status;
}
