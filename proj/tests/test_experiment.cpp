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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gqpinn/archive.hpp"
#include "gqpinn/error.hpp"
#include "gqpinn/experiment.hpp"

using namespace gqpinn;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("gqpinn_test_" + name);
  fs::remove_all(p);
  return p;
}

ExperimentSpec small_spec() {
  ExperimentSpec s;
  s.problem = "poisson2d";
  s.models = {"so2", "qpinn"};
  s.sizes = {1, 2};
  s.seeds = 3;
  s.train.epochs = 2;
  return s;
}

std::size_t data_rows(const std::string& tsv) {
  std::size_t n = 0;
  std::istringstream in(tsv);
  std::string line;
  while (std::getline(in, line)) n += !line.empty() && line[0] != '#';
  return n - 1;  // column header
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("parameter-count axes") {
  const auto prob = poisson2d();
  for (std::size_t p = 1; p <= 10; ++p) {
    CHECK(make_model("k4", p, prob)->parameter_count() == (p + 1) * 3);
    CHECK(make_model("qpinn", p, prob)->parameter_count() == (p + 1) * 6);
  }
  const auto diff = diffusion2d();
  CHECK(make_model("qpinn", 1, diff)->parameter_count() == 18);
  CHECK(make_model("qpinn", 1, diff, {0, 4})->parameter_count() == 24);
  CHECK(model_label("qpinn", {0, 4}) == "qpinn_r4");
  CHECK(model_label("so2", {3, 4}) == "so2");
}

TEST_CASE("registry rejects mismatched inputs and unknown names") {
  CHECK_THROWS_AS(make_model("so2", 1, wave1d()), StructuralError);
  CHECK_THROWS_AS(make_model("z2", 1, poisson2d()), StructuralError);
  CHECK_THROWS_AS(make_model("mystery", 1, poisson2d()), StructuralError);
  CHECK_THROWS_AS(make_model("k4", 0, poisson2d()), StructuralError);
  ExperimentSpec s = small_spec();
  s.problem = "nope";
  CHECK_THROWS_AS(s.validate(), StructuralError);
}

TEST_CASE("median") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 3.0, 2.0}) == 2.5);
  CHECK(std::isnan(median({})));
}

TEST_CASE("results are ordered and independent of worker count") {
  auto s = small_spec();
  const auto a = run_experiment(s);
  s.jobs = 3;
  const auto b = run_experiment(s);
  REQUIRE(a.size() == 4);
  CHECK(a[0].model == "so2");
  CHECK(a[1].size == 2);
  CHECK(a[2].model == "qpinn");
  for (std::size_t c = 0; c < a.size(); ++c) {
    REQUIRE(a[c].runs.size() == 3);
    for (std::size_t r = 0; r < 3; ++r) {
      CHECK(a[c].runs[r].seed == r + 1);
      CHECK(a[c].runs[r].theta_final == b[c].runs[r].theta_final);
    }
    std::vector<double> m;
    for (const auto& r : a[c].runs) m.push_back(r.final_mae());
    const auto agg = a[c].aggregate();
    CHECK(agg.median_mae == median(m));
    CHECK(agg.runs == 3);
    CHECK(agg.failed == 0);
    CHECK(agg.min_mae <= agg.median_mae);
    CHECK(agg.median_mae <= agg.max_mae);
    CHECK(std::isnan(agg.median_extrapolation_mae));
  }
}

TEST_CASE("failed runs are counted but excluded") {
  ExperimentResult c;
  c.runs.resize(3);
  for (std::size_t i = 0; i < 3; ++i) {
    c.runs[i].epochs.resize(1);
    c.runs[i].epochs[0].mae = 0.1 * static_cast<double>(i + 1);
    c.runs[i].epochs[0].extrapolation_mae = NAN;
  }
  c.runs[2].failed = true;
  const auto a = c.aggregate();
  CHECK(a.runs == 3);
  CHECK(a.failed == 1);
  CHECK(a.median_mae == doctest::Approx(0.15));
  CHECK(a.max_mae == doctest::Approx(0.2));
}

TEST_CASE("config round trip and hash") {
  CHECK(archive::fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(archive::fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  auto s = small_spec();
  s.options.rotations = 4;
  s.train.lbfgs.lr = 0.5;
  const auto back = archive::spec_from_config(archive::config_text(s));
  CHECK(archive::config_text(back) == archive::config_text(s));
  CHECK(archive::config_hash(back) == archive::config_hash(s));
  auto other = s;
  other.seeds = 4;
  CHECK(archive::config_hash(other) != archive::config_hash(s));
  other = s;
  other.jobs = 8;  // scheduling is not part of the configuration
  CHECK(archive::config_hash(other) == archive::config_hash(s));
  CHECK_THROWS_AS(archive::spec_from_config("{not json"), StructuralError);
}

TEST_CASE("archive is self-consistent and reproducible") {
  const auto s = small_spec();
  const auto d1 = scratch("a1"), d2 = scratch("a2");
  archive::write(d1, s, run_experiment(s), true);
  auto s2 = s;
  s2.jobs = 2;
  archive::write(d2, s2, run_experiment(s2), true);

  CHECK(archive::verify(d1).empty());
  for (const char* f : {"summary.tsv", "summary.json", "runs.tsv", "epochs.tsv", "config.json",
                        "plot_so2.tsv", "plot_qpinn.tsv"}) {
    CAPTURE(f);
    CHECK(slurp(d1 / f) == slurp(d2 / f));
  }
  const std::string hash = archive::config_hash(s);
  for (const char* f : {"summary.tsv", "runs.tsv", "epochs.tsv", "timing.tsv", "plot_so2.tsv"}) {
    CHECK(slurp(d1 / f).rfind("# config_hash=" + hash, 0) == 0);
  }
  CHECK(slurp(d1 / "summary.json").find(hash) != std::string::npos);
  CHECK(data_rows(slurp(d1 / "runs.tsv")) == 12);
  CHECK(data_rows(slurp(d1 / "epochs.tsv")) == 24);
  CHECK(data_rows(slurp(d1 / "summary.tsv")) == 4);

  // Optimizer defaults are echoed verbatim.
  const std::string cfg = slurp(d1 / "config.json");
  for (const char* kv : {"\"lr\": 0.7", "\"max_iter\": 20", "\"max_eval\": 25",
                         "\"tolerance_grad\": 1e-07", "\"tolerance_change\": 1e-09",
                         "\"history_size\": 100", "\"line_search\": \"strong_wolfe\""}) {
    CAPTURE(kv);
    CHECK(cfg.find(kv) != std::string::npos);
  }

  // Tampering is detected.
  {
    std::string sum = slurp(d2 / "summary.tsv");
    sum[sum.size() - 3] = sum[sum.size() - 3] == '1' ? '2' : '1';
    std::ofstream(d2 / "summary.tsv", std::ios::binary) << sum;
  }
  CHECK_FALSE(archive::verify(d2).empty());
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("a ten by ten sweep yields one hundred rows") {
  ExperimentSpec s;
  s.models = {"so2"};
  for (std::size_t p = 1; p <= 10; ++p) s.sizes.push_back(p);
  s.seeds = 10;
  s.train.epochs = 1;
  const auto rows = archive::rows(run_experiment(s));
  CHECK(rows.size() == 100);
}

}  // TEST_SUITE
