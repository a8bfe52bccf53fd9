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

#include "gqpinn/archive.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "gqpinn/error.hpp"

namespace gqpinn::archive {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// NaN has no JSON literal; null marks "not available".
json jnum(double x) { return std::isnan(x) ? json(nullptr) : json(x); }

std::string gradient_name(GradientMode m) {
  switch (m) {
    case GradientMode::Auto: return "auto";
    case GradientMode::Adjoint: return "adjoint";
    case GradientMode::FiniteDifference: return "finite_difference";
  }
  return "auto";
}

GradientMode gradient_mode(const std::string& s) {
  if (s == "auto") return GradientMode::Auto;
  if (s == "adjoint") return GradientMode::Adjoint;
  if (s == "finite_difference") return GradientMode::FiniteDifference;
  throw StructuralError("unknown gradient mode: " + s);
}

json config_json(const ExperimentSpec& s) {
  const auto& l = s.train.lbfgs;
  return json{
      {"problem", s.problem},
      {"models", s.models},
      {"sizes", s.sizes},
      {"seeds", s.seeds},
      {"first_seed", s.first_seed},
      {"qpinn_qubits", s.options.qpinn_qubits},
      {"rotations", s.options.rotations},
      {"epochs", s.train.epochs},
      {"gradient", gradient_name(s.train.gradient)},
      {"stencil", {{"h_input", s.train.stencil.h_input}, {"h_param", s.train.stencil.h_param}}},
      {"lbfgs",
       {{"lr", l.lr},
        {"max_iter", l.max_iter},
        {"max_eval", l.max_eval},
        {"tolerance_grad", l.tolerance_grad},
        {"tolerance_change", l.tolerance_change},
        {"history_size", l.history_size},
        {"line_search", "strong_wolfe"},
        {"c1", l.c1},
        {"c2", l.c2},
        {"max_line_search", l.max_line_search}}},
  };
}

std::string hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::string header(const std::string& hash, const std::vector<std::uint64_t>& seeds) {
  std::string s = "# config_hash=" + hash + " seeds=";
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(seeds[i]);
  }
  return s + "\n";
}

void put(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw StructuralError("cannot write " + p.string());
  f << text;
  if (!f) throw StructuralError("write failed: " + p.string());
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw StructuralError("cannot read " + p.string());
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// Cells in order of first appearance.
std::vector<std::pair<RunRow, CellAggregate>> cells_of(const std::vector<RunRow>& rows) {
  std::vector<std::pair<RunRow, CellAggregate>> out;
  std::vector<std::vector<const RunRow*>> members;
  for (const auto& r : rows) {
    std::size_t k = 0;
    while (k < out.size() && !(out[k].first.model == r.model && out[k].first.size == r.size)) ++k;
    if (k == out.size()) {
      out.push_back({r, {}});
      members.emplace_back();
    }
    members[k].push_back(&r);
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    // Reuse the experiment's own aggregation on minimal runs.
    ExperimentResult c;
    for (const RunRow* r : members[k]) {
      TrainRun t;
      t.failed = r->failed;
      EpochRecord e;
      e.mae = r->final_mae;
      e.extrapolation_mae = r->final_extrapolation_mae;
      t.epochs.push_back(e);
      c.runs.push_back(std::move(t));
    }
    out[k].second = c.aggregate();
  }
  return out;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_text(const ExperimentSpec& spec) { return config_json(spec).dump(); }

std::string config_hash(const ExperimentSpec& spec) { return hex(fnv1a64(config_text(spec))); }

ExperimentSpec spec_from_config(const std::string& text) {
  ExperimentSpec s;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw StructuralError("config must be a JSON object");
    s.problem = j.value("problem", s.problem);
    s.models = j.value("models", s.models);
    s.sizes = j.value("sizes", s.sizes);
    s.seeds = j.value("seeds", s.seeds);
    s.first_seed = j.value("first_seed", s.first_seed);
    s.options.qpinn_qubits = j.value("qpinn_qubits", s.options.qpinn_qubits);
    s.options.rotations = j.value("rotations", s.options.rotations);
    s.train.epochs = j.value("epochs", s.train.epochs);
    s.train.gradient = gradient_mode(j.value("gradient", std::string("auto")));
    if (j.contains("stencil")) {
      const auto& st = j.at("stencil");
      s.train.stencil.h_input = st.value("h_input", s.train.stencil.h_input);
      s.train.stencil.h_param = st.value("h_param", s.train.stencil.h_param);
    }
    if (j.contains("lbfgs")) {
      const auto& lj = j.at("lbfgs");
      auto& l = s.train.lbfgs;
      l.lr = lj.value("lr", l.lr);
      l.max_iter = lj.value("max_iter", l.max_iter);
      l.max_eval = lj.value("max_eval", l.max_eval);
      l.tolerance_grad = lj.value("tolerance_grad", l.tolerance_grad);
      l.tolerance_change = lj.value("tolerance_change", l.tolerance_change);
      l.history_size = lj.value("history_size", l.history_size);
      l.c1 = lj.value("c1", l.c1);
      l.c2 = lj.value("c2", l.c2);
      l.max_line_search = lj.value("max_line_search", l.max_line_search);
      if (lj.value("line_search", std::string("strong_wolfe")) != "strong_wolfe") {
        throw StructuralError("only strong_wolfe line search is supported");
      }
    }
  } catch (const json::exception& e) {
    throw StructuralError(std::string("malformed config: ") + e.what());
  }
  return s;
}

std::vector<RunRow> rows(const std::vector<ExperimentResult>& cells) {
  std::vector<RunRow> out;
  for (const auto& c : cells) {
    for (const auto& r : c.runs) {
      out.push_back({c.model, c.size, c.parameter_count, r.seed, r.failed, r.final_mae(),
                     r.final_extrapolation_mae()});
    }
  }
  return out;
}

std::string summary_tsv(const std::string& hash, const std::vector<RunRow>& rows) {
  std::string s = "# config_hash=" + hash + "\n";
  s += "model\tparameters\tsize\truns\tfailed\tmean_mae\tmedian_mae\tmin_mae\tmax_mae\t"
       "median_extrapolation_mae\n";
  for (const auto& [r, a] : cells_of(rows)) {
    s += r.model + '\t' + std::to_string(r.parameters) + '\t' + std::to_string(r.size) + '\t' +
         std::to_string(a.runs) + '\t' + std::to_string(a.failed) + '\t' + num(a.mean_mae) +
         '\t' + num(a.median_mae) + '\t' + num(a.min_mae) + '\t' + num(a.max_mae) + '\t' +
         num(a.median_extrapolation_mae) + '\n';
  }
  return s;
}

std::string summary_json(const std::string& hash, const std::vector<std::uint64_t>& seeds,
                         const std::vector<RunRow>& rows) {
  json cells = json::array();
  for (const auto& [r, a] : cells_of(rows)) {
    cells.push_back({{"model", r.model},
                     {"parameters", r.parameters},
                     {"size", r.size},
                     {"runs", a.runs},
                     {"failed", a.failed},
                     {"mean_mae", jnum(a.mean_mae)},
                     {"median_mae", jnum(a.median_mae)},
                     {"min_mae", jnum(a.min_mae)},
                     {"max_mae", jnum(a.max_mae)},
                     {"median_extrapolation_mae", jnum(a.median_extrapolation_mae)}});
  }
  return json{{"config_hash", hash}, {"seeds", seeds}, {"cells", cells}}.dump(2) + "\n";
}

void write(const fs::path& dir, const ExperimentSpec& spec,
           const std::vector<ExperimentResult>& cells, bool plot_data) {
  fs::create_directories(dir);
  const std::string hash = config_hash(spec);
  const auto seeds = spec.seed_list();
  const std::string head = header(hash, seeds);

  put(dir / "config.json",
      json{{"config", config_json(spec)}, {"config_hash", hash}}.dump(2) + "\n");

  std::string runs = head +
                     "model\tsize\tparameters\tseed\tfailed\tinitial_loss\tfinal_loss\t"
                     "initial_mae\tfinal_mae\tfinal_extrapolation_mae\tepochs\tfailure\n";
  std::string epochs = head +
                       "model\tsize\tseed\tepoch\tloss\tresidual\tinitial\tboundary\tmae\t"
                       "extrapolation_mae\tevals\tline_search_failed\tstop\n";
  std::string timing = head + "model\tsize\tseed\twall_seconds\n";
  for (const auto& c : cells) {
    const std::string key = c.model + '\t' + std::to_string(c.size) + '\t';
    for (const auto& r : c.runs) {
      std::string failure = r.failure;
      for (char& ch : failure) {
        if (ch == '\t' || ch == '\n') ch = ' ';
      }
      runs += key + std::to_string(c.parameter_count) + '\t' + std::to_string(r.seed) + '\t' +
              (r.failed ? "1" : "0") + '\t' + num(r.initial_loss.total) + '\t' +
              num(r.final_loss()) + '\t' + num(r.initial_mae) + '\t' + num(r.final_mae()) +
              '\t' + num(r.final_extrapolation_mae()) + '\t' +
              std::to_string(r.epochs.size()) + '\t' + failure + '\n';
      for (const auto& e : r.epochs) {
        epochs += key + std::to_string(r.seed) + '\t' + std::to_string(e.epoch) + '\t' +
                  num(e.loss.total) + '\t' + num(e.loss.residual) + '\t' +
                  num(e.loss.initial) + '\t' + num(e.loss.boundary) + '\t' + num(e.mae) +
                  '\t' + num(e.extrapolation_mae) + '\t' + std::to_string(e.evals) + '\t' +
                  (e.line_search_failed ? "1" : "0") + '\t' + to_string(e.stop) + '\n';
      }
      timing += key + std::to_string(r.seed) + '\t' + num(r.wall_seconds) + '\n';
    }
  }
  put(dir / "runs.tsv", runs);
  put(dir / "epochs.tsv", epochs);
  put(dir / "timing.tsv", timing);

  const auto rr = rows(cells);
  put(dir / "summary.tsv", summary_tsv(hash, rr));
  put(dir / "summary.json", summary_json(hash, seeds, rr));

  if (plot_data) {
    std::map<std::string, std::string> plots;
    for (const auto& [r, a] : cells_of(rr)) {
      auto& s = plots[r.model];
      if (s.empty()) s = "# config_hash=" + hash + "\nparameters\tmedian_mae\tmean_mae\tmin_mae\tmax_mae\n";
      s += std::to_string(r.parameters) + '\t' + num(a.median_mae) + '\t' + num(a.mean_mae) +
           '\t' + num(a.min_mae) + '\t' + num(a.max_mae) + '\n';
    }
    for (const auto& [m, s] : plots) put(dir / ("plot_" + m + ".tsv"), s);
  }
}

std::string expressibility_tsv(const std::string& hash, const std::vector<KlReport>& reports) {
  std::string s = "# config_hash=" + hash + "\n";
  s += "ansatz\tlayers\tparameters\tdimension\tkl\tpairs\tbins\tseed\n";
  for (const auto& r : reports) {
    s += r.ansatz + '\t' + std::to_string(r.layers) + '\t' + std::to_string(r.parameters) +
         '\t' + std::to_string(r.dimension) + '\t' + num(r.kl) + '\t' +
         std::to_string(r.pairs) + '\t' + std::to_string(r.bins) + '\t' +
         std::to_string(r.seed) + '\n';
  }
  return s;
}

void write_expressibility(const fs::path& dir, const std::string& hash,
                          const std::vector<KlReport>& reports) {
  fs::create_directories(dir);
  put(dir / "expressibility.tsv", expressibility_tsv(hash, reports));
}

std::vector<std::string> verify(const fs::path& dir) {
  std::vector<std::string> problems;
  json cfg;
  try {
    cfg = json::parse(slurp(dir / "config.json"));
  } catch (const std::exception& e) {
    return {std::string("config.json unreadable: ") + e.what()};
  }
  if (!cfg.contains("config") || !cfg.contains("config_hash")) {
    return {"config.json lacks config or config_hash"};
  }
  const std::string hash = cfg["config_hash"].get<std::string>();
  if (hex(fnv1a64(cfg["config"].dump())) != hash) {
    problems.push_back("config.json: recorded hash does not match its config");
  }
  const std::string tag = "# config_hash=" + hash;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".tsv") continue;
    const std::string text = slurp(entry.path());
    if (text.compare(0, tag.size(), tag) != 0) {
      problems.push_back(entry.path().filename().string() + ": missing or wrong config hash");
    }
  }

  std::vector<RunRow> rr;
  std::vector<std::uint64_t> seeds;
  try {
    std::istringstream in(slurp(dir / "runs.tsv"));
    std::string line;
    std::getline(in, line);
    const auto pos = line.find("seeds=");
    if (pos != std::string::npos && pos + 6 < line.size()) {
      for (const auto& s : split(line.substr(pos + 6), ',')) seeds.push_back(std::stoull(s));
    }
    std::getline(in, line);  // column names
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto f = split(line, '\t');
      if (f.size() < 12) throw StructuralError("short row in runs.tsv");
      rr.push_back({f[0], std::stoul(f[1]), std::stoul(f[2]), std::stoull(f[3]), f[4] == "1",
                    std::strtod(f[8].c_str(), nullptr), std::strtod(f[9].c_str(), nullptr)});
    }
  } catch (const std::exception& e) {
    problems.push_back(std::string("runs.tsv unreadable: ") + e.what());
    return problems;
  }
  try {
    if (slurp(dir / "summary.tsv") != summary_tsv(hash, rr)) {
      problems.push_back("summary.tsv does not regenerate from runs.tsv");
    }
    if (slurp(dir / "summary.json") != summary_json(hash, seeds, rr)) {
      problems.push_back("summary.json does not regenerate from runs.tsv");
    }
  } catch (const std::exception& e) {
    problems.push_back(e.what());
  }
  return problems;
}

}  // namespace gqpinn::archive
