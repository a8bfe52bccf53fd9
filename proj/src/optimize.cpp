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

#include "gqpinn/optimize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "gqpinn/error.hpp"

namespace gqpinn {

namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs(const Vec& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

// Minimizer of the cubic through (x1, f1, g1), (x2, f2, g2), clamped to the
// bounds (default: the interval between x1 and x2).
double cubic_interpolate(double x1, double f1, double g1, double x2, double f2, double g2,
                         double lo, double hi) {
  const double d1 = g1 + g2 - 3.0 * (f1 - f2) / (x1 - x2);
  const double d2_square = d1 * d1 - g1 * g2;
  if (d2_square >= 0.0) {
    const double d2 = std::sqrt(d2_square);
    const double min_pos = x1 <= x2 ? x2 - (x2 - x1) * ((g2 + d2 - d1) / (g2 - g1 + 2 * d2))
                                    : x1 - (x1 - x2) * ((g1 + d2 - d1) / (g1 - g2 + 2 * d2));
    if (std::isfinite(min_pos)) return std::min(std::max(min_pos, lo), hi);
  }
  return 0.5 * (lo + hi);
}

double cubic_interpolate(double x1, double f1, double g1, double x2, double f2, double g2) {
  return cubic_interpolate(x1, f1, g1, x2, f2, g2, std::min(x1, x2), std::max(x1, x2));
}

struct LineSearchResult {
  double f;
  Vec g;
  double t;
  int evals;
  bool done;
};

LineSearchResult strong_wolfe(const ValueAndGrad& fg, const Vec& x, double t, const Vec& d,
                              double f, const Vec& g, double gtd, const LbfgsConfig& cfg) {
  const double c1 = cfg.c1, c2 = cfg.c2;
  const double tolerance_change = cfg.tolerance_change;
  const int max_ls = cfg.max_line_search;
  const double d_norm = max_abs(d);
  Vec xt(x.size());
  auto eval = [&](double step, Vec& grad) {
    for (std::size_t i = 0; i < x.size(); ++i) xt[i] = x[i] + step * d[i];
    grad.assign(x.size(), 0.0);
    return fg(xt, grad);
  };

  Vec g_new;
  double f_new = eval(t, g_new);
  int evals = 1;
  double gtd_new = dot(g_new, d);

  double t_prev = 0.0, f_prev = f, gtd_prev = gtd;
  Vec g_prev = g;
  bool done = false;
  int ls_iter = 0;

  std::vector<double> bracket, bracket_f, bracket_gtd;
  std::vector<Vec> bracket_g;
  while (ls_iter < max_ls) {
    if (f_new > f + c1 * t * gtd || (ls_iter > 1 && f_new >= f_prev)) {
      bracket = {t_prev, t};
      bracket_f = {f_prev, f_new};
      bracket_g = {g_prev, g_new};
      bracket_gtd = {gtd_prev, gtd_new};
      break;
    }
    if (std::abs(gtd_new) <= -c2 * gtd) {
      bracket = {t};
      bracket_f = {f_new};
      bracket_g = {g_new};
      done = true;
      break;
    }
    if (gtd_new >= 0) {
      bracket = {t_prev, t};
      bracket_f = {f_prev, f_new};
      bracket_g = {g_prev, g_new};
      bracket_gtd = {gtd_prev, gtd_new};
      break;
    }
    // extrapolate
    const double min_step = t + 0.01 * (t - t_prev);
    const double max_step = t * 10;
    const double tmp = t;
    t = cubic_interpolate(t_prev, f_prev, gtd_prev, t, f_new, gtd_new, min_step, max_step);
    t_prev = tmp;
    f_prev = f_new;
    g_prev = g_new;
    gtd_prev = gtd_new;
    f_new = eval(t, g_new);
    ++evals;
    gtd_new = dot(g_new, d);
    ++ls_iter;
  }
  if (ls_iter == max_ls) {
    bracket = {0.0, t};
    bracket_f = {f, f_new};
    bracket_g = {g, g_new};
    bracket_gtd = {gtd, gtd_new};
  }

  // zoom
  bool insuf_progress = false;
  auto order = [&] {
    return bracket_f.front() <= bracket_f.back() ? std::pair<int, int>{0, 1}
                                                  : std::pair<int, int>{1, 0};
  };
  auto [low, high] = order();
  while (!done && ls_iter < max_ls) {
    if (std::abs(bracket[1] - bracket[0]) * d_norm < tolerance_change) break;
    t = cubic_interpolate(bracket[0], bracket_f[0], bracket_gtd[0], bracket[1], bracket_f[1],
                          bracket_gtd[1]);
    const double bmax = std::max(bracket[0], bracket[1]);
    const double bmin = std::min(bracket[0], bracket[1]);
    const double eps = 0.1 * (bmax - bmin);
    if (std::min(bmax - t, t - bmin) < eps) {
      if (insuf_progress || t >= bmax || t <= bmin) {
        t = std::abs(t - bmax) < std::abs(t - bmin) ? bmax - eps : bmin + eps;
        insuf_progress = false;
      } else {
        insuf_progress = true;
      }
    } else {
      insuf_progress = false;
    }
    f_new = eval(t, g_new);
    ++evals;
    gtd_new = dot(g_new, d);
    ++ls_iter;
    if (f_new > f + c1 * t * gtd || f_new >= bracket_f[low]) {
      bracket[high] = t;
      bracket_f[high] = f_new;
      bracket_g[high] = g_new;
      bracket_gtd[high] = gtd_new;
      std::tie(low, high) = order();
    } else {
      if (std::abs(gtd_new) <= -c2 * gtd) {
        done = true;
      } else if (gtd_new * (bracket[high] - bracket[low]) >= 0) {
        bracket[high] = bracket[low];
        bracket_f[high] = bracket_f[low];
        bracket_g[high] = bracket_g[low];
        bracket_gtd[high] = bracket_gtd[low];
      }
      bracket[low] = t;
      bracket_f[low] = f_new;
      bracket_g[low] = g_new;
      bracket_gtd[low] = gtd_new;
    }
  }
  return {bracket_f[low], std::move(bracket_g[low]), bracket[low], evals, done};
}

}  // namespace

void LbfgsConfig::validate() const {
  if (!(lr > 0) || max_iter < 1 || max_eval < 1 || !(tolerance_grad > 0) ||
      !(tolerance_change > 0) || history_size < 1 || max_line_search < 1) {
    throw StructuralError("L-BFGS: invalid configuration");
  }
  if (!(0 < c1 && c1 < c2 && c2 < 1)) {
    throw StructuralError("L-BFGS: line-search constants must satisfy 0 < c1 < c2 < 1");
  }
}

std::string to_string(LbfgsStop stop) {
  switch (stop) {
    case LbfgsStop::MaxIter:
      return "max_iter";
    case LbfgsStop::MaxEval:
      return "max_eval";
    case LbfgsStop::GradientTolerance:
      return "tolerance_grad";
    case LbfgsStop::StepTolerance:
      return "tolerance_change_step";
    case LbfgsStop::LossChangeTolerance:
      return "tolerance_change_loss";
    case LbfgsStop::NotDescent:
      return "not_descent";
  }
  return "?";
}

LbfgsResult lbfgs_step(const ValueAndGrad& fg, std::vector<double>& x, const LbfgsConfig& cfg,
                       LbfgsState& st) {
  cfg.validate();
  const std::size_t n = x.size();
  LbfgsResult res;
  Vec g(n, 0.0);
  double loss = fg(x, g);
  if (!std::isfinite(loss)) throw NumericIntegrityError("L-BFGS: non-finite initial loss");
  int current_evals = 1;
  st.func_evals += 1;
  res.loss = loss;
  res.evals = 1;

  if (max_abs(g) <= cfg.tolerance_grad) {
    res.stop = LbfgsStop::GradientTolerance;
    return res;
  }

  int n_iter = 0;
  bool opt_cond = false;
  std::vector<double> al(static_cast<std::size_t>(cfg.history_size));
  while (n_iter < cfg.max_iter) {
    ++n_iter;
    ++st.n_iter;
    if (st.n_iter == 1) {
      st.d.assign(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) st.d[i] = -g[i];
      st.old_dirs.clear();
      st.old_stps.clear();
      st.ro.clear();
      st.h_diag = 1.0;
    } else {
      Vec y(n), s(n);
      for (std::size_t i = 0; i < n; ++i) {
        y[i] = g[i] - st.prev_grad[i];
        s[i] = st.d[i] * st.t;
      }
      const double ys = dot(y, s);
      if (ys > 1e-10) {
        if (static_cast<int>(st.old_dirs.size()) == cfg.history_size) {
          st.old_dirs.pop_front();
          st.old_stps.pop_front();
          st.ro.pop_front();
        }
        st.h_diag = ys / dot(y, y);
        st.old_dirs.push_back(std::move(y));
        st.old_stps.push_back(std::move(s));
        st.ro.push_back(1.0 / ys);
      }
      const std::size_t num_old = st.old_dirs.size();
      al.resize(std::max(al.size(), num_old));
      Vec q(n);
      for (std::size_t i = 0; i < n; ++i) q[i] = -g[i];
      for (std::size_t k = num_old; k-- > 0;) {
        al[k] = dot(st.old_stps[k], q) * st.ro[k];
        for (std::size_t i = 0; i < n; ++i) q[i] -= al[k] * st.old_dirs[k][i];
      }
      for (std::size_t i = 0; i < n; ++i) q[i] *= st.h_diag;
      for (std::size_t k = 0; k < num_old; ++k) {
        const double be = dot(st.old_dirs[k], q) * st.ro[k];
        for (std::size_t i = 0; i < n; ++i) q[i] += st.old_stps[k][i] * (al[k] - be);
      }
      st.d = std::move(q);
    }
    st.prev_grad = g;
    st.prev_loss = loss;

    if (st.n_iter == 1) {
      double l1 = 0.0;
      for (double v : g) l1 += std::abs(v);
      st.t = std::min(1.0, 1.0 / l1) * cfg.lr;
    } else {
      st.t = 1.0;
    }

    const double gtd = dot(g, st.d);
    if (gtd > -cfg.tolerance_change) {
      res.stop = LbfgsStop::NotDescent;
      break;
    }

    auto ls = strong_wolfe(fg, x, st.t, st.d, loss, g, gtd, cfg);
    const double loss_before = loss;
    for (std::size_t i = 0; i < n; ++i) x[i] += ls.t * st.d[i];
    st.t = ls.t;
    loss = ls.f;
    g = std::move(ls.g);
    opt_cond = max_abs(g) <= cfg.tolerance_grad;
    current_evals += ls.evals;
    st.func_evals += ls.evals;
    if (!ls.done) res.line_search_failed = true;
    LbfgsIteration it;
    it.loss_before = loss_before;
    it.loss = loss;
    it.directional_after = dot(g, st.d);
    it.step = ls.t;
    it.directional = gtd;
    it.evals = ls.evals;
    it.wolfe_satisfied = ls.done;
    res.iterations.push_back(it);

    if (n_iter == cfg.max_iter) {
      res.stop = LbfgsStop::MaxIter;
      break;
    }
    if (current_evals >= cfg.max_eval) {
      res.stop = LbfgsStop::MaxEval;
      break;
    }
    if (opt_cond) {
      res.stop = LbfgsStop::GradientTolerance;
      break;
    }
    if (max_abs(st.d) * std::abs(st.t) <= cfg.tolerance_change) {
      res.stop = LbfgsStop::StepTolerance;
      break;
    }
    if (std::abs(loss - st.prev_loss) < cfg.tolerance_change) {
      res.stop = LbfgsStop::LossChangeTolerance;
      break;
    }
  }
  res.loss = loss;
  res.evals = current_evals;
  return res;
}

LbfgsResult lbfgs_minimize(const ValueAndGrad& fg, std::vector<double>& x,
                           const LbfgsConfig& cfg) {
  LbfgsState st;
  return lbfgs_step(fg, x, cfg, st);
}

double TrainRun::final_mae() const {
  return epochs.empty() ? initial_mae : epochs.back().mae;
}

double TrainRun::final_extrapolation_mae() const {
  return epochs.empty() ? std::numeric_limits<double>::quiet_NaN()
                        : epochs.back().extrapolation_mae;
}

double TrainRun::final_loss() const {
  return epochs.empty() ? initial_loss.total : epochs.back().loss.total;
}

std::vector<double> initial_parameters(const Model& f, std::uint64_t seed) {
  const auto [lo, hi] = f.init_range();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> theta(f.parameter_count());
  for (auto& v : theta) v = u(rng);
  return theta;
}

TrainRun train(const Model& f, const PdeProblem& prob, const TrainConfig& cfg,
               std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  TrainRun run;
  run.seed = seed;
  run.theta_init = initial_parameters(f, seed);
  std::vector<double> theta = run.theta_init;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    run.initial_loss = loss(f, theta, prob, cfg.stencil);
    run.initial_mae = mae(f, theta, prob);
    LbfgsState state;
    LossParts last;
    const ValueAndGrad fg = [&](std::span<const double> t, std::span<double> grad) {
      last = loss_and_gradient(f, t, prob, cfg.stencil, grad, cfg.gradient);
      return last.total;
    };
    for (int e = 1; e <= cfg.epochs; ++e) {
      const auto r = lbfgs_step(fg, theta, cfg.lbfgs, state);
      EpochRecord rec;
      rec.epoch = e;
      rec.loss = loss(f, theta, prob, cfg.stencil);
      rec.mae = mae(f, theta, prob);
      rec.extrapolation_mae =
          prob.extrapolation ? mae(f, theta, *prob.extrapolation, prob.exact) : nan;
      rec.evals = r.evals;
      rec.line_search_failed = r.line_search_failed;
      rec.stop = r.stop;
      run.epochs.push_back(rec);
    }
  } catch (const NumericIntegrityError& e) {
    run.failed = true;
    run.failure = e.what();
  }
  run.theta_final = theta;
  run.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

}  // namespace gqpinn
