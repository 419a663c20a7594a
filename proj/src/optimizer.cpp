// Copyright 2026 The lrvqe Authors
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

#include "lrvqe/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "lrvqe/error.hpp"

namespace lrvqe {

namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double inf_norm(const Vec& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

struct Point {
  double t = 0.0;
  double f = 0.0;
  double df = 0.0;  // directional derivative
  Vec x;
  Vec g;
};

class Problem {
 public:
  Problem(const Objective& objective, std::span<const double> lower, std::span<const double> upper)
      : objective_(objective), lower_(lower), upper_(upper) {}

  double evaluate(const Vec& x, Vec& g) {
    g.assign(x.size(), 0.0);
    const double f = objective_(x, g);
    ++evaluations;
    if (!std::isfinite(f)) throw OptimizationFailure("objective returned a non-finite value");
    for (double v : g) {
      if (!std::isfinite(v)) throw OptimizationFailure("objective returned a non-finite gradient");
    }
    return f;
  }

  Point probe(const Vec& x0, const Vec& d, double t) {
    Point p;
    p.t = t;
    p.x.resize(x0.size());
    for (std::size_t i = 0; i < x0.size(); ++i) {
      p.x[i] = std::clamp(x0[i] + t * d[i], lower_[i], upper_[i]);
    }
    p.f = evaluate(p.x, p.g);
    p.df = dot(p.g, d);
    return p;
  }

  int evaluations = 0;

 private:
  const Objective& objective_;
  std::span<const double> lower_;
  std::span<const double> upper_;
};

/// Minimizer of the cubic through (a, fa, da) and (b, fb, db), or the
/// bisection point when the cubic has no real minimizer.
double cubic_min(double a, double fa, double da, double b, double fb, double db) {
  const double d1 = da + db - 3.0 * (fa - fb) / (a - b);
  const double disc = d1 * d1 - da * db;
  if (disc < 0.0) return 0.5 * (a + b);
  const double d2 = std::copysign(std::sqrt(disc), b - a);
  const double denom = db - da + 2.0 * d2;
  if (denom == 0.0) return 0.5 * (a + b);
  return b - (b - a) * (db + d2 - d1) / denom;
}

struct LineSearchOutcome {
  bool ok = false;
  Point point;
};

LineSearchOutcome zoom(Problem& problem, const Vec& x0, const Vec& d, const Point& start, Point lo,
                       Point hi, const LbfgsSettings& s, int budget) {
  for (int it = 0; it < budget; ++it) {
    const double left = std::min(lo.t, hi.t);
    const double right = std::max(lo.t, hi.t);
    const double width = right - left;
    if (width <= 1e-14 * std::max(1.0, right)) break;
    double t = cubic_min(lo.t, lo.f, lo.df, hi.t, hi.f, hi.df);
    t = std::clamp(t, left + 0.1 * width, right - 0.1 * width);
    Point p = problem.probe(x0, d, t);
    if (p.f > start.f + s.c1 * t * start.df || p.f >= lo.f) {
      hi = std::move(p);
    } else {
      if (std::abs(p.df) <= -s.c2 * start.df) return {true, std::move(p)};
      if (p.df * (hi.t - lo.t) >= 0.0) hi = lo;
      lo = std::move(p);
    }
  }
  // Fall back on the best sufficient-decrease point seen.
  if (lo.t > 0.0 && lo.f < start.f) return {true, std::move(lo)};
  return {false, start};
}

/// Strong-Wolfe search on t in (0, t_max].
LineSearchOutcome line_search(Problem& problem, const Vec& x0, const Vec& d, const Point& start,
                              double t_init, double t_max, const LbfgsSettings& s) {
  Point prev = start;
  double t = std::min(t_init, t_max);
  for (int it = 0; it < s.max_line_search; ++it) {
    Point p = problem.probe(x0, d, t);
    const int budget = s.max_line_search - it - 1;
    if (p.f > start.f + s.c1 * t * start.df || (it > 0 && p.f >= prev.f)) {
      return zoom(problem, x0, d, start, prev, p, s, budget);
    }
    if (std::abs(p.df) <= -s.c2 * start.df) return {true, std::move(p)};
    if (p.df >= 0.0) return zoom(problem, x0, d, start, p, prev, s, budget);
    if (t >= t_max) return {true, std::move(p)};
    prev = std::move(p);
    t = std::min(2.0 * t, t_max);
  }
  if (prev.t > 0.0 && prev.f < start.f) return {true, std::move(prev)};
  return {false, start};
}

}  // namespace

LbfgsResult minimize_box(const Objective& objective, std::vector<double> x0,
                         std::span<const double> lower, std::span<const double> upper,
                         const LbfgsSettings& settings) {
  const std::size_t n = x0.size();
  if (lower.size() != n || upper.size() != n) {
    throw InvalidParameter("minimize_box: bound vectors do not match the parameter count");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(lower[i] <= upper[i])) throw InvalidParameter("minimize_box: lower bound above upper");
    x0[i] = std::clamp(x0[i], lower[i], upper[i]);
  }

  Problem problem(objective, lower, upper);
  LbfgsResult result;
  Point cur;
  cur.x = std::move(x0);
  cur.f = problem.evaluate(cur.x, cur.g);
  result.f_history.push_back(cur.f);

  std::deque<Vec> s_hist;
  std::deque<Vec> y_hist;
  std::deque<double> rho_hist;

  Vec free_mask(n);
  Vec d(n);
  Vec pg(n);
  bool first_step = true;

  result.status = "max_iters";
  while (result.iterations < settings.max_iters) {
    for (std::size_t i = 0; i < n; ++i) {
      const bool pinned_low = cur.x[i] <= lower[i] && cur.g[i] > 0.0;
      const bool pinned_high = cur.x[i] >= upper[i] && cur.g[i] < 0.0;
      free_mask[i] = (pinned_low || pinned_high) ? 0.0 : 1.0;
      pg[i] = free_mask[i] * cur.g[i];
    }
    if (inf_norm(pg) < settings.grad_tol) {
      result.converged = true;
      result.status = "grad_tol";
      break;
    }

    // Two-loop recursion restricted to the free variables.
    for (std::size_t i = 0; i < n; ++i) d[i] = -pg[i];
    const std::size_t m = s_hist.size();
    std::vector<double> alpha(m);
    for (std::size_t k = m; k-- > 0;) {
      double sd = 0.0;
      for (std::size_t i = 0; i < n; ++i) sd += free_mask[i] * s_hist[k][i] * d[i];
      alpha[k] = rho_hist[k] * sd;
      for (std::size_t i = 0; i < n; ++i) d[i] -= alpha[k] * free_mask[i] * y_hist[k][i];
    }
    if (m > 0) {
      const double gamma = 1.0 / (rho_hist.back() * dot(y_hist.back(), y_hist.back()));
      for (double& v : d) v *= gamma;
    }
    for (std::size_t k = 0; k < m; ++k) {
      double yd = 0.0;
      for (std::size_t i = 0; i < n; ++i) yd += free_mask[i] * y_hist[k][i] * d[i];
      const double beta = rho_hist[k] * yd;
      for (std::size_t i = 0; i < n; ++i) d[i] += (alpha[k] - beta) * free_mask[i] * s_hist[k][i];
    }
    double slope = dot(d, cur.g);
    if (!(slope < 0.0)) {
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      for (std::size_t i = 0; i < n; ++i) d[i] = -pg[i];
      slope = dot(d, cur.g);
      first_step = true;
    }

    double t_max = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i] > 0.0) t_max = std::min(t_max, (upper[i] - cur.x[i]) / d[i]);
      if (d[i] < 0.0) t_max = std::min(t_max, (lower[i] - cur.x[i]) / d[i]);
    }
    if (!(t_max > 0.0)) {
      result.status = "no_feasible_step";
      break;
    }
    const double t_init = first_step ? std::min(1.0, 1.0 / std::sqrt(dot(d, d))) : 1.0;

    Point start = cur;
    start.t = 0.0;
    start.df = slope;
    LineSearchOutcome ls = line_search(problem, cur.x, d, start, t_init, t_max, settings);
    if (!ls.ok) {
      if (!s_hist.empty()) {
        // Retry from steepest descent with a fresh memory.
        s_hist.clear();
        y_hist.clear();
        rho_hist.clear();
        first_step = true;
        continue;
      }
      result.status = "line_search_failed";
      break;
    }

    Point next = std::move(ls.point);
    Vec s(n);
    Vec y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = next.x[i] - cur.x[i];
      y[i] = next.g[i] - cur.g[i];
    }
    const double sy = dot(s, y);
    if (sy > 1e-10 * dot(y, y) && sy > 0.0) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > settings.history) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    first_step = false;

    const double f_prev = cur.f;
    cur = std::move(next);
    ++result.iterations;
    result.f_history.push_back(cur.f);
    if (f_prev - cur.f <= settings.f_tol * std::max({std::abs(f_prev), std::abs(cur.f), 1.0})) {
      result.converged = true;
      result.status = "f_tol";
      break;
    }
  }

  result.x = std::move(cur.x);
  result.f = cur.f;
  result.grad = std::move(cur.g);
  result.evaluations = problem.evaluations;
  return result;
}

}  // namespace lrvqe
