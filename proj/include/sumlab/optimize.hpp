#pragma once

// Numerical optimizers behind the inequality checks.  Everything in here
// produces LOWER bounds on suprema: alternating maximization and
// extreme-point ascent can stall below the optimum but never overshoot it,
// which is exactly the direction the check reports are allowed to trust.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumlab/rational.hpp"
#include "sumlab/rng.hpp"
#include "sumlab/tensor.hpp"

namespace sumlab {

struct OptimizeOptions {
  int multistart = 20;
  int max_iters = 500;
  double tol = 1e-10;
  std::uint64_t seed = 0x5EEDULL;
};

namespace detail {

// Normalize a nonnegative vector onto the unit sphere of ell_p (p in [1,INF]).
inline void normalize_nonneg(std::vector<double>& x, double p) {
  double n = 0.0;
  if (std::isinf(p)) {
    for (double v : x) n = std::max(n, v);
  } else {
    double mx = 0.0;
    for (double v : x) mx = std::max(mx, v);
    if (mx == 0.0) n = 0.0;
    else {
      double acc = 0.0;
      for (double v : x) acc += std::pow(v / mx, p);
      n = mx * std::pow(acc, 1.0 / p);
    }
  }
  if (n <= 0.0) {
    // Degenerate direction: fall back to the feasible uniform vector.
    double d = static_cast<double>(x.size());
    double fill = std::isinf(p) ? 1.0 : std::pow(d, -1.0 / p);
    std::fill(x.begin(), x.end(), fill);
    return;
  }
  for (double& v : x) v /= n;
}

// Maximize <c,x> over the nonnegative part of the unit ell_p ball, for
// nonnegative coefficients c.  Closed form: x_i proportional to c_i^{p*-1};
// for p = 1 all mass on the lowest-index argmax; for p = INF the all-ones
// vector.  Returns the optimal value and writes the optimizer into x.
inline double nonneg_linear_max(const std::vector<double>& c, double p, std::vector<double>& x) {
  const std::size_t d = c.size();
  x.assign(d, 0.0);
  if (std::isinf(p)) {
    std::fill(x.begin(), x.end(), 1.0);
    double s = 0.0;
    for (double v : c) s += v;
    return s;
  }
  if (p == 1.0) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < d; ++i)
      if (c[i] > c[best]) best = i;
    x[best] = 1.0;
    return c[best];
  }
  double mx = 0.0;
  for (double v : c) mx = std::max(mx, v);
  if (mx == 0.0) return 0.0;
  const double pstar = p / (p - 1.0);
  double acc = 0.0;
  for (double v : c) acc += std::pow(v / mx, pstar);
  const double norm_pstar = mx * std::pow(acc, 1.0 / pstar);
  for (std::size_t i = 0; i < d; ++i)
    x[i] = std::pow(c[i] / norm_pstar, pstar - 1.0);
  return norm_pstar;
}

}  // namespace detail

struct FormNormResult {
  double value = 0.0;
  int iterations = 0;   // full alternating passes of the best start
  bool ascent_ok = true;  // objective never decreased beyond rounding noise
};

// Supremum of sum_i t_i * prod_j x(j)_{i_j} over nonnegative unit vectors of
// the given ell_{p_j} balls, by alternating closed-form block maximization
// with multistart.  Always a valid lower bound on the true norm.
inline FormNormResult nonneg_form_norm_detailed(const NonnegTensor& t, const std::vector<double>& p,
                                                const OptimizeOptions& opt = {}) {
  const int m = t.rank();
  if (static_cast<int>(p.size()) != m)
    throw std::invalid_argument("nonneg_form_norm: need one exponent per axis");
  for (double pj : p)
    if (!(pj >= 1.0)) throw std::invalid_argument("nonneg_form_norm: exponents must be >= 1");

  FormNormResult best;
  std::vector<std::vector<double>> x(static_cast<std::size_t>(m));
  std::vector<double> coeff;

  for (int start = 0; start < std::max(1, opt.multistart); ++start) {
    SplitMix64 rng(derive_seed(opt.seed, static_cast<std::uint64_t>(start)));
    for (int j = 0; j < m; ++j) {
      auto& xj = x[static_cast<std::size_t>(j)];
      xj.assign(static_cast<std::size_t>(t.dims()[static_cast<std::size_t>(j)]), 1.0);
      if (start > 0)
        for (double& v : xj) v = rng.uniform_pos();
      detail::normalize_nonneg(xj, p[static_cast<std::size_t>(j)]);
    }

    double value = 0.0;
    bool ascent_ok = true;
    int pass = 0;
    for (; pass < opt.max_iters; ++pass) {
      double pass_value = value;
      for (int j = 0; j < m; ++j) {
        // Coefficients of the linear subproblem in block j.
        coeff.assign(static_cast<std::size_t>(t.dims()[static_cast<std::size_t>(j)]), 0.0);
        std::vector<int> idx(static_cast<std::size_t>(m), 0);
        std::size_t flat = 0;
        do {
          double w = t[flat];
          if (w != 0.0) {
            for (int l = 0; l < m; ++l)
              if (l != j) w *= x[static_cast<std::size_t>(l)][static_cast<std::size_t>(
                  idx[static_cast<std::size_t>(l)])];
            coeff[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])] += w;
          }
          ++flat;
        } while (next_multi_index(idx, t.dims()));
        double v = detail::nonneg_linear_max(coeff, p[static_cast<std::size_t>(j)],
                                             x[static_cast<std::size_t>(j)]);
        if (v + 1e-9 * std::max(1.0, pass_value) < pass_value) ascent_ok = false;
        pass_value = v;
      }
      if (pass_value <= value + opt.tol * std::max(1.0, value)) {
        value = std::max(value, pass_value);
        ++pass;
        break;
      }
      value = pass_value;
    }

    if (value > best.value) {
      best.value = value;
      best.iterations = pass;
      best.ascent_ok = ascent_ok;
    } else if (!ascent_ok) {
      best.ascent_ok = false;
    }
  }
  return best;
}

inline double nonneg_form_norm(const NonnegTensor& t, const std::vector<double>& p,
                               const OptimizeOptions& opt = {}) {
  return nonneg_form_norm_detailed(t, p, opt).value;
}

// ---------------------------------------------------------------------------
// Weak ell_p norms of vector families
// ---------------------------------------------------------------------------

// Either the canonical basis (e_1..e_n) of ell_u, which has a closed-form
// weak norm, or an explicit finite family in R^d hosted in ell_u^d.
struct VectorFamily {
  enum class Kind { Canonical, Explicit };

  Kind kind = Kind::Canonical;
  int n = 0;           // family size
  ExtRational u;       // host space exponent, >= 1 (may be INF)
  std::vector<std::vector<double>> vectors;  // explicit only: n rows of dim d

  static VectorFamily canonical(int n, ExtRational u) {
    if (n < 1) throw std::invalid_argument("VectorFamily: n must be >= 1");
    if (u < ExtRational(1)) throw std::invalid_argument("VectorFamily: u must be >= 1");
    VectorFamily f;
    f.kind = Kind::Canonical;
    f.n = n;
    f.u = std::move(u);
    return f;
  }

  static VectorFamily make_explicit(std::vector<std::vector<double>> vecs, ExtRational u) {
    if (vecs.empty() || vecs[0].empty())
      throw std::invalid_argument("VectorFamily: empty explicit family");
    for (const auto& v : vecs)
      if (v.size() != vecs[0].size())
        throw std::invalid_argument("VectorFamily: ragged explicit family");
    if (u < ExtRational(1)) throw std::invalid_argument("VectorFamily: u must be >= 1");
    VectorFamily f;
    f.kind = Kind::Explicit;
    f.n = static_cast<int>(vecs.size());
    f.u = std::move(u);
    f.vectors = std::move(vecs);
    return f;
  }

  int dim() const {
    return kind == Kind::Canonical ? n : static_cast<int>(vectors[0].size());
  }
};

namespace detail {

// Maximize <g,y> over the SIGNED unit ball of ell_{u*} (the dual ball of the
// host ell_u): the optimum value is ||g||_u and the maximizer is written to y.
inline double dual_ball_linear_max(const std::vector<double>& g, double u, std::vector<double>& y) {
  const std::size_t d = g.size();
  y.assign(d, 0.0);
  if (u == 1.0) {  // u* = INF: sign vector
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      y[i] = g[i] < 0.0 ? -1.0 : 1.0;
      s += std::fabs(g[i]);
    }
    return s;
  }
  if (std::isinf(u)) {  // u* = 1: signed lowest-index argmax
    std::size_t best = 0;
    for (std::size_t i = 1; i < d; ++i)
      if (std::fabs(g[i]) > std::fabs(g[best])) best = i;
    y[best] = g[best] < 0.0 ? -1.0 : 1.0;
    return std::fabs(g[best]);
  }
  double mx = 0.0;
  for (double v : g) mx = std::max(mx, std::fabs(v));
  if (mx == 0.0) return 0.0;
  double acc = 0.0;
  for (double v : g) acc += std::pow(std::fabs(v) / mx, u);
  const double norm_u = mx * std::pow(acc, 1.0 / u);
  for (std::size_t i = 0; i < d; ++i) {
    double mag = std::pow(std::fabs(g[i]) / norm_u, u - 1.0);
    y[i] = g[i] < 0.0 ? -mag : mag;
  }
  return norm_u;
}

}  // namespace detail

// w_p of a family: sup over the dual unit ball of the ell_p norm of the
// evaluation sequence.  Canonical families use the exact closed form
// n^{max(1/p - 1/u*, 0)}; explicit families run a monotone extreme-point
// ascent (the objective is convex, so each linear-maximization step cannot
// decrease it) and report the best value found — a lower bound.
inline double weak_norm(const VectorFamily& f, double p, const OptimizeOptions& opt = {}) {
  if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("weak_norm: p must be finite and >= 1");

  const double inv_ustar = f.u.is_infinite() ? 1.0 : 1.0 - 1.0 / f.u.to_double();
  if (f.kind == VectorFamily::Kind::Canonical)
    return std::pow(static_cast<double>(f.n), std::max(1.0 / p - inv_ustar, 0.0));

  const double u = f.u.is_infinite() ? std::numeric_limits<double>::infinity() : f.u.to_double();
  const std::size_t d = static_cast<std::size_t>(f.dim());
  const std::size_t n = static_cast<std::size_t>(f.n);

  auto lp_of_evals = [&](const std::vector<double>& y) {
    double mx = 0.0;
    std::vector<double> e(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s += y[k] * f.vectors[i][k];
      e[i] = s;
      mx = std::max(mx, std::fabs(s));
    }
    if (mx == 0.0) return std::make_pair(0.0, e);
    double acc = 0.0;
    for (double v : e) acc += std::pow(std::fabs(v) / mx, p);
    return std::make_pair(mx * std::pow(acc, 1.0 / p), e);
  };

  double best = 0.0;
  std::vector<double> y(d, 0.0), g(d, 0.0), ynext;
  for (int start = 0; start < std::max(1, opt.multistart); ++start) {
    SplitMix64 rng(derive_seed(opt.seed ^ 0x77AAULL, static_cast<std::uint64_t>(start)));
    if (start == 0) {
      std::fill(y.begin(), y.end(), 1.0);
    } else if (start % 2 == 1) {
      // Random extreme-ish point: one signed coordinate.
      std::fill(y.begin(), y.end(), 0.0);
      y[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(d) - 1))] =
          rng.next() & 1 ? 1.0 : -1.0;
    } else {
      for (double& v : y) v = 2.0 * rng.uniform01() - 1.0;
    }
    // Project the start into the dual ball by normalizing in ell_{u*}.
    {
      std::vector<double> tmp = y;
      for (double& v : tmp) v = std::fabs(v);
      double nrm;
      if (u == 1.0) {  // u* = INF
        nrm = *std::max_element(tmp.begin(), tmp.end());
      } else if (std::isinf(u)) {  // u* = 1
        nrm = 0.0;
        for (double v : tmp) nrm += v;
      } else {
        const double ustar = u / (u - 1.0);
        double mx = *std::max_element(tmp.begin(), tmp.end());
        if (mx == 0.0) nrm = 0.0;
        else {
          double acc = 0.0;
          for (double v : tmp) acc += std::pow(v / mx, ustar);
          nrm = mx * std::pow(acc, 1.0 / ustar);
        }
      }
      if (nrm <= 0.0) continue;
      for (double& v : y) v /= nrm;
    }

    auto [val, evals] = lp_of_evals(y);
    for (int iter = 0; iter < opt.max_iters; ++iter) {
      // Subgradient of sum_i |<y,x_i>|^p at the current point.
      std::fill(g.begin(), g.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        double e = evals[i];
        if (e == 0.0) continue;
        double w = p * std::pow(std::fabs(e), p - 1.0) * (e < 0.0 ? -1.0 : 1.0);
        for (std::size_t k = 0; k < d; ++k) g[k] += w * f.vectors[i][k];
      }
      double lin = detail::dual_ball_linear_max(g, u, ynext);
      if (lin <= 0.0) break;
      auto [val2, evals2] = lp_of_evals(ynext);
      if (val2 <= val * (1.0 + opt.tol) || val2 <= val + opt.tol) {
        val = std::max(val, val2);
        break;
      }
      y.swap(ynext);
      val = val2;
      evals = std::move(evals2);
    }
    best = std::max(best, val);
  }
  return best;
}

}  // namespace sumlab
