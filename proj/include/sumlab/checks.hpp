#pragma once

// Numerical inequality checks on concrete nonnegative tensors.  Each check
// compares a left-hand norm against a right-hand bound and reports a verdict:
//
//   HOLDS        lhs <= rhs * (1 + tolerance)
//   VIOLATED     the bound failed and the right-hand side was computed in
//                closed form, so the failure is genuine
//   INCONCLUSIVE the bound failed but the right-hand side came from an
//                optimizer that only certifies a LOWER bound, so the failure
//                may be an optimization artifact rather than a counterexample

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumlab/exponents.hpp"
#include "sumlab/optimize.hpp"
#include "sumlab/rational.hpp"
#include "sumlab/rng.hpp"
#include "sumlab/tensor.hpp"

namespace sumlab {

enum class Verdict { Holds, Violated, Inconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "HOLDS";
    case Verdict::Violated: return "VIOLATED";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

struct CheckReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs (1.0 when both vanish)
  double slack = 0.0;  // rhs * (1 + tolerance) - lhs
  bool holds = false;
  bool rhs_certified = false;  // closed-form rhs vs optimizer lower bound
  Verdict verdict = Verdict::Inconclusive;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  int multistart = 0;
  std::string note;
};

namespace detail {

inline CheckReport make_report(double lhs, double rhs, double tol, bool rhs_certified) {
  CheckReport rep;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.tolerance = tol;
  rep.rhs_certified = rhs_certified;
  if (rhs > 0.0)
    rep.ratio = lhs / rhs;
  else
    rep.ratio = lhs == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  rep.slack = rhs * (1.0 + tol) - lhs;
  rep.holds = lhs <= rhs * (1.0 + tol) + (rhs == 0.0 ? tol : 0.0);
  rep.verdict = rep.holds ? Verdict::Holds
                          : (rhs_certified ? Verdict::Violated : Verdict::Inconclusive);
  return rep;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Mixed-norm interpolation bound (closed-form right-hand side)
// ---------------------------------------------------------------------------

// For 0 < r_j < q and R = sum_j r_j/(q - r_j), Q = qR/(1+R):
//   ||t||_Q  <=  prod_j [ outer ell_{r_j} over axis j of inner ell_q ]^{r_j/(R(q-r_j))}.
inline CheckReport popa_check(const NonnegTensor& t, const ExtRational& q,
                              const std::vector<ExtRational>& r, double tol = 1e-9) {
  const int m = t.rank();
  if (m < 2) throw std::invalid_argument("popa_check: tensor rank must be >= 2");
  if (static_cast<int>(r.size()) != m)
    throw std::invalid_argument("popa_check: need one exponent per axis");
  const PopaExponents pe = popa_exponents(q, r);  // validates 0 < r_j < q

  const double lhs = entry_lp_norm(t, pe.Q.to_double());
  const double qd = q.to_double();
  const double Rd = pe.R.to_double();

  double rhs = 1.0;
  for (int j = 0; j < m; ++j) {
    MixedNormSpec spec;
    spec.groups.push_back({j});
    std::vector<int> rest;
    for (int l = 0; l < m; ++l)
      if (l != j) rest.push_back(l);
    spec.groups.push_back(rest);
    spec.exponents = {r[static_cast<std::size_t>(j)].to_double(), qd};
    const double factor = mixed_norm(t, spec);
    const double expo =
        r[static_cast<std::size_t>(j)].to_double() /
        (Rd * (qd - r[static_cast<std::size_t>(j)].to_double()));
    rhs *= std::pow(factor, expo);
  }

  CheckReport rep = detail::make_report(lhs, rhs, tol, /*rhs_certified=*/true);
  rep.note = "entrywise ell_Q vs product of mixed (r_j, q) norms, Q = " + pe.Q.str();
  return rep;
}

// ---------------------------------------------------------------------------
// Entrywise ell_rho vs operator norm on ell_p spaces (optimizer-backed rhs)
// ---------------------------------------------------------------------------

inline CheckReport praciano_check(const NonnegTensor& t, const std::vector<ExtRational>& p,
                                  const OptimizeOptions& opt = {}, double tol = 1e-6) {
  const int m = t.rank();
  if (static_cast<int>(p.size()) != m)
    throw std::invalid_argument("praciano_check: need one exponent per axis");
  const std::optional<ExtRational> rho = praciano_rho({p.begin(), p.end()});
  if (!rho)
    throw std::invalid_argument("praciano_check: undefined exponent, need sum(1/p_j) < 1");

  std::vector<double> pd;
  pd.reserve(p.size());
  for (const auto& pj : p)
    pd.push_back(pj.is_infinite() ? std::numeric_limits<double>::infinity() : pj.to_double());

  const double lhs = entry_lp_norm(t, rho->to_double());
  const FormNormResult fn = nonneg_form_norm_detailed(t, pd, opt);

  CheckReport rep = detail::make_report(lhs, fn.value, tol, /*rhs_certified=*/false);
  rep.seed = opt.seed;
  rep.multistart = opt.multistart;
  rep.note = "entrywise ell_rho vs form norm, rho = " + rho->str() +
             (fn.ascent_ok ? "" : "; ascent check tripped");
  return rep;
}

// ---------------------------------------------------------------------------
// Two-block mixed-norm bound with weighted hypotheses (optimizer-backed rhs)
// ---------------------------------------------------------------------------

namespace detail {

// Supremum of  ( sum_O ( sum_I (prod_t u(t)_{i_t})^q a_{I,O}^q )^{e/q} )^{1/e}
// over nonnegative unit vectors u(t) in ell_{pw}, one per weight axis.
// Projected-gradient ascent with backtracking line search and multistart.
// The returned value is always achieved by a feasible weight, hence a lower
// bound on the true supremum.
inline double weighted_mixed_sup(const NonnegTensor& a, const std::vector<int>& weight_axes,
                                 const std::vector<int>& outer_axes, double q, double e,
                                 double pw, const OptimizeOptions& opt) {
  if (!(q >= 1.0) || !(e > 0.0)) throw std::invalid_argument("weighted_mixed_sup: bad exponents");
  const auto& dims = a.dims();
  const std::size_t nw = weight_axes.size();

  std::size_t outer_size = 1;
  for (int ax : outer_axes) outer_size *= static_cast<std::size_t>(dims[static_cast<std::size_t>(ax)]);

  // Precompute a^q and, per entry, the outer offset and weight indices.
  const std::size_t total = a.size();
  std::vector<double> bq(total);
  std::vector<std::size_t> outer_of(total);
  std::vector<std::vector<int>> widx(nw, std::vector<int>(total));
  {
    std::vector<int> idx(static_cast<std::size_t>(a.rank()), 0);
    std::size_t flat = 0;
    do {
      bq[flat] = std::pow(a[flat], q);
      std::size_t off = 0;
      for (int ax : outer_axes)
        off = off * static_cast<std::size_t>(dims[static_cast<std::size_t>(ax)]) +
              static_cast<std::size_t>(idx[static_cast<std::size_t>(ax)]);
      outer_of[flat] = off;
      for (std::size_t t = 0; t < nw; ++t)
        widx[t][flat] = idx[static_cast<std::size_t>(weight_axes[t])];
      ++flat;
    } while (next_multi_index(idx, dims));
  }

  std::vector<std::vector<double>> u(nw);
  std::vector<double> A(outer_size);

  auto eval = [&](const std::vector<std::vector<double>>& w) {
    std::fill(A.begin(), A.end(), 0.0);
    for (std::size_t f = 0; f < total; ++f) {
      if (bq[f] == 0.0) continue;
      double prod = bq[f];
      for (std::size_t t = 0; t < nw; ++t) prod *= std::pow(w[t][static_cast<std::size_t>(widx[t][f])], q);
      A[outer_of[f]] += prod;
    }
    double s = 0.0;
    for (double v : A) s += std::pow(v, e / q);
    return std::pow(s, 1.0 / e);
  };

  double best = 0.0;
  for (int start = 0; start < std::max(1, opt.multistart); ++start) {
    SplitMix64 rng(derive_seed(opt.seed ^ 0xB10CULL, static_cast<std::uint64_t>(start)));
    for (std::size_t t = 0; t < nw; ++t) {
      u[t].assign(static_cast<std::size_t>(dims[static_cast<std::size_t>(weight_axes[t])]), 1.0);
      if (start > 0)
        for (double& v : u[t]) v = rng.uniform_pos();
      normalize_nonneg(u[t], pw);
    }

    double val = eval(u);
    std::vector<std::vector<double>> grad(nw), cand(nw);
    for (int iter = 0; iter < opt.max_iters; ++iter) {
      // Gradient of val^e at u (A is left over from the last eval(u) call).
      double gmax = 0.0;
      for (std::size_t t = 0; t < nw; ++t) grad[t].assign(u[t].size(), 0.0);
      for (std::size_t f = 0; f < total; ++f) {
        if (bq[f] == 0.0) continue;
        const double ao = A[outer_of[f]];
        if (ao <= 0.0) continue;
        const double outer_w = std::pow(ao, e / q - 1.0);
        for (std::size_t t = 0; t < nw; ++t) {
          const double ut = u[t][static_cast<std::size_t>(widx[t][f])];
          if (ut <= 0.0 && q > 1.0) continue;
          double partial = bq[f];
          for (std::size_t t2 = 0; t2 < nw; ++t2)
            if (t2 != t) partial *= std::pow(u[t2][static_cast<std::size_t>(widx[t2][f])], q);
          grad[t][static_cast<std::size_t>(widx[t][f])] +=
              e * std::pow(ut, q - 1.0) * outer_w * partial;
        }
      }
      for (std::size_t t = 0; t < nw; ++t)
        for (double g : grad[t]) gmax = std::max(gmax, std::fabs(g));
      if (gmax <= 0.0) break;

      double step = 1.0;
      bool improved = false;
      for (int ls = 0; ls < 30; ++ls) {
        for (std::size_t t = 0; t < nw; ++t) {
          cand[t] = u[t];
          for (std::size_t s2 = 0; s2 < cand[t].size(); ++s2)
            cand[t][s2] = std::max(0.0, cand[t][s2] + step * grad[t][s2] / gmax);
          normalize_nonneg(cand[t], pw);
        }
        const double v2 = eval(cand);
        if (v2 > val * (1.0 + opt.tol) && v2 > val + opt.tol) {
          u.swap(cand);
          val = v2;
          improved = true;
          break;
        }
        step *= 0.5;
      }
      if (!improved) {
        eval(u);  // restore A for consistency (not strictly needed after exit)
        break;
      }
    }
    best = std::max(best, val);
  }
  return best;
}

}  // namespace detail

// Splits the axes of t into a leading block of m1 weight axes and a trailing
// block of m2 = rank - m1 axes.  Checks the mixed (gamma, q) norm of t against
// the larger of the two weighted hypothesis functionals.
inline CheckReport hl_check(const NonnegTensor& t, int m1, const ExtRational& q,
                            const ExtRational& alpha, const ExtRational& beta,
                            const ExtRational& p1, const ExtRational& p2,
                            const OptimizeOptions& opt = {}, double tol = 1e-6) {
  const int rank = t.rank();
  if (m1 < 1 || m1 >= rank)
    throw std::invalid_argument("hl_check: need 1 <= m1 < rank so both blocks are nonempty");
  const int m2 = rank - m1;

  const HlGammaResult hg = hl_gamma(m1, m2, p1, p2, q, alpha, beta);
  if (!hg.gamma) {
    for (const auto& c : hg.conditions)
      if (!c.pass) throw std::domain_error("hl_check: condition failed: " + c.name);
    throw std::domain_error("hl_check: exponent undefined");
  }

  std::vector<int> iaxes, jaxes;
  for (int ax = 0; ax < m1; ++ax) iaxes.push_back(ax);
  for (int ax = m1; ax < rank; ++ax) jaxes.push_back(ax);

  MixedNormSpec spec;
  spec.groups = {jaxes, iaxes};  // inner ell_q over the i-block, outer ell_gamma
  spec.exponents = {hg.gamma->to_double(), q.to_double()};
  const double lhs = mixed_norm(t, spec);

  const double h1 = detail::weighted_mixed_sup(t, iaxes, jaxes, q.to_double(),
                                               alpha.to_double(), p1.to_double(), opt);
  const double h2 = detail::weighted_mixed_sup(t, jaxes, iaxes, q.to_double(),
                                               beta.to_double(), p2.to_double(), opt);
  const double kappa = std::max(h1, h2);

  CheckReport rep = detail::make_report(lhs, kappa, tol, /*rhs_certified=*/false);
  rep.seed = opt.seed;
  rep.multistart = opt.multistart;
  rep.note = "mixed (gamma, q) norm vs max of weighted hypotheses, gamma = " + hg.gamma->str();
  return rep;
}

// ---------------------------------------------------------------------------
// Summing-ratio experiments
// ---------------------------------------------------------------------------

struct SummingReport {
  double lhs = 0.0;   // ell_s aggregate of the evaluations
  double rhs = 0.0;   // product of weak norms of the input families
  double ratio = 0.0;
};

// lhs = ( sum over index tuples of |T(x_{i_1},...,x_{i_m})|^s )^{1/s}, where
// the last axis of t is treated as an output axis (measured in ell_v) when
// families cover all but one axis.  rhs = prod_j w_p(family j).  Canonical
// families evaluate via the closed form; an all-canonical scalar-output setup
// short-circuits to the entrywise ell_s norm of t.
inline SummingReport summing_ratio(const Tensor& t, const std::vector<VectorFamily>& families,
                                   double s, double p, double v = 0.0,
                                   const OptimizeOptions& opt = {}) {
  if (!(s >= 1.0)) throw std::invalid_argument("summing_ratio: s must be >= 1");
  if (!(p >= 1.0)) throw std::invalid_argument("summing_ratio: p must be >= 1");
  const int rank = t.rank();
  const int m = static_cast<int>(families.size());
  const bool has_output_axis = (m == rank - 1);
  if (!has_output_axis && m != rank)
    throw std::invalid_argument("summing_ratio: families must cover all axes or all but the last");
  if (has_output_axis && !(v >= 1.0))
    throw std::invalid_argument("summing_ratio: output axis needs v >= 1");

  for (int j = 0; j < m; ++j)
    if (families[static_cast<std::size_t>(j)].kind == VectorFamily::Kind::Explicit &&
        families[static_cast<std::size_t>(j)].dim() != t.dims()[static_cast<std::size_t>(j)])
      throw std::invalid_argument("summing_ratio: family dimension mismatch on axis " +
                                  std::to_string(j + 1));

  SummingReport rep;

  bool all_canonical = true;
  for (const auto& f : families) {
    if (f.kind != VectorFamily::Kind::Canonical) all_canonical = false;
    else if (&f - families.data() < rank &&
             f.n != t.dims()[static_cast<std::size_t>(&f - families.data())])
      throw std::invalid_argument("summing_ratio: canonical family size must match its axis");
  }

  if (all_canonical && !has_output_axis) {
    // T(e_{i_1},...,e_{i_m}) = t[i_1,...,i_m]: the aggregate is the plain
    // entrywise ell_s norm.  This path must stay cheap for large diagonals.
    rep.lhs = entry_lp_norm(t, s);
  } else {
    // Evaluate T on every tuple of family members.
    std::vector<int> tuple_dims;
    for (const auto& f : families) tuple_dims.push_back(f.n);
    const int out_dim = has_output_axis ? t.dims().back() : 1;

    double mx = 0.0;
    std::vector<double> vals;
    std::vector<int> tup(static_cast<std::size_t>(m), 0);
    do {
      // Contract t against the chosen family members on the first m axes.
      std::vector<double> out(static_cast<std::size_t>(out_dim), 0.0);
      std::vector<int> idx(static_cast<std::size_t>(rank), 0);
      std::size_t flat = 0;
      do {
        double w = t[flat];
        if (w != 0.0) {
          for (int j = 0; j < m; ++j) {
            const auto& f = families[static_cast<std::size_t>(j)];
            const int comp = idx[static_cast<std::size_t>(j)];
            if (f.kind == VectorFamily::Kind::Canonical)
              w = (comp == tup[static_cast<std::size_t>(j)]) ? w : 0.0;
            else
              w *= f.vectors[static_cast<std::size_t>(tup[static_cast<std::size_t>(j)])]
                            [static_cast<std::size_t>(comp)];
            if (w == 0.0) break;
          }
          if (w != 0.0)
            out[has_output_axis ? static_cast<std::size_t>(idx.back()) : 0] += w;
        }
        ++flat;
      } while (next_multi_index(idx, t.dims()));

      double norm;
      if (!has_output_axis) {
        norm = std::fabs(out[0]);
      } else if (std::isinf(v)) {
        norm = 0.0;
        for (double x : out) norm = std::max(norm, std::fabs(x));
      } else {
        double omx = 0.0;
        for (double x : out) omx = std::max(omx, std::fabs(x));
        if (omx == 0.0) norm = 0.0;
        else {
          double acc = 0.0;
          for (double x : out) acc += std::pow(std::fabs(x) / omx, v);
          norm = omx * std::pow(acc, 1.0 / v);
        }
      }
      vals.push_back(norm);
      mx = std::max(mx, norm);
    } while (next_multi_index(tup, tuple_dims));

    if (mx == 0.0) rep.lhs = 0.0;
    else {
      double acc = 0.0;
      for (double x : vals) acc += std::pow(x / mx, s);
      rep.lhs = mx * std::pow(acc, 1.0 / s);
    }
  }

  rep.rhs = 1.0;
  for (const auto& f : families) rep.rhs *= weak_norm(f, p, opt);
  rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs
                            : (rep.lhs == 0.0 ? 1.0 : std::numeric_limits<double>::infinity());
  return rep;
}

// ---------------------------------------------------------------------------
// Log-log growth fitting
// ---------------------------------------------------------------------------

struct GrowthFit {
  double slope = 0.0;
  double intercept = 0.0;  // of log(y) against log(x)
};

inline GrowthFit growth_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("growth_fit: size mismatch");
  if (xs.size() < 3) throw std::invalid_argument("growth_fit: need at least 3 points");
  const std::size_t n = xs.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  double lx_min = std::numeric_limits<double>::infinity();
  double lx_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
      throw std::invalid_argument("growth_fit: points must be positive");
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    lx_min = std::min(lx_min, lx);
    lx_max = std::max(lx_max, lx);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (lx_min == lx_max || denom == 0.0)
    throw std::invalid_argument("growth_fit: degenerate abscissae");
  GrowthFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / static_cast<double>(n);
  return fit;
}

// ---------------------------------------------------------------------------
// Diagonal witness experiment for the bilinear summing predicate
// ---------------------------------------------------------------------------

struct WitnessSeries {
  std::vector<double> ns;
  std::vector<double> lhs;  // expect slope 1/s
  std::vector<double> rhs;  // expect slope 2*max(1/q - 1/2, 0)
  GrowthFit lhs_fit;
  GrowthFit rhs_fit;
};

// For each n, take the n x n identity tensor with both axes carrying the
// canonical basis of ell_2^n; aggregate evaluations in ell_s and compare
// against the product of weak ell_q norms.
inline WitnessSeries opti2_witness_experiment(const std::vector<int>& n_grid, double s, double q,
                                              const OptimizeOptions& opt = {}) {
  if (n_grid.size() < 3)
    throw std::invalid_argument("opti2_witness_experiment: need at least 3 grid points");
  WitnessSeries series;
  for (int n : n_grid) {
    if (n < 1) throw std::invalid_argument("opti2_witness_experiment: n must be >= 1");
    Tensor t = Tensor::zeros({n, n});
    for (int i = 0; i < n; ++i)
      t.data()[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
               static_cast<std::size_t>(i)] = 1.0;
    std::vector<VectorFamily> fams = {VectorFamily::canonical(n, ExtRational(2)),
                                      VectorFamily::canonical(n, ExtRational(2))};
    const SummingReport rep = summing_ratio(t, fams, s, q, 0.0, opt);
    series.ns.push_back(static_cast<double>(n));
    series.lhs.push_back(rep.lhs);
    series.rhs.push_back(rep.rhs);
  }
  series.lhs_fit = growth_fit(series.ns, series.lhs);
  series.rhs_fit = growth_fit(series.ns, series.rhs);
  return series;
}

}  // namespace sumlab
