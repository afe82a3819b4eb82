#pragma once

// Exact calculators for multiple-summability exponents of multilinear maps.
//
// Everything here is evaluated over ExtRational, so the returned exponents
// and every recorded hypothesis are exact.  Failed theorem hypotheses are
// never exceptions: they come back as failed Condition rows with an empty
// result.  Exceptions mark malformed input only (bad partition, p < 1,
// exponent out of the formula's domain of definition).

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumlab/rational.hpp"
#include "sumlab/result.hpp"
#include "sumlab/scenario.hpp"

namespace sumlab {

namespace detail {

inline std::string set_str(const std::set<int>& J) {
  std::string out = "{";
  bool first = true;
  for (int j : J) {
    if (!first) out += ",";
    out += std::to_string(j);
    first = false;
  }
  return out + "}";
}

inline void warn_small_q(const ExtRational& q, ExponentResult& res) {
  if (q < ExtRational(2))
    res.warnings.push_back("q = " + q.str() +
                           " is below 2; no infinite-dimensional Banach space has cotype < 2");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Block gamma exponents
// ---------------------------------------------------------------------------

// Raw value of 1/gamma_{k,J} for block k of the scenario, omitting the blocks
// in J from the correction sum:
//
//   1/gamma_{k,J} = 1/r_k
//     - sum_{j not in J+{k}} (|C_j|/p_j^#) * (1 - q/r_k - q|C_k|/p_k^#)
//                                           / (1 - q/r_j - q|C_j|/p_j^#)
//
// where p^# is the conjugate p* when `dualize` is set (weights measured in
// the dual ball) and p itself otherwise.  The sign of the returned value is
// meaningful; callers decide what a nonpositive 1/gamma means.
//
// k is 1-based, J holds 1-based block indices not containing k.  Requires
// r_j < q for every block j outside J (each quotient's denominator is then
// strictly negative, so the formula is defined); violations throw.
inline ExtRational gamma_block_inverse(const PartitionScenario& sc, int k, const std::set<int>& J,
                                       bool dualize) {
  const int n = sc.n();
  if (k < 1 || k > n) throw std::invalid_argument("gamma_block: block index out of range");
  if (J.count(k)) throw std::invalid_argument("gamma_block: J must not contain k");
  for (int j : J)
    if (j < 1 || j > n) throw std::invalid_argument("gamma_block: J index out of range");

  auto weight_exp = [&](int j0) {  // p_j^# for 0-based j0
    return dualize ? conjugate(sc.p[static_cast<std::size_t>(j0)])
                   : sc.p[static_cast<std::size_t>(j0)];
  };
  for (int j = 1; j <= n; ++j) {
    if (J.count(j)) continue;
    if (sc.r[static_cast<std::size_t>(j - 1)] >= sc.q)
      throw std::domain_error("gamma_block: r[" + std::to_string(j) + "] >= q, formula undefined");
  }

  const auto& q = sc.q;
  const ExtRational one(1);
  const int k0 = k - 1;
  ExtRational numer =
      one - q / sc.r[static_cast<std::size_t>(k0)] -
      ExtRational(sc.block_size(k0)) * q / weight_exp(k0);
  ExtRational corr(0);
  for (int j = 1; j <= n; ++j) {
    if (j == k || J.count(j)) continue;
    const int j0 = j - 1;
    ExtRational w = ExtRational(sc.block_size(j0)) / weight_exp(j0);
    if (w.is_zero()) continue;  // p_j^# infinite: the term vanishes outright
    ExtRational denom = one - q / sc.r[static_cast<std::size_t>(j0)] -
                        ExtRational(sc.block_size(j0)) * q / weight_exp(j0);
    if (denom.is_zero())
      throw std::domain_error("gamma_block: zero quotient denominator at block " +
                              std::to_string(j));
    corr += w * (numer / denom);
  }
  return reciprocal(sc.r[static_cast<std::size_t>(k0)]) - corr;
}

// gamma_{k,J} itself, or nothing when 1/gamma <= 0.
inline std::optional<ExtRational> gamma_block(const PartitionScenario& sc, int k,
                                              const std::set<int>& J, bool dualize) {
  ExtRational inv = gamma_block_inverse(sc, k, J, dualize);
  if (inv.sign() <= 0) return std::nullopt;
  return reciprocal(inv);
}

// ---------------------------------------------------------------------------
// Cotype-range exponent (all r_k < q), with per-block gammas
// ---------------------------------------------------------------------------

inline ExponentResult main1_exponent(const PartitionScenario& sc) {
  ExponentResult res;
  res.theorem = Theorem::Main1;
  detail::warn_small_q(sc.q, res);
  const int n = sc.n();

  res.add(Condition::make("n >= 2", ExtRational(n), ">=", ExtRational(2)));
  for (int k = 1; k <= n; ++k)
    res.add(Condition::make("r[" + std::to_string(k) + "] < q",
                            sc.r[static_cast<std::size_t>(k - 1)], "<", sc.q));
  if (!res.all_conditions_pass()) return res;

  // gamma_k and the pair exponents gamma_{k,l}; all hypotheses are recorded,
  // none short-circuits, so the report is complete either way.
  std::vector<ExtRational> gamma(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    gamma[static_cast<std::size_t>(k - 1)] = reciprocal(gamma_block_inverse(sc, k, {}, true));
    const auto& g = gamma[static_cast<std::size_t>(k - 1)];
    res.add(Condition::make("gamma[" + std::to_string(k) + "] > 0", g, ">", ExtRational(0)));
    res.add(Condition::make("gamma[" + std::to_string(k) + "] < q", g, "<", sc.q));
  }
  for (int k = 1; k <= n; ++k) {
    for (int l = 1; l <= n; ++l) {
      if (l == k) continue;
      ExtRational g = reciprocal(gamma_block_inverse(sc, k, {l}, true));
      const std::string kl = std::to_string(k) + "," + std::to_string(l);
      res.add(Condition::make("gamma[" + kl + "] > 0", g, ">", ExtRational(0)));
      res.add(Condition::make("gamma[" + kl + "] <= q", g, "<=", sc.q));
      res.add(Condition::make("|C" + std::to_string(l) + "|*gamma[" + kl + "] <= p*[" +
                                  std::to_string(l) + "]",
                              ExtRational(sc.block_size(l - 1)) * g, "<=",
                              conjugate(sc.p[static_cast<std::size_t>(l - 1)])));
    }
  }
  if (!res.all_conditions_pass()) return res;

  ExtRational R(0);
  for (const auto& g : gamma) R += g / (sc.q - g);
  res.s = sc.q * R / (ExtRational(1) + R);
  for (int k = 1; k <= n; ++k)
    res.witness["gamma[" + std::to_string(k) + "]"] = gamma[static_cast<std::size_t>(k - 1)].str();
  res.witness["R"] = R.str();
  {
    std::string qs = "(";
    auto qv = sc.qvector();
    for (std::size_t j = 0; j < qv.size(); ++j) qs += (j ? "," : "") + qv[j].str();
    res.witness["q_vector"] = qs + ")";
  }
  return res;
}

// ---------------------------------------------------------------------------
// Exhausted-block search (some gamma beyond the cotype)
// ---------------------------------------------------------------------------

inline ExponentResult main2_exponent(const PartitionScenario& sc) {
  ExponentResult res;
  res.theorem = Theorem::Main2;
  detail::warn_small_q(sc.q, res);
  const int n = sc.n();

  res.add(Condition::make("n >= 2", ExtRational(n), ">=", ExtRational(2)));
  for (int k = 1; k <= n; ++k)
    res.add(Condition::make("r[" + std::to_string(k) + "] < q",
                            sc.r[static_cast<std::size_t>(k - 1)], "<", sc.q));
  if (!res.all_conditions_pass()) return res;
  if (n > 20) throw std::invalid_argument("main2_exponent: subset enumeration capped at n = 20");

  auto record_pair_rows = [&](const std::set<int>& J, std::vector<Condition>& rows) {
    // Hypotheses shared by every k0 for this J: for all k != l outside J,
    // gamma_{k,J+l} in (0,q] and |C_l| gamma_{k,J+l} <= p_l*.
    bool ok = true;
    for (int k = 1; k <= n; ++k) {
      if (J.count(k)) continue;
      for (int l = 1; l <= n; ++l) {
        if (l == k || J.count(l)) continue;
        std::set<int> Jl = J;
        Jl.insert(l);
        ExtRational g = reciprocal(gamma_block_inverse(sc, k, Jl, true));
        const std::string tag =
            std::to_string(k) + "," + detail::set_str(Jl);
        rows.push_back(Condition::make("gamma[" + tag + "] > 0", g, ">", ExtRational(0)));
        ok &= rows.back().pass;
        rows.push_back(Condition::make("gamma[" + tag + "] <= q", g, "<=", sc.q));
        ok &= rows.back().pass;
        rows.push_back(Condition::make(
            "|C" + std::to_string(l) + "|*gamma[" + tag + "] <= p*[" + std::to_string(l) + "]",
            ExtRational(sc.block_size(l - 1)) * g, "<=",
            conjugate(sc.p[static_cast<std::size_t>(l - 1)])));
        ok &= rows.back().pass;
      }
    }
    return ok;
  };

  // Exhaustive search over proper subsets J (by size, then lexicographic)
  // and anchors k0 outside J; minimal s wins, first witness kept on ties.
  std::optional<ExtRational> best_s;
  std::set<int> best_J;
  int best_k0 = 0;
  ExtRational best_gamma;
  std::vector<Condition> best_rows;
  long valid_pairs = 0;

  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
  for (int size = 0; size < n; ++size) {
    // lexicographic combinations of `size` block indices
    std::vector<int> c(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) c[static_cast<std::size_t>(i)] = i;
    while (true) {
      std::set<int> J;
      for (int i = 0; i < size; ++i) J.insert(idx[static_cast<std::size_t>(c[static_cast<std::size_t>(i)])]);

      std::vector<Condition> rows;
      if (record_pair_rows(J, rows)) {
        for (int k0 = 1; k0 <= n; ++k0) {
          if (J.count(k0)) continue;
          ExtRational g0 = reciprocal(gamma_block_inverse(sc, k0, J, true));
          if (!(g0 >= sc.q)) continue;  // gamma_{k0,J} >= q (infinity included)
          ExtRational inv_s = reciprocal(g0);
          for (int j : J)
            inv_s -= ExtRational(sc.block_size(j - 1)) /
                     conjugate(sc.p[static_cast<std::size_t>(j - 1)]);
          if (inv_s.sign() <= 0) continue;
          ExtRational s = reciprocal(inv_s);
          ++valid_pairs;
          if (!best_s || s < *best_s) {
            best_s = s;
            best_J = J;
            best_k0 = k0;
            best_gamma = g0;
            best_rows = rows;
            best_rows.push_back(Condition::make(
                "gamma[" + std::to_string(k0) + "," + detail::set_str(J) + "] >= q", g0, ">=",
                sc.q));
            best_rows.push_back(Condition::make("1/s > 0", inv_s, ">", ExtRational(0)));
          }
        }
      }

      if (size == 0) break;
      int i = size - 1;
      while (i >= 0 && c[static_cast<std::size_t>(i)] == i + n - size) --i;
      if (i < 0) break;
      ++c[static_cast<std::size_t>(i)];
      for (int j2 = i + 1; j2 < size; ++j2)
        c[static_cast<std::size_t>(j2)] = c[static_cast<std::size_t>(j2 - 1)] + 1;
    }
  }

  if (!best_s) {
    res.add(Condition::make("exists valid (J,k0)", ExtRational(valid_pairs), ">", ExtRational(0)));
    return res;
  }
  for (auto& c : best_rows) res.add(std::move(c));
  res.s = best_s;
  res.witness["J"] = detail::set_str(best_J);
  res.witness["k0"] = std::to_string(best_k0);
  res.witness["gamma[k0,J]"] = best_gamma.str();
  return res;
}

// ---------------------------------------------------------------------------
// Beyond-cotype anchor (some r_k >= q)
// ---------------------------------------------------------------------------

inline ExponentResult main3_exponent(const PartitionScenario& sc) {
  ExponentResult res;
  res.theorem = Theorem::Main3;
  detail::warn_small_q(sc.q, res);
  const int n = sc.n();
  res.add(Condition::make("n >= 2", ExtRational(n), ">=", ExtRational(2)));
  if (!res.all_conditions_pass()) return res;

  std::optional<ExtRational> best_s;
  int best_k = 0;
  ExtRational best_inv;
  std::vector<Condition> diag;
  for (int k = 1; k <= n; ++k) {
    Condition anchor = Condition::make("r[" + std::to_string(k) + "] >= q",
                                       sc.r[static_cast<std::size_t>(k - 1)], ">=", sc.q);
    if (!anchor.pass) {
      diag.push_back(std::move(anchor));
      continue;
    }
    ExtRational inv_s = reciprocal(sc.r[static_cast<std::size_t>(k - 1)]);
    for (int j = 1; j <= n; ++j) {
      if (j == k) continue;
      inv_s -= ExtRational(sc.block_size(j - 1)) /
               conjugate(sc.p[static_cast<std::size_t>(j - 1)]);
    }
    Condition pos = Condition::make("1/s(k=" + std::to_string(k) + ") > 0", inv_s, ">",
                                    ExtRational(0));
    if (pos.pass) {
      ExtRational s = reciprocal(inv_s);
      if (!best_s || s < *best_s) {
        best_s = s;
        best_k = k;
        best_inv = inv_s;
      }
    }
    diag.push_back(std::move(anchor));
    diag.push_back(std::move(pos));
  }

  if (!best_s) {
    for (auto& c : diag) res.add(std::move(c));
    return res;
  }
  res.add(Condition::make("r[" + std::to_string(best_k) + "] >= q",
                          sc.r[static_cast<std::size_t>(best_k - 1)], ">=", sc.q));
  res.add(Condition::make("1/s > 0", best_inv, ">", ExtRational(0)));
  res.s = best_s;
  res.witness["k"] = std::to_string(best_k);
  return res;
}

// ---------------------------------------------------------------------------
// Dispatcher: minimum of the three calculators (ties prefer MAIN1 < MAIN2 < MAIN3)
// ---------------------------------------------------------------------------

inline ExponentResult best_exponent(const PartitionScenario& sc) {
  ExponentResult a = main1_exponent(sc);
  ExponentResult b = main2_exponent(sc);
  ExponentResult c = main3_exponent(sc);
  const ExponentResult* best = nullptr;
  for (const ExponentResult* r : {&a, &b, &c})
    if (r->ok() && (!best || *r->s < *best->s)) best = r;
  if (best) return *best;

  ExponentResult none;
  none.theorem = Theorem::None;
  none.warnings = a.warnings;
  auto merge = [&none](const char* prefix, ExponentResult& r) {
    for (auto& cond : r.conditions) {
      cond.name = std::string(prefix) + cond.name;
      none.conditions.push_back(std::move(cond));
    }
  };
  merge("main1: ", a);
  merge("main2: ", b);
  merge("main3: ", c);
  return none;
}

// ---------------------------------------------------------------------------
// Equal-shift corollary (singleton blocks, common theta = 1/r_k - 1/p_k <= 0)
// ---------------------------------------------------------------------------

inline ExponentResult cor_main_exponent(int m, const ExtRational& q,
                                        const std::vector<ExtRational>& r,
                                        const std::vector<ExtRational>& p) {
  if (m < 2) throw std::invalid_argument("cor_main_exponent: m must be >= 2");
  if (r.size() != static_cast<std::size_t>(m) || p.size() != static_cast<std::size_t>(m))
    throw std::invalid_argument("cor_main_exponent: r and p must have length m");
  if (q.is_infinite() || q < ExtRational(1))
    throw std::invalid_argument("cor_main_exponent: q must be finite and >= 1");
  for (const auto& x : r)
    if (x.is_infinite() || x < ExtRational(1))
      throw std::invalid_argument("cor_main_exponent: r entries must be finite and >= 1");
  for (const auto& x : p)
    if (x < ExtRational(1)) throw std::invalid_argument("cor_main_exponent: p entries must be >= 1");

  ExtRational theta = reciprocal(r[0]) - reciprocal(p[0]);
  for (int k = 1; k < m; ++k) {
    ExtRational tk = reciprocal(r[static_cast<std::size_t>(k)]) -
                     reciprocal(p[static_cast<std::size_t>(k)]);
    if (!(tk == theta))
      throw std::domain_error("cor_main_exponent: 1/r_k - 1/p_k is not constant across k");
  }
  if (theta.sign() > 0)
    throw std::domain_error("cor_main_exponent: common theta must be <= 0");

  ExponentResult res;
  res.theorem = Theorem::CorMain;
  detail::warn_small_q(q, res);
  if (theta.is_zero())
    res.warnings.push_back("theta = 0: boundary case r_k = p_k");
  res.add(Condition::make("theta <= 0", theta, "<=", ExtRational(0)));

  ExtRational inv_gamma = ExtRational(1) + theta;
  for (const auto& pk : p) inv_gamma -= reciprocal(conjugate(pk));
  res.add(Condition::make("1/gamma > 0", inv_gamma, ">", ExtRational(0)));
  res.witness["theta"] = theta.str();
  if (inv_gamma.sign() <= 0) return res;

  ExtRational gamma = reciprocal(inv_gamma);
  res.witness["gamma"] = gamma.str();
  if (gamma < q) {
    res.witness["case"] = "gamma in (0,q)";
    ExtRational inv_s =
        ExtRational(m - 1) / (ExtRational(m) * q) + reciprocal(gamma * ExtRational(m));
    res.s = reciprocal(inv_s);
  } else {
    res.witness["case"] = "gamma >= q";
    res.s = gamma;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Separately-summing entry point, with the two-route consistency check
// ---------------------------------------------------------------------------

inline ExponentResult intro_exponent(int m, const ExtRational& q, const ExtRational& r,
                                     const ExtRational& p, const ExtRational& t) {
  if (m < 1) throw std::invalid_argument("intro_exponent: m must be >= 1");
  if (q.is_infinite() || q < ExtRational(1))
    throw std::invalid_argument("intro_exponent: q must be finite and >= 1");
  if (p < ExtRational(1) || p.is_infinite())
    throw std::invalid_argument("intro_exponent: p must be finite and >= 1");
  if (t < p) throw std::domain_error("intro_exponent: t must be >= p");
  if (t.is_infinite()) throw std::invalid_argument("intro_exponent: t must be finite");
  if (r < p) throw std::domain_error("intro_exponent: r must be >= p (1/r - 1/p <= 0)");
  if (r.is_infinite()) throw std::invalid_argument("intro_exponent: r must be finite");

  ExponentResult res;
  res.theorem = Theorem::Intro;
  detail::warn_small_q(q, res);

  ExtRational delta = reciprocal(r) + reciprocal(conjugate(p)) -
                      ExtRational(m) * reciprocal(conjugate(t));
  res.add(Condition::make("Delta > 0", delta, ">", ExtRational(0)));
  res.witness["Delta"] = delta.str();
  if (delta.sign() > 0) {
    if (delta > reciprocal(q)) {
      res.witness["case"] = "Delta > 1/q";
      ExtRational inv_s = ExtRational(m - 1) / (ExtRational(m) * q) +
                          reciprocal(ExtRational(m) * r) +
                          reciprocal(conjugate(p)) / ExtRational(m) -
                          reciprocal(conjugate(t));
      res.s = reciprocal(inv_s);
    } else {
      res.witness["case"] = "0 < Delta <= 1/q";
      res.s = reciprocal(delta);
    }
  }

  // Independent route: view the map as separately (rho,t)-summing with
  // 1/rho = 1/r + 1/t - 1/p, then apply the equal-shift corollary with
  // r_k = rho, p_k = t.  Both routes must agree exactly; a mismatch would be
  // an implementation bug, not a data condition.
  ExtRational inv_rho = reciprocal(r) + reciprocal(t) - reciprocal(p);
  if (inv_rho.sign() > 0 && m >= 2) {
    ExtRational rho = reciprocal(inv_rho);
    res.witness["rho"] = rho.str();
    ExponentResult via =
        cor_main_exponent(m, q, std::vector<ExtRational>(static_cast<std::size_t>(m), rho),
                          std::vector<ExtRational>(static_cast<std::size_t>(m), t));
    if (via.ok() != res.ok() || (via.ok() && !(*via.s == *res.s)))
      throw std::logic_error("intro_exponent: direct and reduction routes disagree");
  }
  return res;
}

// ---------------------------------------------------------------------------
// Inclusion-style exponent lift
// ---------------------------------------------------------------------------

inline ExponentResult inclusion_exponent(const ExtRational& r, const QVector& p,
                                         const QVector& qv) {
  if (p.size() != qv.size() || p.empty())
    throw std::invalid_argument("inclusion_exponent: p and q must be same nonempty length");
  if (r.is_infinite() || r < ExtRational(1))
    throw std::invalid_argument("inclusion_exponent: r must be finite and >= 1");
  for (const auto& x : p)
    if (x < ExtRational(1)) throw std::invalid_argument("inclusion_exponent: p entries must be >= 1");
  for (const auto& x : qv)
    if (x < ExtRational(1)) throw std::invalid_argument("inclusion_exponent: q entries must be >= 1");

  ExponentResult res;
  res.theorem = Theorem::Inclusion;
  for (std::size_t k = 0; k < p.size(); ++k)
    res.add(Condition::make("q[" + std::to_string(k + 1) + "] >= p[" + std::to_string(k + 1) + "]",
                            qv[k], ">=", p[k]));
  ExtRational e = reciprocal(r);
  for (const auto& x : p) e -= reciprocal(x);
  for (const auto& x : qv) e += reciprocal(x);
  res.add(Condition::make("1/r - sum(1/p) + sum(1/q) > 0", e, ">", ExtRational(0)));
  if (!res.all_conditions_pass()) return res;
  res.s = reciprocal(e);
  return res;
}

// How the inclusion lift stacks up against the direct square-function bound
// when starting from the (2m/(m+1),1) baseline: for a target s the inclusion
// route yields coordinate exponent t = 2m^2 s / (2m + (2m^2-m-1)s), to be
// compared against t = s.  Smaller t is the stronger statement.
struct ComparePG {
  ExtRational t_inclusion;
  ExtRational t_square_function;
  bool inclusion_better = false;
};

inline ComparePG compare_perez_garcia(int m, const ExtRational& s) {
  if (m < 2) throw std::invalid_argument("compare_perez_garcia: m must be >= 2");
  ExtRational lo = ExtRational(2 * m) / ExtRational(m + 1);
  if (!(s > lo && s <= ExtRational(2)))
    throw std::domain_error("compare_perez_garcia: s must lie in (2m/(m+1), 2]");
  ExtRational M(m);
  ComparePG out;
  out.t_inclusion =
      ExtRational(2) * M * M * s / (ExtRational(2) * M + (ExtRational(2) * M * M - M - 1) * s);
  out.t_square_function = s;
  out.inclusion_better = out.t_inclusion < out.t_square_function;
  return out;
}

// ---------------------------------------------------------------------------
// Hardy-Littlewood-type exponent for bounded forms (cotype-2 specialization)
// ---------------------------------------------------------------------------

inline ExponentResult hardy_littlewood_exponent(const QVector& p) {
  if (p.empty()) throw std::invalid_argument("hardy_littlewood_exponent: empty p");
  for (const auto& x : p)
    if (x < ExtRational(1))
      throw std::invalid_argument("hardy_littlewood_exponent: p entries must be >= 1");
  const int m = static_cast<int>(p.size());
  ExponentResult res;
  res.theorem = Theorem::HardyLittlewood;
  ExtRational inv_gamma(1);
  for (const auto& pk : p) inv_gamma -= reciprocal(conjugate(pk));
  res.add(Condition::make("1/gamma > 0", inv_gamma, ">", ExtRational(0)));
  if (inv_gamma.sign() <= 0) return res;
  ExtRational gamma = reciprocal(inv_gamma);
  res.witness["gamma"] = gamma.str();
  if (gamma < ExtRational(2)) {
    res.witness["case"] = "gamma in (0,2)";
    res.s = reciprocal(ExtRational(m - 1) / ExtRational(2 * m) +
                       reciprocal(gamma * ExtRational(m)));
  } else {
    res.witness["case"] = "gamma >= 2";
    res.s = gamma;
  }
  return res;
}

// ell_rho index of the diagonal restriction: 1/rho = 1 - sum 1/p_j, when
// positive.  INFINITY entries are allowed and contribute nothing.
inline std::optional<ExtRational> praciano_rho(const QVector& p) {
  if (p.empty()) throw std::invalid_argument("praciano_rho: empty p");
  for (const auto& x : p)
    if (x < ExtRational(1)) throw std::invalid_argument("praciano_rho: p entries must be >= 1");
  ExtRational inv(1);
  for (const auto& pj : p) inv -= reciprocal(pj);
  if (inv.sign() <= 0) return std::nullopt;
  return reciprocal(inv);
}

// ---------------------------------------------------------------------------
// Mixed-norm interpolation exponents (the R and Q of the averaging lemma)
// ---------------------------------------------------------------------------

struct PopaExponents {
  ExtRational R;
  ExtRational Q;
};

inline PopaExponents popa_exponents(const ExtRational& q, const std::vector<ExtRational>& r) {
  if (q.is_infinite() || q.sign() <= 0)
    throw std::invalid_argument("popa_exponents: q must be finite and > 0");
  if (r.empty()) throw std::invalid_argument("popa_exponents: empty r");
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (r[j].sign() <= 0 || !(r[j] < q))
      throw std::domain_error("popa_exponents: need 0 < r[" + std::to_string(j + 1) + "] < q");
  }
  PopaExponents out;
  out.R = ExtRational(0);
  for (const auto& rj : r) out.R += rj / (q - rj);
  out.Q = q * out.R / (ExtRational(1) + out.R);
  return out;
}

// ---------------------------------------------------------------------------
// Two-sided weighted-block gamma (the 1/gamma recursion step)
// ---------------------------------------------------------------------------

// 1/gamma = 1/alpha - (m1/p1) * (1 - q/alpha - m2*q/p2) / (1 - q/beta - m1*q/p1).
// A vanishing weight m1/p1 (p1 = INF) kills the correction term before the
// quotient is formed, matching the limit reading of the formula.
inline ExtRational hl_gamma_inverse(int m1, int m2, const ExtRational& p1, const ExtRational& p2,
                                    const ExtRational& q, const ExtRational& alpha,
                                    const ExtRational& beta) {
  if (m1 < 1 || m2 < 1) throw std::invalid_argument("hl_gamma: m1, m2 must be >= 1");
  if (p1 < ExtRational(1) || p2 < ExtRational(1))
    throw std::invalid_argument("hl_gamma: p1, p2 must be >= 1");
  if (q.is_infinite() || q < ExtRational(1))
    throw std::invalid_argument("hl_gamma: q must be finite and >= 1");
  if (!(alpha.sign() > 0 && alpha <= q) || !(beta.sign() > 0 && beta <= q))
    throw std::domain_error("hl_gamma: alpha and beta must lie in (0,q]");
  ExtRational w = ExtRational(m1) / p1;
  if (w.is_zero()) return reciprocal(alpha);
  ExtRational numer = ExtRational(1) - q / alpha - ExtRational(m2) * q / p2;
  ExtRational denom = ExtRational(1) - q / beta - ExtRational(m1) * q / p1;
  if (denom.is_zero()) throw std::domain_error("hl_gamma: zero denominator in correction quotient");
  return reciprocal(alpha) - w * (numer / denom);
}

struct HlGammaResult {
  std::optional<ExtRational> gamma;
  ExtRational inv_gamma;
  std::vector<Condition> conditions;
};

inline HlGammaResult hl_gamma(int m1, int m2, const ExtRational& p1, const ExtRational& p2,
                              const ExtRational& q, const ExtRational& alpha,
                              const ExtRational& beta) {
  HlGammaResult out;
  out.inv_gamma = hl_gamma_inverse(m1, m2, p1, p2, q, alpha, beta);
  ExtRational g = reciprocal(out.inv_gamma);
  out.conditions.push_back(Condition::make("1/gamma > 0", out.inv_gamma, ">", ExtRational(0)));
  out.conditions.push_back(Condition::make("m1*alpha <= p1", ExtRational(m1) * alpha, "<=", p1));
  out.conditions.push_back(Condition::make("m2*beta <= p2", ExtRational(m2) * beta, "<=", p2));
  for (const auto& c : out.conditions)
    if (!c.pass) return out;
  out.gamma = g;
  return out;
}

// ---------------------------------------------------------------------------
// One-sided exhaust with coordinate exponents (dual weights on C-bar)
// ---------------------------------------------------------------------------

inline ExponentResult displike_exponent(const ExtRational& r, const QVector& qv,
                                        const std::set<int>& cbar,
                                        const std::optional<ExtRational>& cotype = std::nullopt) {
  if (qv.empty()) throw std::invalid_argument("displike_exponent: empty q vector");
  if (r < ExtRational(1) || r.is_infinite())
    throw std::invalid_argument("displike_exponent: r must be finite and >= 1");
  for (const auto& x : qv)
    if (x < ExtRational(1)) throw std::invalid_argument("displike_exponent: q entries must be >= 1");
  const int m = static_cast<int>(qv.size());
  for (int j : cbar)
    if (j < 1 || j > m) throw std::invalid_argument("displike_exponent: C-bar index out of range");

  ExponentResult res;
  res.theorem = Theorem::Displike;
  ExtRational inv = reciprocal(r);
  for (int j : cbar) inv -= reciprocal(conjugate(qv[static_cast<std::size_t>(j - 1)]));
  res.add(Condition::make("1/s > 0", inv, ">", ExtRational(0)));
  if (inv.sign() <= 0) return res;
  res.s = reciprocal(inv);

  // Validity flags from the underlying statement, reported but not enforced:
  // the exponent is returned either way, with the flags on record.
  if (cotype) {
    Condition f = Condition::make("flag: r >= q(cotype)", r, ">=", *cotype);
    res.witness["flag_r_ge_cotype"] = f.pass ? "true" : "false";
    res.add(std::move(f));
  }
  ExtRational qmax = qv[0];
  for (const auto& x : qv) qmax = std::max(qmax, x);
  Condition f2 = Condition::make("flag: s >= max q[k]", *res.s, ">=", qmax);
  res.witness["flag_s_ge_qk"] = f2.pass ? "true" : "false";
  res.add(std::move(f2));
  return res;
}

// ---------------------------------------------------------------------------
// Product interpolation exponent for p-Sidon / p-Rider sets
// ---------------------------------------------------------------------------

inline ExtRational sidon_product_exponent(const std::vector<ExtRational>& p) {
  if (p.empty()) throw std::invalid_argument("sidon_product_exponent: empty p");
  for (const auto& pk : p)
    if (pk < ExtRational(1) || !(pk < ExtRational(2)))
      throw std::domain_error("sidon_product_exponent: entries must lie in [1,2)");
  ExtRational R(0);
  for (const auto& pk : p) R += pk / (ExtRational(2) - pk);
  return reciprocal(ExtRational(1, 2) + reciprocal(ExtRational(2) * R));
}

inline ExtRational rider_product_exponent(const std::vector<ExtRational>& p) {
  return sidon_product_exponent(p);
}

// ---------------------------------------------------------------------------
// Optimal exponents for diagonal-type multiplication operators
// ---------------------------------------------------------------------------

inline ExponentResult opti1_optimal_s(int m, const ExtRational& r, const ExtRational& p) {
  if (m < 1) throw std::invalid_argument("opti1_optimal_s: m must be >= 1");
  if (p < ExtRational(1) || p > ExtRational(2))
    throw std::domain_error("opti1_optimal_s: p must lie in [1,2]");
  if (r < p) throw std::domain_error("opti1_optimal_s: r must be >= p");
  if (r.is_infinite()) throw std::invalid_argument("opti1_optimal_s: r must be finite");
  if (reciprocal(r) < reciprocal(p) - ExtRational(1, 2))
    throw std::domain_error("opti1_optimal_s: need 1/r >= 1/p - 1/2");

  ExponentResult res;
  res.theorem = Theorem::Opti1;
  ExtRational invpstar = reciprocal(conjugate(p));
  ExtRational D = reciprocal(r) - ExtRational(m - 1) * invpstar;
  res.add(Condition::make("1/r - (m-1)/p* > 0", D, ">", ExtRational(0)));
  res.witness["D"] = D.str();
  if (D.sign() <= 0) return res;
  if (D > ExtRational(1, 2)) {
    res.witness["case"] = "CASE1";
    ExtRational inv_s = ExtRational(m - 1) / ExtRational(2 * m) +
                        reciprocal(ExtRational(m) * r) -
                        ExtRational(m - 1) * invpstar / ExtRational(m);
    res.s = reciprocal(inv_s);
  } else {
    res.witness["case"] = "CASE2";
    res.s = reciprocal(D);
  }
  return res;
}

// The proof-side exponent rho(u,p,m) for the same operator, parametrized by
// the host space exponent u with 1/r = 1/u + 1/p - 1.  Exposed so tests can
// pin opti1_optimal_s against it.
inline std::optional<ExtRational> opti1_rho(int m, const ExtRational& u, const ExtRational& p) {
  if (m < 1) throw std::invalid_argument("opti1_rho: m must be >= 1");
  if (u < ExtRational(1) || u.is_infinite())
    throw std::invalid_argument("opti1_rho: u must be finite and >= 1");
  if (p < ExtRational(1) || p > ExtRational(2))
    throw std::domain_error("opti1_rho: p must lie in [1,2]");
  ExtRational invu = reciprocal(u);
  ExtRational mp = ExtRational(m) * reciprocal(conjugate(p));
  ExtRational half(1, 2);
  if (mp < invu - half)
    return reciprocal(half + (invu - half - mp) / ExtRational(m));
  if (mp >= invu - half && mp < invu) return reciprocal(invu - mp);
  return std::nullopt;
}

struct Opti2Result {
  bool holds = false;
  ExtRational lhs;  // 1/s - 2/q
  ExtRational rhs;  // 1/r - 2/p
};

// Feasibility predicate for (s,(q,2))-type summability of the diagonal
// multiplication witness: holds iff 1/s - 2/q <= 1/r - 2/p.
inline Opti2Result opti2_predicate(const ExtRational& r, const ExtRational& p,
                                   const ExtRational& s, const ExtRational& q) {
  if (r < ExtRational(2) || r.is_infinite())
    throw std::domain_error("opti2_predicate: r must be finite and >= 2");
  if (!(p == ExtRational(2) * r / (r + ExtRational(1))))
    throw std::domain_error("opti2_predicate: p must equal 2r/(r+1)");
  if (s < ExtRational(2)) throw std::domain_error("opti2_predicate: s must be >= 2");
  if (q < p) throw std::domain_error("opti2_predicate: q must be >= p");
  Opti2Result out;
  out.lhs = reciprocal(s) - ExtRational(2) / q;
  out.rhs = reciprocal(r) - ExtRational(2) / p;
  out.holds = out.lhs <= out.rhs;
  return out;
}

}  // namespace sumlab
