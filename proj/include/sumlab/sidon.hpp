#pragma once

// Construction and measurement of fattened product witnesses on {-1,1}^G:
// index sets built from block projections, the all-ones test polynomial over
// the product of two such sets, and the companion Riesz product, together
// with the ratio and margin diagnostics that decide p-Sidon behaviour.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumlab/rational.hpp"
#include "sumlab/walsh.hpp"

namespace sumlab {

struct LambdaSpec {
  int m = 1;  // ambient index length
  int k = 1;  // block size, 1 <= k <= m
  int N = 1;  // coordinate range {1..N}

  LambdaSpec(int m_, int k_, int N_) : m(m_), k(k_), N(N_) {
    if (m < 1) throw std::invalid_argument("LambdaSpec: m must be >= 1");
    if (k < 1 || k > m) throw std::invalid_argument("LambdaSpec: need 1 <= k <= m");
    if (N < 1) throw std::invalid_argument("LambdaSpec: N must be >= 1");
  }

  // Exponent attached to the family: 2m/(m+k).
  ExtRational p() const { return ExtRational(2 * m) / ExtRational(m + k); }

  // Number of k-element subsets of {1..m}.
  long long blocks() const {
    long long c = 1;
    for (int i = 1; i <= k; ++i) c = c * (m - k + i) / i;
    return c;
  }
};

namespace detail {

inline long long ipow_ll(long long base, int exp) {
  long long out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > (1LL << 56) / std::max<long long>(base, 1))
      throw std::overflow_error("ipow_ll: power too large");
    out *= base;
  }
  return out;
}

inline std::vector<std::vector<int>> k_subsets(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == m - (k - 1 - i)) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

}  // namespace detail

// One generator per (block, projected tuple) pair; the monomial attached to an
// index vector is the product over blocks of the generator selected by the
// projection of the vector onto that block.  Distinct vectors give distinct
// monomials because every coordinate belongs to some block.
inline std::map<std::vector<int>, WalshMonomial> build_lambda(const LambdaSpec& spec, int offset,
                                                              int alphabet_budget = kMaxAlphabet) {
  if (offset < 0) throw std::invalid_argument("build_lambda: offset must be >= 0");
  const long long per_block = detail::ipow_ll(spec.N, spec.k);
  const long long generators = spec.blocks() * per_block;
  if (offset + generators > alphabet_budget)
    throw std::runtime_error("build_lambda: needs " + std::to_string(offset + generators) +
                             " generators, budget is " + std::to_string(alphabet_budget));

  const auto subsets = detail::k_subsets(spec.m, spec.k);
  std::map<std::vector<int>, WalshMonomial> out;
  std::vector<int> j(static_cast<std::size_t>(spec.m), 1);
  while (true) {
    WalshMonomial mono;
    for (std::size_t l = 0; l < subsets.size(); ++l) {
      long long rank = 0;  // base-N digits of the projected tuple
      for (int axis : subsets[l]) rank = rank * spec.N + (j[static_cast<std::size_t>(axis - 1)] - 1);
      mono = mono * WalshMonomial::generator(
                        offset + static_cast<int>(static_cast<long long>(l) * per_block + rank));
    }
    out.emplace(j, mono);
    int i = spec.m - 1;
    while (i >= 0 && j[static_cast<std::size_t>(i)] == spec.N) {
      j[static_cast<std::size_t>(i)] = 1;
      --i;
    }
    if (i < 0) break;
    ++j[static_cast<std::size_t>(i)];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Test polynomial and Riesz product over a product of two families
// ---------------------------------------------------------------------------

struct ProductLayout {
  LambdaSpec spec1;
  LambdaSpec spec2;
  int N = 1;       // shared base
  int range1 = 1;  // coordinate range of group 1: N^{k2}
  int range2 = 1;  // coordinate range of group 2: N^{k1}
  int size1 = 0;   // generators allocated to group 1
  int size2 = 0;
  int alphabet() const { return size1 + size2; }

  ProductLayout(const LambdaSpec& s1, const LambdaSpec& s2, int alphabet_budget = kMaxAlphabet)
      : spec1(s1), spec2(s2) {
    if (s1.N != s2.N) throw std::invalid_argument("ProductLayout: specs must share the base N");
    N = s1.N;
    range1 = static_cast<int>(detail::ipow_ll(N, s2.k));
    range2 = static_cast<int>(detail::ipow_ll(N, s1.k));
    size1 = static_cast<int>(s1.blocks() * detail::ipow_ll(range1, s1.k));
    size2 = static_cast<int>(s2.blocks() * detail::ipow_ll(range2, s2.k));
    if (alphabet() > alphabet_budget)
      throw std::runtime_error("ProductLayout: needs " + std::to_string(alphabet()) +
                               " generators, budget is " + std::to_string(alphabet_budget));
  }

  LambdaSpec scaled1() const { return LambdaSpec(spec1.m, spec1.k, range1); }
  LambdaSpec scaled2() const { return LambdaSpec(spec2.m, spec2.k, range2); }
};

// All-ones polynomial over the product of the two families: one unit term per
// pair of index vectors, range1^{m1} * range2^{m2} terms in total.
inline WalshPolynomial build_fN(const LambdaSpec& spec1, const LambdaSpec& spec2,
                                int alphabet_budget = kMaxAlphabet,
                                long long term_cap = 1LL << 22) {
  const ProductLayout layout(spec1, spec2, alphabet_budget);
  const long long terms = detail::ipow_ll(layout.range1, spec1.m) *
                          detail::ipow_ll(layout.range2, spec2.m);
  if (terms > term_cap)
    throw std::runtime_error("build_fN: " + std::to_string(terms) +
                             " terms exceed the safety cap");

  const auto lam1 = build_lambda(layout.scaled1(), 0, alphabet_budget);
  const auto lam2 = build_lambda(layout.scaled2(), layout.size1, alphabet_budget);
  WalshPolynomial f(layout.alphabet());
  for (const auto& [j1, mono1] : lam1)
    for (const auto& [j2, mono2] : lam2) f.add(mono1 * mono2, 1.0);
  return f;
}

// Companion Riesz product, kept factored: one factor (1 + r_g) per generator
// of the two families.  Factors are distinct single generators, so they
// multiply freely and the expansion has 2^M unit coefficients.
struct RieszProduct {
  std::vector<int> factors;  // generator indices
  int alphabet = 0;
  int factor_count() const { return static_cast<int>(factors.size()); }
};

inline RieszProduct build_riesz(const LambdaSpec& spec1, const LambdaSpec& spec2,
                                int alphabet_budget = kMaxAlphabet) {
  const ProductLayout layout(spec1, spec2, alphabet_budget);
  RieszProduct r;
  r.alphabet = layout.alphabet();
  r.factors.reserve(static_cast<std::size_t>(r.alphabet));
  for (int g = 0; g < r.alphabet; ++g) r.factors.push_back(g);
  return r;
}

inline double riesz_value_at(const RieszProduct& r, std::uint64_t omega) {
  double v = 1.0;
  for (int g : r.factors) v *= 1.0 + WalshMonomial::generator(g).value_at(omega);
  return v;
}

// L^2 norm by Parseval: the expansion has one unit coefficient per subset of
// the factors, so |R|_2 = 2^{M/2}.  A collision among factors would break the
// count, so distinctness is re-verified.
inline double riesz_l2_norm(const RieszProduct& r) {
  std::set<int> uniq(r.factors.begin(), r.factors.end());
  if (uniq.size() != r.factors.size())
    throw std::logic_error("riesz_l2_norm: duplicate factor breaks the free-product count");
  return std::pow(2.0, static_cast<double>(r.factor_count()) / 2.0);
}

// Fourier-side pairing <R, f>: a monomial of f survives iff all its
// generators are factors of R (subsets of the factor set are exactly the
// expansion's characters).  Exact for integer coefficients.
inline double inner_product(const RieszProduct& r, const WalshPolynomial& f) {
  std::uint64_t factor_mask = 0;
  for (int g : r.factors) factor_mask |= WalshMonomial::generator(g).mask;
  double total = 0.0;
  for (const auto& [mask, coeff] : f.terms())
    if ((mask & ~factor_mask) == 0) total += coeff;
  return total;
}

// ---------------------------------------------------------------------------
// Ratio and margin diagnostics
// ---------------------------------------------------------------------------

// |f|_{L^s} / (sqrt(s) * |f-hat|_{2p/(3p-2)}).
inline double sidon_ratio(const WalshPolynomial& f, double s, const ExtRational& p,
                          std::uint64_t exact_cap = std::uint64_t{1} << 24) {
  if (!(s >= 1.0)) throw std::invalid_argument("sidon_ratio: s must be >= 1");
  if (p < ExtRational(1) || !(p < ExtRational(2)))
    throw std::domain_error("sidon_ratio: p must lie in [1,2)");
  const ExtRational e = ExtRational(2) * p / (ExtRational(3) * p - ExtRational(2));
  const double num = lp_norm_on_group_exact(f, s, exact_cap).value;
  const double den = std::sqrt(s) * f.coeff_lp_norm(e.to_double());
  if (den == 0.0) throw std::invalid_argument("sidon_ratio: zero polynomial");
  return num / den;
}

// (1/p - 1/2) (m1 k2 + m2 k1) - k1 k2 / 2, exact.  The witness family is
// p-Sidon only if this is <= 0; a positive margin makes the ratio lower bound
// grow like N^margin.
inline ExtRational sidon_margin(const ExtRational& p, int m1, int k1, int m2, int k2) {
  if (p < ExtRational(1) || !(p < ExtRational(2)))
    throw std::domain_error("sidon_margin: p must lie in [1,2)");
  if (m1 < 1 || m2 < 1 || k1 < 1 || k2 < 1 || k1 > m1 || k2 > m2)
    throw std::invalid_argument("sidon_margin: need 1 <= k_i <= m_i");
  const ExtRational cross(static_cast<long long>(m1) * k2 + static_cast<long long>(m2) * k1);
  return (reciprocal(p) - ExtRational(1, 2)) * cross -
         ExtRational(static_cast<long long>(k1) * k2, 2);
}

struct WitnessOptions {
  std::uint64_t exact_cap = std::uint64_t{1} << 24;
  int mc_samples = 200000;
  int alphabet_budget = kMaxAlphabet;
  std::uint64_t seed = 0x51D0ULL;
};

struct WitnessReport {
  int N = 0;
  double s = 0.0;           // chosen aggregation exponent N^{k1 k2}
  long long inner = 0;      // <R, f>, exact
  int factor_count = 0;     // M
  int alphabet = 0;
  double f_coeff_l2 = 0.0;  // |f-hat|_2
  double riesz_l2 = 0.0;    // 2^{M/2}
  NormEstimate fs_norm;     // |f|_{L^s}, exact when within cap
  double coeff_norm = 0.0;  // |f-hat|_{2p/(3p-2)}
  double ratio = 0.0;       // measured sidon ratio
  double ratio_lower_bound = 0.0;  // (inner / 2^{M/s}) / (sqrt(s) coeff_norm)
  ExtRational margin;       // growth exponent of the lower bound in N
};

inline WitnessReport witness_report(int N, const LambdaSpec& spec1, const LambdaSpec& spec2,
                                    const ExtRational& p, const WitnessOptions& opt = {}) {
  if (spec1.N != N || spec2.N != N)
    throw std::invalid_argument("witness_report: specs must carry the requested base N");
  if (p < ExtRational(1) || !(p < ExtRational(2)))
    throw std::domain_error("witness_report: p must lie in [1,2)");

  WitnessReport rep;
  rep.N = N;
  rep.s = static_cast<double>(detail::ipow_ll(N, spec1.k * spec2.k));
  rep.margin = sidon_margin(p, spec1.m, spec1.k, spec2.m, spec2.k);

  const WalshPolynomial f = build_fN(spec1, spec2, opt.alphabet_budget);
  const RieszProduct r = build_riesz(spec1, spec2, opt.alphabet_budget);
  rep.factor_count = r.factor_count();
  rep.alphabet = r.alphabet;

  const double pairing = inner_product(r, f);
  rep.inner = static_cast<long long>(pairing + 0.5);
  if (std::fabs(pairing - static_cast<double>(rep.inner)) > 1e-9)
    throw std::logic_error("witness_report: non-integer pairing on a unit-coefficient witness");
  const long long expected =
      detail::ipow_ll(N, spec1.m * spec2.k + spec2.m * spec1.k);
  if (rep.inner != expected)
    throw std::logic_error("witness_report: pairing does not match the closed form");

  rep.f_coeff_l2 = f.coeff_l2_norm();
  rep.riesz_l2 = riesz_l2_norm(r);
  const ExtRational e = ExtRational(2) * p / (ExtRational(3) * p - ExtRational(2));
  rep.coeff_norm = f.coeff_lp_norm(e.to_double());

  const int G = f.alphabet();
  if (G < 63 && (std::uint64_t{1} << G) <= opt.exact_cap)
    rep.fs_norm = lp_norm_on_group_exact(f, rep.s, opt.exact_cap);
  else
    rep.fs_norm = lp_norm_on_group_mc(f, rep.s, opt.mc_samples, opt.seed);

  const double denom = std::sqrt(rep.s) * rep.coeff_norm;
  rep.ratio = rep.fs_norm.value / denom;
  const double dual_bound = std::pow(2.0, static_cast<double>(rep.factor_count) / rep.s);
  rep.ratio_lower_bound = (static_cast<double>(rep.inner) / dual_bound) / denom;
  return rep;
}

}  // namespace sumlab
