#pragma once

// Randomized verification campaigns.  A campaign runs N independent trials of
// one check on randomly generated nonnegative tensors.  Every trial derives
// its own sub-seed from the master seed and the trial index, so results are
// reproducible and independent of execution order.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumlab/checks.hpp"
#include "sumlab/rng.hpp"
#include "sumlab/tensor.hpp"

namespace sumlab {

struct TrialRow {
  int trial = 0;
  std::uint64_t seed = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool holds = false;
};

struct CampaignSummary {
  int trials = 0;
  int violations = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
};

struct CampaignResult {
  std::vector<TrialRow> rows;
  CampaignSummary summary;
};

// Per-trial dimension source: either a fixed shape or shapes drawn uniformly
// from [lo, hi] on a fixed number of axes.
struct DimsProvider {
  std::vector<int> fixed;
  int naxes = 0;
  int lo = 0;
  int hi = 0;

  static DimsProvider fixed_dims(std::vector<int> dims) {
    if (dims.empty()) throw std::invalid_argument("DimsProvider: empty dims");
    for (int d : dims)
      if (d < 1) throw std::invalid_argument("DimsProvider: dims must be >= 1");
    DimsProvider p;
    p.fixed = std::move(dims);
    return p;
  }

  static DimsProvider random_dims(int naxes, int lo, int hi) {
    if (naxes < 1 || lo < 1 || hi < lo)
      throw std::invalid_argument("DimsProvider: need naxes >= 1 and 1 <= lo <= hi");
    DimsProvider p;
    p.naxes = naxes;
    p.lo = lo;
    p.hi = hi;
    return p;
  }

  std::vector<int> draw(SplitMix64& rng) const {
    if (!fixed.empty()) return fixed;
    std::vector<int> dims(static_cast<std::size_t>(naxes));
    for (int& d : dims) d = rng.uniform_int(lo, hi);
    return dims;
  }

  int rank() const { return fixed.empty() ? naxes : static_cast<int>(fixed.size()); }
};

namespace detail {

inline NonnegTensor random_nonneg_tensor(const std::vector<int>& dims, SplitMix64& rng) {
  std::size_t total = 1;
  for (int d : dims) total *= static_cast<std::size_t>(d);
  std::vector<double> data(total);
  for (double& x : data) x = rng.uniform_pos();
  return NonnegTensor(dims, std::move(data));
}

inline void finish_summary(CampaignResult& out) {
  out.summary.trials = static_cast<int>(out.rows.size());
  double sum = 0.0;
  for (const TrialRow& row : out.rows) {
    if (!row.holds) ++out.summary.violations;
    out.summary.min_ratio = std::min(out.summary.min_ratio, row.ratio);
    out.summary.max_ratio = std::max(out.summary.max_ratio, row.ratio);
    sum += row.ratio;
  }
  if (!out.rows.empty()) out.summary.mean_ratio = sum / static_cast<double>(out.rows.size());
  else out.summary.min_ratio = 0.0;
}

template <typename CheckFn>
CampaignResult run_campaign(int trials, const DimsProvider& dims, std::uint64_t master_seed,
                            CheckFn&& check) {
  if (trials < 1) throw std::invalid_argument("campaign: trials must be >= 1");
  CampaignResult out;
  out.rows.reserve(static_cast<std::size_t>(trials));
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t seed = derive_seed(master_seed, static_cast<std::uint64_t>(trial));
    SplitMix64 rng(seed);
    NonnegTensor t = random_nonneg_tensor(dims.draw(rng), rng);
    const CheckReport rep = check(t, seed);
    TrialRow row;
    row.trial = trial;
    row.seed = seed;
    row.lhs = rep.lhs;
    row.rhs = rep.rhs;
    row.ratio = rep.ratio;
    row.holds = rep.holds;
    out.rows.push_back(row);
  }
  finish_summary(out);
  return out;
}

}  // namespace detail

inline CampaignResult popa_campaign(int trials, const DimsProvider& dims, const ExtRational& q,
                                    const std::vector<ExtRational>& r, std::uint64_t master_seed,
                                    double tol = 1e-9) {
  if (static_cast<int>(r.size()) != dims.rank())
    throw std::invalid_argument("popa_campaign: need one exponent per axis");
  return detail::run_campaign(trials, dims, master_seed,
                              [&](const NonnegTensor& t, std::uint64_t) {
                                return popa_check(t, q, r, tol);
                              });
}

inline CampaignResult praciano_campaign(int trials, const DimsProvider& dims,
                                        const std::vector<ExtRational>& p,
                                        std::uint64_t master_seed, OptimizeOptions opt = {},
                                        double tol = 1e-6) {
  if (static_cast<int>(p.size()) != dims.rank())
    throw std::invalid_argument("praciano_campaign: need one exponent per axis");
  return detail::run_campaign(trials, dims, master_seed,
                              [&](const NonnegTensor& t, std::uint64_t seed) {
                                OptimizeOptions o = opt;
                                o.seed = seed;
                                return praciano_check(t, p, o, tol);
                              });
}

inline CampaignResult hl_campaign(int trials, const DimsProvider& dims, int m1,
                                  const ExtRational& q, const ExtRational& alpha,
                                  const ExtRational& beta, const ExtRational& p1,
                                  const ExtRational& p2, std::uint64_t master_seed,
                                  OptimizeOptions opt = {}, double tol = 1e-6) {
  if (m1 < 1 || m1 >= dims.rank())
    throw std::invalid_argument("hl_campaign: need 1 <= m1 < rank");
  return detail::run_campaign(trials, dims, master_seed,
                              [&](const NonnegTensor& t, std::uint64_t seed) {
                                OptimizeOptions o = opt;
                                o.seed = seed;
                                return hl_check(t, m1, q, alpha, beta, p1, p2, o, tol);
                              });
}

}  // namespace sumlab
