#pragma once

// Walsh polynomials on the group {-1,1}^G.  Generators are Rademacher
// coordinates r_0..r_{G-1}; a character is the product of the generators in a
// subset, stored as a 64-bit mask, so character multiplication is XOR and the
// alphabet is capped at 64 generators.

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumlab/rng.hpp"

namespace sumlab {

inline constexpr int kMaxAlphabet = 64;

struct WalshMonomial {
  std::uint64_t mask = 0;  // bit g set <=> generator r_g participates

  static WalshMonomial one() { return {}; }

  static WalshMonomial generator(int g) {
    if (g < 0 || g >= kMaxAlphabet)
      throw std::invalid_argument("WalshMonomial: generator index out of range");
    return {std::uint64_t{1} << g};
  }

  int degree() const { return std::popcount(mask); }

  // Character value at the point whose "-1" coordinates are set in omega.
  double value_at(std::uint64_t omega) const {
    return (std::popcount(mask & omega) & 1) ? -1.0 : 1.0;
  }

  friend WalshMonomial operator*(WalshMonomial a, WalshMonomial b) { return {a.mask ^ b.mask}; }
  friend bool operator==(WalshMonomial a, WalshMonomial b) { return a.mask == b.mask; }
  friend bool operator<(WalshMonomial a, WalshMonomial b) { return a.mask < b.mask; }
};

class WalshPolynomial {
 public:
  WalshPolynomial() = default;

  explicit WalshPolynomial(int alphabet) : alphabet_(alphabet) {
    if (alphabet < 0 || alphabet > kMaxAlphabet)
      throw std::invalid_argument("WalshPolynomial: alphabet must lie in [0, 64]");
  }

  int alphabet() const { return alphabet_; }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<std::uint64_t, double>& terms() const { return terms_; }

  void add(WalshMonomial mono, double coeff) {
    if (alphabet_ < kMaxAlphabet && (mono.mask >> alphabet_) != 0)
      throw std::invalid_argument("WalshPolynomial: monomial uses generators beyond the alphabet");
    double& slot = terms_[mono.mask];
    slot += coeff;
    if (slot == 0.0) terms_.erase(mono.mask);
  }

  double coefficient(WalshMonomial mono) const {
    auto it = terms_.find(mono.mask);
    return it == terms_.end() ? 0.0 : it->second;
  }

  double evaluate(std::uint64_t omega) const {
    double s = 0.0;
    for (const auto& [mask, coeff] : terms_)
      s += (std::popcount(mask & omega) & 1) ? -coeff : coeff;
    return s;
  }

  double coeff_l2_norm() const { return coeff_lp_norm(2.0); }

  double coeff_lp_norm(double e) const {
    if (!(e > 0.0)) throw std::invalid_argument("coeff_lp_norm: exponent must be > 0");
    double mx = 0.0;
    for (const auto& [mask, coeff] : terms_) mx = std::max(mx, std::fabs(coeff));
    if (mx == 0.0) return 0.0;
    double acc = 0.0;
    for (const auto& [mask, coeff] : terms_) acc += std::pow(std::fabs(coeff) / mx, e);
    return mx * std::pow(acc, 1.0 / e);
  }

 private:
  int alphabet_ = kMaxAlphabet;
  std::map<std::uint64_t, double> terms_;
};

struct NormEstimate {
  double value = 0.0;
  double stderr_ = 0.0;  // zero for exact computations
  bool exact = true;
};

// Exact L^s norm over {-1,1}^G by full enumeration in Gray-code order: each
// step flips a single generator, so only the terms containing that generator
// change sign.  Accumulation is max-rescaled, the log-sum-exp trick in scaled
// form, so huge s cannot overflow.
inline NormEstimate lp_norm_on_group_exact(const WalshPolynomial& f, double s,
                                           std::uint64_t point_cap = std::uint64_t{1} << 24) {
  if (!(s >= 1.0)) throw std::invalid_argument("lp_norm_on_group: s must be >= 1");
  const int G = f.alphabet();
  if (G >= 63 || (std::uint64_t{1} << G) > point_cap)
    throw std::runtime_error("lp_norm_on_group: 2^" + std::to_string(G) +
                             " points exceed the exact cap; use Monte Carlo");
  const std::uint64_t total = std::uint64_t{1} << G;

  // Flatten terms and bucket them by generator for incremental updates.
  std::vector<double> signed_coeff;
  std::vector<std::vector<std::size_t>> bucket(static_cast<std::size_t>(G));
  double cur = 0.0;
  {
    std::size_t i = 0;
    for (const auto& [mask, coeff] : f.terms()) {
      signed_coeff.push_back(coeff);
      cur += coeff;
      for (int g = 0; g < G; ++g)
        if (mask & (std::uint64_t{1} << g)) bucket[static_cast<std::size_t>(g)].push_back(i);
      ++i;
    }
  }

  double scale = 0.0;  // running max of |f|
  double acc = 0.0;    // sum of (|f|/scale)^s
  auto absorb = [&](double v) {
    const double a = std::fabs(v);
    if (a == 0.0) return;
    if (a > scale) {
      acc = scale == 0.0 ? 0.0 : acc * std::pow(scale / a, s);
      scale = a;
      acc += 1.0;
    } else {
      acc += std::pow(a / scale, s);
    }
  };

  absorb(cur);
  for (std::uint64_t step = 1; step < total; ++step) {
    const int g = std::countr_zero(step);  // Gray code: flip the lowest set bit's generator
    for (std::size_t i : bucket[static_cast<std::size_t>(g)]) {
      cur -= 2.0 * signed_coeff[i];
      signed_coeff[i] = -signed_coeff[i];
    }
    absorb(cur);
  }

  NormEstimate est;
  est.exact = true;
  est.value = scale == 0.0
                  ? 0.0
                  : scale * std::pow(acc / static_cast<double>(total), 1.0 / s);
  return est;
}

// Monte Carlo L^s estimate: uniform points, delta-method standard error
// propagated through the 1/s power.
inline NormEstimate lp_norm_on_group_mc(const WalshPolynomial& f, double s, int samples,
                                        std::uint64_t seed) {
  if (!(s >= 1.0)) throw std::invalid_argument("lp_norm_on_group: s must be >= 1");
  if (samples < 2) throw std::invalid_argument("lp_norm_on_group: need at least 2 samples");
  SplitMix64 rng(derive_seed(seed, 0xECCULL));
  std::vector<double> vals(static_cast<std::size_t>(samples));
  double scale = 0.0;
  const std::uint64_t mask =
      f.alphabet() >= kMaxAlphabet ? ~std::uint64_t{0}
                                   : ((std::uint64_t{1} << f.alphabet()) - 1);
  for (double& v : vals) {
    v = std::fabs(f.evaluate(rng.next() & mask));
    scale = std::max(scale, v);
  }
  NormEstimate est;
  est.exact = false;
  if (scale == 0.0) return est;

  double mean = 0.0;
  for (double v : vals) mean += std::pow(v / scale, s);
  mean /= static_cast<double>(samples);
  double var = 0.0;
  for (double v : vals) {
    const double d = std::pow(v / scale, s) - mean;
    var += d * d;
  }
  var /= static_cast<double>(samples - 1);
  const double stderr_mean = std::sqrt(var / static_cast<double>(samples));

  est.value = scale * std::pow(mean, 1.0 / s);
  if (mean > 0.0) est.stderr_ = est.value * stderr_mean / (s * mean);
  return est;
}

}  // namespace sumlab
