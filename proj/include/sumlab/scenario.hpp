#pragma once

// Problem description for the block-summability exponent calculators: m
// coordinates split into n disjoint blocks C_1..C_n, a cotype exponent q,
// and per-block exponents r_k (summability) and p_k (coordinate weights).

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumlab/rational.hpp"

namespace sumlab {

// Per-coordinate exponent vector (q_1..q_m); entries are >= 1, possibly INF.
using QVector = std::vector<ExtRational>;

struct PartitionScenario {
  int m = 0;
  std::vector<std::vector<int>> blocks;  // 1-based coordinate indices
  ExtRational q;
  std::vector<ExtRational> r;  // one per block
  std::vector<ExtRational> p;  // one per block

  PartitionScenario(int m_, std::vector<std::vector<int>> blocks_, ExtRational q_,
                    std::vector<ExtRational> r_, std::vector<ExtRational> p_)
      : m(m_), blocks(std::move(blocks_)), q(std::move(q_)), r(std::move(r_)), p(std::move(p_)) {
    validate();
  }

  // The common case: every coordinate is its own block.
  static PartitionScenario singletons(int m, ExtRational q, std::vector<ExtRational> r,
                                      std::vector<ExtRational> p) {
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) blocks[static_cast<std::size_t>(i)] = {i + 1};
    return PartitionScenario(m, std::move(blocks), std::move(q), std::move(r), std::move(p));
  }

  int n() const { return static_cast<int>(blocks.size()); }
  int block_size(int k) const { return static_cast<int>(blocks[static_cast<std::size_t>(k)].size()); }

  // Coordinate-level exponent vector induced by the block weights:
  // q_j = p_k for every coordinate j in block C_k.
  QVector qvector() const {
    QVector out(static_cast<std::size_t>(m));
    for (int k = 0; k < n(); ++k)
      for (int j : blocks[static_cast<std::size_t>(k)])
        out[static_cast<std::size_t>(j - 1)] = p[static_cast<std::size_t>(k)];
    return out;
  }

private:
  void validate() const {
    if (m < 1) throw std::invalid_argument("PartitionScenario: m must be >= 1");
    if (blocks.empty()) throw std::invalid_argument("PartitionScenario: no blocks");
    if (r.size() != blocks.size() || p.size() != blocks.size())
      throw std::invalid_argument("PartitionScenario: r and p must have one entry per block");
    std::vector<char> seen(static_cast<std::size_t>(m), 0);
    for (const auto& blk : blocks) {
      if (blk.empty()) throw std::invalid_argument("PartitionScenario: empty block");
      for (int j : blk) {
        if (j < 1 || j > m) throw std::invalid_argument("PartitionScenario: coordinate out of range");
        if (seen[static_cast<std::size_t>(j - 1)]++)
          throw std::invalid_argument("PartitionScenario: coordinate " + std::to_string(j) +
                                      " appears in two blocks");
      }
    }
    for (char s : seen)
      if (!s) throw std::invalid_argument("PartitionScenario: blocks do not cover 1..m");
    if (q.is_infinite() || q < ExtRational(1))
      throw std::invalid_argument("PartitionScenario: cotype exponent q must be finite and >= 1");
    for (const auto& x : r)
      if (x < ExtRational(1)) throw std::invalid_argument("PartitionScenario: r entries must be >= 1");
    for (const auto& x : p)
      if (x < ExtRational(1)) throw std::invalid_argument("PartitionScenario: p entries must be >= 1");
  }
};

}  // namespace sumlab
