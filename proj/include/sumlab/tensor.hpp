#pragma once

// Dense tensors and nested (mixed) norms over counting measure.  This is the
// numerical side of the project: entries are doubles, exactness lives in the
// rational exponent calculators.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace sumlab {

// Row-major dense tensor (last index fastest).  The layout is part of the
// file-format contract, so it is fixed here rather than templated away.
class Tensor {
 public:
  Tensor(std::vector<int> dims, std::vector<double> data)
      : dims_(std::move(dims)), data_(std::move(data)) {
    if (dims_.empty()) throw std::invalid_argument("Tensor: empty dimension list");
    std::size_t expect = 1;
    for (int d : dims_) {
      if (d < 1) throw std::invalid_argument("Tensor: dimensions must be >= 1");
      expect *= static_cast<std::size_t>(d);
    }
    if (data_.size() != expect)
      throw std::invalid_argument("Tensor: data size " + std::to_string(data_.size()) +
                                  " does not match dims product " + std::to_string(expect));
  }

  static Tensor zeros(std::vector<int> dims) {
    std::size_t total = 1;
    for (int d : dims) total *= static_cast<std::size_t>(d < 1 ? 0 : d);
    return Tensor(std::move(dims), std::vector<double>(total, 0.0));
  }

  int rank() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  std::size_t size() const { return data_.size(); }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  double operator[](std::size_t flat) const { return data_[flat]; }
  double& operator[](std::size_t flat) { return data_[flat]; }

  std::size_t offset(const std::vector<int>& idx) const {
    std::size_t off = 0;
    for (std::size_t a = 0; a < dims_.size(); ++a)
      off = off * static_cast<std::size_t>(dims_[a]) + static_cast<std::size_t>(idx[a]);
    return off;
  }

  double at(const std::vector<int>& idx) const { return data_[offset(idx)]; }
  double& at(const std::vector<int>& idx) { return data_[offset(idx)]; }

 private:
  std::vector<int> dims_;
  std::vector<double> data_;
};

// Row-major increment of a multi-index; returns false when it wraps to zero.
inline bool next_multi_index(std::vector<int>& idx, const std::vector<int>& dims) {
  for (int a = static_cast<int>(dims.size()) - 1; a >= 0; --a) {
    if (++idx[static_cast<std::size_t>(a)] < dims[static_cast<std::size_t>(a)]) return true;
    idx[static_cast<std::size_t>(a)] = 0;
  }
  return false;
}

// Tensor with entrywise-nonnegative data, checked at construction.  All the
// inequality lemmas verified in this module assume nonnegative coefficients.
class NonnegTensor : public Tensor {
 public:
  NonnegTensor(std::vector<int> dims, std::vector<double> data)
      : Tensor(std::move(dims), std::move(data)) {
    for (double x : this->data())
      if (!(x >= 0.0))
        throw std::invalid_argument("NonnegTensor: negative (or NaN) entry");
  }

  explicit NonnegTensor(const Tensor& t) : NonnegTensor(t.dims(), t.data()) {}
};

// Nested-norm specification: groups[0] is the outermost norm and the last
// listed group is applied first (innermost).  An INFINITY exponent takes the
// max over its group.
struct MixedNormSpec {
  std::vector<std::vector<int>> groups;  // 0-based axis indices
  std::vector<double> exponents;         // one per group, > 0 or INFINITY

  void validate(int rank) const {
    if (groups.empty() || groups.size() != exponents.size())
      throw std::invalid_argument("MixedNormSpec: need one exponent per group");
    std::vector<char> seen(static_cast<std::size_t>(rank), 0);
    for (const auto& g : groups) {
      if (g.empty()) throw std::invalid_argument("MixedNormSpec: empty group");
      for (int a : g) {
        if (a < 0 || a >= rank) throw std::invalid_argument("MixedNormSpec: axis out of range");
        if (seen[static_cast<std::size_t>(a)]++)
          throw std::invalid_argument("MixedNormSpec: axis listed twice");
      }
    }
    for (char s : seen)
      if (!s) throw std::invalid_argument("MixedNormSpec: groups do not cover all axes");
    for (double e : exponents)
      if (!(e > 0.0)) throw std::invalid_argument("MixedNormSpec: exponents must be > 0");
  }
};

namespace detail {

// One reduction step: collapse the axes in `group` with an ell_e norm (max
// when e = INFINITY), producing the tensor over the remaining axes.  Values
// are scaled by the per-cell max before powering, so large exponents do not
// overflow.
inline void reduce_group(std::vector<double>& data, std::vector<int>& dims,
                         const std::vector<int>& group, double e) {
  const int rank = static_cast<int>(dims.size());
  std::vector<char> reduced(static_cast<std::size_t>(rank), 0);
  for (int a : group) reduced[static_cast<std::size_t>(a)] = 1;

  std::vector<int> out_dims;
  for (int a = 0; a < rank; ++a)
    if (!reduced[static_cast<std::size_t>(a)]) out_dims.push_back(dims[static_cast<std::size_t>(a)]);
  if (out_dims.empty()) out_dims.push_back(1);  // final scalar kept as a 1-tensor

  std::size_t out_size = 1;
  for (int d : out_dims) out_size *= static_cast<std::size_t>(d);
  std::vector<double> maxabs(out_size, 0.0);
  std::vector<double> acc(out_size, 0.0);

  std::vector<int> idx(static_cast<std::size_t>(rank), 0);
  std::size_t flat = 0;
  // Pass 1: per-cell max of |x| (this is already the answer for e = INF).
  do {
    std::size_t off = 0;
    for (int a = 0; a < rank; ++a)
      if (!reduced[static_cast<std::size_t>(a)])
        off = off * static_cast<std::size_t>(dims[static_cast<std::size_t>(a)]) +
              static_cast<std::size_t>(idx[static_cast<std::size_t>(a)]);
    double v = std::fabs(data[flat]);
    if (v > maxabs[off]) maxabs[off] = v;
    ++flat;
  } while (next_multi_index(idx, dims));

  if (std::isinf(e)) {
    data = std::move(maxabs);
    dims = std::move(out_dims);
    return;
  }

  // Pass 2: accumulate (|x|/max)^e per cell.
  std::fill(idx.begin(), idx.end(), 0);
  flat = 0;
  do {
    std::size_t off = 0;
    for (int a = 0; a < rank; ++a)
      if (!reduced[static_cast<std::size_t>(a)])
        off = off * static_cast<std::size_t>(dims[static_cast<std::size_t>(a)]) +
              static_cast<std::size_t>(idx[static_cast<std::size_t>(a)]);
    if (maxabs[off] > 0.0) acc[off] += std::pow(std::fabs(data[flat]) / maxabs[off], e);
    ++flat;
  } while (next_multi_index(idx, dims));

  for (std::size_t i = 0; i < out_size; ++i)
    acc[i] = maxabs[i] > 0.0 ? maxabs[i] * std::pow(acc[i], 1.0 / e) : 0.0;
  data = std::move(acc);
  dims = std::move(out_dims);
}

}  // namespace detail

// Nested power-sum norm: the last listed group is the innermost sum.  Axis
// indices in later groups are positions in the ORIGINAL tensor.
inline double mixed_norm(const Tensor& t, const MixedNormSpec& spec) {
  spec.validate(t.rank());
  std::vector<double> data = t.data();
  std::vector<int> dims = t.dims();
  // Track where each original axis currently sits (reductions shift axes).
  std::vector<int> pos(static_cast<std::size_t>(t.rank()));
  for (int a = 0; a < t.rank(); ++a) pos[static_cast<std::size_t>(a)] = a;

  for (int g = static_cast<int>(spec.groups.size()) - 1; g >= 0; --g) {
    std::vector<int> current;
    for (int orig : spec.groups[static_cast<std::size_t>(g)])
      current.push_back(pos[static_cast<std::size_t>(orig)]);
    detail::reduce_group(data, dims, current, spec.exponents[static_cast<std::size_t>(g)]);
    // Recompute positions of the surviving original axes.
    std::vector<char> gone(pos.size(), 0);
    for (int orig : spec.groups[static_cast<std::size_t>(g)]) gone[static_cast<std::size_t>(orig)] = 1;
    int next = 0;
    for (std::size_t a = 0; a < pos.size(); ++a) {
      if (pos[a] < 0) continue;
      if (gone[a]) {
        pos[a] = -1;
      } else {
        pos[a] = next++;
      }
    }
  }
  return data[0];
}

// Plain ell_p norm of all entries (p > 0 or INFINITY), same scaling scheme.
inline double entry_lp_norm(const Tensor& t, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("entry_lp_norm: exponent must be > 0");
  double mx = 0.0;
  for (double x : t.data()) mx = std::max(mx, std::fabs(x));
  if (std::isinf(p) || mx == 0.0) return mx;
  double acc = 0.0;
  for (double x : t.data()) acc += std::pow(std::fabs(x) / mx, p);
  return mx * std::pow(acc, 1.0 / p);
}

}  // namespace sumlab
