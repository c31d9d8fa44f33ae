/*
 * Copyright 2026 The essaycoh Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Greedy variance-reduction regression trees with optional per-feature
// monotone constraints.
//
// Constraints are enforced exactly by split rejection plus bound
// propagation. Every node carries an interval [lower, upper] that its leaf
// values are clamped into; the root interval is unbounded. A split on a
// feature with direction d != 0 is rejected when the clamped child means
// w_left, w_right violate d * (w_right - w_left) >= 0. An accepted split
// hands the midpoint (w_left + w_right) / 2 down as the new upper bound of
// the "low" side and lower bound of the "high" side, so every leaf reachable
// on one side of a constrained split is ordered against every leaf on the
// other side.

#ifndef ESSAYCOH_TREE_HPP_
#define ESSAYCOH_TREE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "essaycoh/errors.hpp"

namespace essaycoh {

// Dense row-major sample x feature matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw InputError("ragged matrix rows");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * cols);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const double> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    if (values.size() != cols_) throw InputError("row width does not match matrix");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class Monotone : std::int8_t { kDecreasing = -1, kFree = 0, kIncreasing = 1 };

inline int sign(Monotone m) { return static_cast<int>(m); }

inline Monotone monotone_from_int(int v) {
  if (v < -1 || v > 1) throw InputError("monotone direction must be -1, 0 or 1");
  return static_cast<Monotone>(v);
}

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  // leaf output; for internal nodes, the clamped node mean
  double lower = -kInf;
  double upper = kInf;
  double gain = 0.0;
  std::size_t samples = 0;

  bool is_leaf() const { return feature < 0; }
};

class RegressionTree {
 public:
  RegressionTree() = default;
  explicit RegressionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

  // Routes x[feature] <= threshold to the left child.
  double predict(std::span<const double> x) const {
    std::size_t i = 0;
    while (!nodes_[i].is_leaf()) {
      const TreeNode& n = nodes_[i];
      i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left
                                                                                           : n.right);
    }
    return nodes_[i].value;
  }

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }

  int depth() const { return nodes_.empty() ? 0 : depth_from(0); }

  // Checks structural invariants: binary, in-range child indices, every node
  // reachable exactly once from the root, finite leaf values.
  void validate(std::size_t num_features) const {
    if (nodes_.empty()) throw InputError("tree has no nodes");
    std::vector<int> seen(nodes_.size(), 0);
    seen[0] = 1;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const TreeNode& n = nodes_[i];
      if (n.is_leaf()) {
        if (!std::isfinite(n.value)) throw InputError("non-finite leaf value");
        continue;
      }
      if (static_cast<std::size_t>(n.feature) >= num_features) {
        throw InputError("split feature index out of range");
      }
      for (int c : {n.left, n.right}) {
        if (c <= static_cast<int>(i) || static_cast<std::size_t>(c) >= nodes_.size()) {
          throw InputError("child index out of range");
        }
        if (seen[static_cast<std::size_t>(c)]++) throw InputError("node has two parents");
      }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
      throw InputError("unreachable tree node");
    }
  }

 private:
  int depth_from(std::size_t i) const {
    const TreeNode& n = nodes_[i];
    if (n.is_leaf()) return 0;
    return 1 + std::max(depth_from(static_cast<std::size_t>(n.left)),
                        depth_from(static_cast<std::size_t>(n.right)));
  }

  std::vector<TreeNode> nodes_;
};

struct TreeConfig {
  int max_depth = 4;
  std::size_t min_samples_leaf = 1;
  double min_gain = 0.0;
};

inline constexpr int kUnlimitedDepth = std::numeric_limits<int>::max();

// Constraint policies for TreeBuilder. NoConstraints compiles the bound and
// rejection logic out entirely.
struct NoConstraints {
  static constexpr bool kEnabled = false;
  Monotone direction(std::size_t) const { return Monotone::kFree; }
};

struct MonotoneConstraints {
  static constexpr bool kEnabled = true;
  std::span<const Monotone> directions;
  Monotone direction(std::size_t f) const { return directions[f]; }
};

// Two gains closer than this (relative to the larger of 1 and the current
// best) are ties; ties keep the earlier (feature, threshold) candidate.
inline constexpr double kGainTieTolerance = 1e-12;

struct SplitChoice {
  int feature = -1;
  double threshold = 0.0;
  double gain = -kInf;
  double left_value = 0.0;
  double right_value = 0.0;

  bool found() const { return feature >= 0; }
};

// Fits one tree to (X, targets) restricted to the given sample indices.
// Indices may repeat (bootstrap samples).
template <class Constraints>
class TreeBuilder {
 public:
  TreeBuilder(const Matrix& x, std::span<const double> targets, TreeConfig config,
              Constraints constraints = {})
      : x_(x), targets_(targets), config_(config), constraints_(constraints) {}

  RegressionTree build(std::vector<std::size_t> indices) {
    nodes_.clear();
    nodes_.emplace_back();
    grow(0, std::move(indices), 0, -kInf, kInf);
    return RegressionTree(std::move(nodes_));
  }

  RegressionTree build() {
    std::vector<std::size_t> all(x_.rows());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return build(std::move(all));
  }

  // Best split of the given samples inside bounds [lower, upper].
  SplitChoice best_split(const std::vector<std::size_t>& idx, double lower, double upper) const {
    SplitChoice best;
    const std::size_t n = idx.size();
    if (n < 2 || n < 2 * config_.min_samples_leaf) return best;

    // Shift by the node mean so that the sum-of-squares identity below
    // loses as little precision as possible (and is exactly 0 for a
    // constant node).
    const double shift = mean_of(idx);
    double total = 0.0;
    for (std::size_t i : idx) total += targets_[i] - shift;
    const double parent_score = total * total / static_cast<double>(n);

    std::vector<std::size_t> order(idx);
    for (std::size_t f = 0; f < x_.cols(); ++f) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = x_(a, f), vb = x_(b, f);
        return va < vb || (va == vb && a < b);
      });
      const Monotone dir = constraints_.direction(f);
      double sum_left = 0.0;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        sum_left += targets_[order[k]] - shift;
        const double lo_val = x_(order[k], f);
        const double hi_val = x_(order[k + 1], f);
        if (!(lo_val < hi_val)) continue;
        const std::size_t n_left = k + 1;
        const std::size_t n_right = n - n_left;
        if (n_left < config_.min_samples_leaf || n_right < config_.min_samples_leaf) continue;

        const double sum_right = total - sum_left;
        const double gain = sum_left * sum_left / static_cast<double>(n_left) +
                            sum_right * sum_right / static_cast<double>(n_right) - parent_score;
        if (best.found() &&
            !(gain - best.gain > kGainTieTolerance * std::max(1.0, std::abs(best.gain)))) {
          continue;
        }

        double w_left = shift + sum_left / static_cast<double>(n_left);
        double w_right = shift + sum_right / static_cast<double>(n_right);
        if constexpr (Constraints::kEnabled) {
          w_left = std::clamp(w_left, lower, upper);
          w_right = std::clamp(w_right, lower, upper);
          if (dir != Monotone::kFree && sign(dir) * (w_right - w_left) < 0.0) continue;
        }
        double threshold = std::midpoint(lo_val, hi_val);
        if (!(threshold < hi_val)) threshold = lo_val;
        best = {static_cast<int>(f), threshold, gain, w_left, w_right};
      }
    }
    return best;
  }

 private:
  double mean_of(const std::vector<std::size_t>& idx) const {
    // Anchored on the first value so a constant node yields that value
    // exactly.
    const double anchor = targets_[idx.front()];
    double acc = 0.0;
    for (std::size_t i : idx) acc += targets_[i] - anchor;
    return anchor + acc / static_cast<double>(idx.size());
  }

  void grow(std::size_t node, std::vector<std::size_t> idx, int depth, double lower,
            double upper) {
    double value = mean_of(idx);
    if constexpr (Constraints::kEnabled) value = std::clamp(value, lower, upper);
    nodes_[node].value = value;
    nodes_[node].samples = idx.size();
    if constexpr (Constraints::kEnabled) {
      nodes_[node].lower = lower;
      nodes_[node].upper = upper;
    }

    if (depth >= config_.max_depth) return;
    const SplitChoice split = best_split(idx, lower, upper);
    if (!split.found() || !(split.gain > config_.min_gain)) return;

    const auto f = static_cast<std::size_t>(split.feature);
    std::vector<std::size_t> left_idx, right_idx;
    for (std::size_t i : idx) (x_(i, f) <= split.threshold ? left_idx : right_idx).push_back(i);
    idx.clear();
    idx.shrink_to_fit();

    double left_lower = lower, left_upper = upper;
    double right_lower = lower, right_upper = upper;
    if constexpr (Constraints::kEnabled) {
      const double mid = (split.left_value + split.right_value) / 2.0;
      switch (constraints_.direction(f)) {
        case Monotone::kIncreasing:
          left_upper = std::min(upper, mid);
          right_lower = std::max(lower, mid);
          break;
        case Monotone::kDecreasing:
          left_lower = std::max(lower, mid);
          right_upper = std::min(upper, mid);
          break;
        case Monotone::kFree:
          break;
      }
    }

    const auto left = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    const auto right = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    nodes_[node].feature = split.feature;
    nodes_[node].threshold = split.threshold;
    nodes_[node].gain = split.gain;
    nodes_[node].left = left;
    nodes_[node].right = right;

    grow(static_cast<std::size_t>(left), std::move(left_idx), depth + 1, left_lower, left_upper);
    grow(static_cast<std::size_t>(right), std::move(right_idx), depth + 1, right_lower,
         right_upper);
  }

  const Matrix& x_;
  std::span<const double> targets_;
  TreeConfig config_;
  Constraints constraints_;
  std::vector<TreeNode> nodes_;
};

}  // namespace essaycoh

#endif  // ESSAYCOH_TREE_HPP_
