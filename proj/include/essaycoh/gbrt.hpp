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

// Squared-loss gradient boosting over regression trees, with per-feature
// monotone constraints.

#ifndef ESSAYCOH_GBRT_HPP_
#define ESSAYCOH_GBRT_HPP_

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "essaycoh/errors.hpp"
#include "essaycoh/model.hpp"
#include "essaycoh/tree.hpp"

namespace essaycoh {

struct TrainConfig {
  int n_rounds = 30;
  int max_depth = 4;
  double learning_rate = 1.0;
  std::size_t min_samples_leaf = 1;
  double min_gain = 0.0;

  void validate() const {
    if (n_rounds < 1) throw InputError("n_rounds must be >= 1");
    if (max_depth < 1) throw InputError("max_depth must be >= 1");
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
      throw InputError("learning_rate must be a positive finite number");
    }
    if (min_samples_leaf < 1) throw InputError("min_samples_leaf must be >= 1");
    if (!std::isfinite(min_gain)) throw InputError("min_gain must be finite");
  }

  TreeConfig tree_config() const { return {max_depth, min_samples_leaf, min_gain}; }
};

struct TrainTrace {
  std::vector<double> per_round_rmse;  // training RMSE after each round
};

inline void check_training_data(const Matrix& x, std::span<const double> y) {
  if (x.empty()) throw InputError("training set is empty");
  if (x.cols() == 0) throw InputError("training set has no features");
  if (y.size() != x.rows()) {
    throw InputError("target count " + std::to_string(y.size()) + " does not match " +
                     std::to_string(x.rows()) + " rows");
  }
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (double v : x.row(i)) {
      if (std::isnan(v)) throw InputError("NaN feature value in row " + std::to_string(i));
      if (!std::isfinite(v)) throw InputError("infinite feature value in row " + std::to_string(i));
    }
    if (!std::isfinite(y[i])) throw InputError("non-finite target in row " + std::to_string(i));
  }
}

inline std::vector<std::string> default_feature_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < n; ++j) names.push_back("f" + std::to_string(j));
  return names;
}

inline double rmse(std::span<const double> pred, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += (pred[i] - y[i]) * (pred[i] - y[i]);
  return y.empty() ? 0.0 : std::sqrt(s / static_cast<double>(y.size()));
}

namespace detail {

template <class Constraints>
TreeEnsemble fit_boosted(const Matrix& x, std::span<const double> y, const TrainConfig& config,
                         std::vector<Monotone> directions, std::vector<std::string> names,
                         TrainTrace* trace) {
  config.validate();
  check_training_data(x, y);
  if (names.empty()) names = default_feature_names(x.cols());
  if (names.size() != x.cols()) throw InputError("feature name count does not match columns");
  if (directions.size() != x.cols()) {
    throw InputError("constraint vector has " + std::to_string(directions.size()) +
                     " entries for " + std::to_string(x.cols()) + " features");
  }

  TreeEnsemble model;
  model.kind = ModelKind::kGbrt;
  model.learning_rate = config.learning_rate;
  model.feature_names = std::move(names);
  model.constraints = std::move(directions);

  const std::size_t n = x.rows();
  {
    const double anchor = y[0];
    double acc = 0.0;
    for (double v : y) acc += v - anchor;
    model.base_score = anchor + acc / static_cast<double>(n);
  }

  // Training predictions are kept in exactly the form predict() computes
  // them (base + lr * sum), so the traced RMSE matches a reloaded model.
  std::vector<double> tree_sum(n, 0.0);
  std::vector<double> residual(n);
  std::vector<double> pred(n, model.base_score);

  Constraints constraints{};
  if constexpr (Constraints::kEnabled) constraints.directions = model.constraints;

  for (int round = 0; round < config.n_rounds; ++round) {
    for (std::size_t i = 0; i < n; ++i) residual[i] = y[i] - pred[i];
    TreeBuilder<Constraints> builder(x, residual, config.tree_config(), constraints);
    RegressionTree tree = builder.build();
    for (std::size_t i = 0; i < n; ++i) {
      tree_sum[i] += tree.predict(x.row(i));
      pred[i] = model.base_score + model.learning_rate * tree_sum[i];
    }
    model.trees.push_back(std::move(tree));
    if (trace) trace->per_round_rmse.push_back(rmse(pred, y));
  }
  return model;
}

}  // namespace detail

// Boosted trees honoring the given per-feature directions.
inline TreeEnsemble fit_gbrt(const Matrix& x, std::span<const double> y, const TrainConfig& config,
                             std::vector<Monotone> constraints,
                             std::vector<std::string> feature_names = {},
                             TrainTrace* trace = nullptr) {
  return detail::fit_boosted<MonotoneConstraints>(x, y, config, std::move(constraints),
                                                  std::move(feature_names), trace);
}

// Same learner with the constraint machinery compiled out. The resulting
// model records all-free constraints.
inline TreeEnsemble fit_gbrt_unconstrained(const Matrix& x, std::span<const double> y,
                                           const TrainConfig& config,
                                           std::vector<std::string> feature_names = {},
                                           TrainTrace* trace = nullptr) {
  return detail::fit_boosted<NoConstraints>(x, y, config,
                                            std::vector<Monotone>(x.cols(), Monotone::kFree),
                                            std::move(feature_names), trace);
}

}  // namespace essaycoh

#endif  // ESSAYCOH_GBRT_HPP_
