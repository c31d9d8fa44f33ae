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

#ifndef ESSAYCOH_FOREST_HPP_
#define ESSAYCOH_FOREST_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "essaycoh/gbrt.hpp"
#include "essaycoh/model.hpp"
#include "essaycoh/random.hpp"
#include "essaycoh/tree.hpp"

namespace essaycoh {

struct ForestConfig {
  int n_trees = 30;
  int max_depth = kUnlimitedDepth;
  std::size_t min_samples_leaf = 1;
};

// Bagged regression forest. Tree t is grown on a bootstrap resample drawn
// from derive_rng(seed, t); all features are searched at every split.
inline TreeEnsemble fit_rf(const Matrix& x, std::span<const double> y, std::uint64_t seed,
                           const ForestConfig& config = {},
                           std::vector<std::string> feature_names = {}) {
  check_training_data(x, y);
  if (config.n_trees < 1) throw InputError("n_trees must be >= 1");
  if (config.max_depth < 1) throw InputError("max_depth must be >= 1");
  if (feature_names.empty()) feature_names = default_feature_names(x.cols());
  if (feature_names.size() != x.cols()) {
    throw InputError("feature name count does not match columns");
  }

  TreeEnsemble model;
  model.kind = ModelKind::kForest;
  model.base_score = 0.0;
  model.learning_rate = 1.0 / static_cast<double>(config.n_trees);
  model.feature_names = std::move(feature_names);
  model.constraints.assign(x.cols(), Monotone::kFree);

  const std::size_t n = x.rows();
  const TreeConfig tree_config{config.max_depth, config.min_samples_leaf, 0.0};
  for (int t = 0; t < config.n_trees; ++t) {
    Rng rng = derive_rng(seed, static_cast<std::uint64_t>(t));
    std::vector<std::size_t> sample(n);
    for (auto& s : sample) s = static_cast<std::size_t>(uniform_index(rng, n));
    TreeBuilder<NoConstraints> builder(x, y, tree_config);
    model.trees.push_back(builder.build(std::move(sample)));
  }
  return model;
}

}  // namespace essaycoh

#endif  // ESSAYCOH_FOREST_HPP_
