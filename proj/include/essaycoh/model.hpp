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

#ifndef ESSAYCOH_MODEL_HPP_
#define ESSAYCOH_MODEL_HPP_

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "essaycoh/errors.hpp"
#include "essaycoh/tree.hpp"

namespace essaycoh {

enum class ModelKind { kGbrt, kForest, kLinear };

inline std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::kGbrt: return "gbrt";
    case ModelKind::kForest: return "rf";
    case ModelKind::kLinear: return "linear";
  }
  return "?";
}

inline ModelKind model_kind_from_string(const std::string& s) {
  if (s == "gbrt") return ModelKind::kGbrt;
  if (s == "rf") return ModelKind::kForest;
  if (s == "linear") return ModelKind::kLinear;
  throw InputError("unknown model kind '" + s + "' (expected gbrt, rf or linear)");
}

inline void check_dimension(std::size_t got, std::size_t want) {
  if (got != want) {
    throw InputError("feature vector has " + std::to_string(got) + " values, model expects " +
                     std::to_string(want));
  }
}

// Boosted (kGbrt) or bagged (kForest) tree ensemble.
//
// kGbrt: base_score + learning_rate * sum of tree outputs.
// kForest: base_score + mean of tree outputs (learning_rate is informational
// and equals 1 / number of trees).
struct TreeEnsemble {
  ModelKind kind = ModelKind::kGbrt;
  double base_score = 0.0;
  double learning_rate = 1.0;
  std::vector<std::string> feature_names;
  std::vector<Monotone> constraints;
  std::vector<RegressionTree> trees;

  std::size_t num_features() const { return feature_names.size(); }

  double predict(std::span<const double> x) const {
    check_dimension(x.size(), num_features());
    double sum = 0.0;
    for (const auto& t : trees) sum += t.predict(x);
    if (kind == ModelKind::kForest) {
      return trees.empty() ? base_score : base_score + sum / static_cast<double>(trees.size());
    }
    return base_score + learning_rate * sum;
  }
};

// Affine model: intercept + coefficients . x
struct LinearModel {
  double intercept = 0.0;
  std::vector<double> coefficients;
  std::vector<std::string> feature_names;

  std::size_t num_features() const { return feature_names.size(); }

  double predict(std::span<const double> x) const {
    check_dimension(x.size(), num_features());
    double s = intercept;
    for (std::size_t j = 0; j < x.size(); ++j) s += coefficients[j] * x[j];
    return s;
  }
};

using Model = std::variant<TreeEnsemble, LinearModel>;

inline ModelKind kind_of(const Model& m) {
  if (const auto* e = std::get_if<TreeEnsemble>(&m)) return e->kind;
  return ModelKind::kLinear;
}

inline double predict(const Model& m, std::span<const double> x) {
  return std::visit([&](const auto& model) { return model.predict(x); }, m);
}

inline std::vector<double> predict_batch(const Model& m, const Matrix& x) {
  std::vector<double> out;
  out.reserve(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) out.push_back(predict(m, x.row(i)));
  return out;
}

inline const std::vector<std::string>& feature_names(const Model& m) {
  return std::visit([](const auto& model) -> const std::vector<std::string>& {
    return model.feature_names;
  }, m);
}

}  // namespace essaycoh

#endif  // ESSAYCOH_MODEL_HPP_
