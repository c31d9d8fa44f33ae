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

// Regression-model comparison over one train/test split: linear and random
// forest on trisent features, and GBRT with and without monotone
// constraints on both bisent and trisent features.

#ifndef ESSAYCOH_EXPERIMENT_HPP_
#define ESSAYCOH_EXPERIMENT_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "essaycoh/metrics.hpp"
#include "essaycoh/scorer.hpp"

namespace essaycoh {

struct ComparisonRow {
  std::string model;
  std::string features;  // "bisent" or "trisent"
  EvalReport report;
};

struct FeatureSplit {
  std::vector<FeatureRow> train;
  std::vector<FeatureRow> test;
};

inline EvalReport evaluate_on(std::span<const FeatureRow> test, const Model& model) {
  std::vector<CoherenceLevel> predicted, gold;
  for (const Prediction& p : predict_pipeline(test, model)) predicted.push_back(p.level);
  for (const FeatureRow& r : test) {
    if (!r.level) throw InputError("test row '" + r.essay_id + "' has no gold level");
    gold.push_back(*r.level);
  }
  return evaluate(predicted, gold);
}

inline std::vector<ComparisonRow> compare_models(const FeatureSplit& bisent,
                                                 const FeatureSplit& trisent,
                                                 const TrainConfig& gbrt_config,
                                                 std::uint64_t seed, int rf_trees = 30) {
  auto run = [&](const FeatureSplit& split, ModelKind kind, bool monotone) {
    TrainOptions opts;
    opts.kind = kind;
    opts.gbrt = gbrt_config;
    opts.monotone = monotone;
    opts.rf_trees = rf_trees;
    opts.seed = seed;
    return evaluate_on(split.test, train_pipeline(split.train, opts).model);
  };
  return {
      {"Linear Regression", "trisent", run(trisent, ModelKind::kLinear, false)},
      {"Random Forest Regression", "trisent", run(trisent, ModelKind::kForest, false)},
      {"GBRT", "bisent", run(bisent, ModelKind::kGbrt, false)},
      {"GBRT w/ MC", "bisent", run(bisent, ModelKind::kGbrt, true)},
      {"GBRT", "trisent", run(trisent, ModelKind::kGbrt, false)},
      {"GBRT w/ MC", "trisent", run(trisent, ModelKind::kGbrt, true)},
  };
}

inline nlohmann::json to_json(std::span<const ComparisonRow> rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"model", r.model},
                   {"features", r.features},
                   {"precision", r.report.macro_precision},
                   {"recall", r.report.macro_recall},
                   {"macro_f1", r.report.macro_f1}});
  }
  return out;
}

// Fixed-width text table, percentages with two decimals.
inline std::string format_comparison(std::span<const ComparisonRow> rows) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-26s %-8s %9s %9s %9s\n", "Model", "Features", "Precision",
                "Recall", "Macro F1");
  out += buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%-26s %-8s %9.2f %9.2f %9.2f\n", r.model.c_str(),
                  r.features.c_str(), 100.0 * r.report.macro_precision,
                  100.0 * r.report.macro_recall, 100.0 * r.report.macro_f1);
    out += buf;
  }
  return out;
}

}  // namespace essaycoh

#endif  // ESSAYCOH_EXPERIMENT_HPP_
