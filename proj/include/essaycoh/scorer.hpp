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

// Essay-level coherence scorer: the 7-feature vector, training and
// prediction over feature tables, and level decoding.

#ifndef ESSAYCOH_SCORER_HPP_
#define ESSAYCOH_SCORER_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "essaycoh/corpus.hpp"
#include "essaycoh/errors.hpp"
#include "essaycoh/forest.hpp"
#include "essaycoh/gbrt.hpp"
#include "essaycoh/linear.hpp"
#include "essaycoh/metrics.hpp"
#include "essaycoh/model.hpp"
#include "essaycoh/punct.hpp"

namespace essaycoh {

inline constexpr std::size_t kNumFeatures = 7;

using FeatureVector = std::array<double, kNumFeatures>;

inline const std::vector<std::string>& coherence_feature_names() {
  static const std::vector<std::string> names = {
      "num_coh_norm",   "num_del_comma",  "num_ins_comma", "num_rep_comma",
      "num_del_period", "num_ins_period", "num_rep_period"};
  return names;
}

// Coherent-window ratio may only raise the score; every punctuation error
// count may only lower it.
inline std::vector<Monotone> coherence_constraints() {
  std::vector<Monotone> c(kNumFeatures, Monotone::kDecreasing);
  c[0] = Monotone::kIncreasing;
  return c;
}

inline FeatureVector assemble_features(double coh_ratio, const PunctErrorCounts& counts) {
  if (!(coh_ratio >= 0.0 && coh_ratio <= 1.0)) {
    throw InputError("num_coh_norm outside [0, 1]: " + std::to_string(coh_ratio));
  }
  return {coh_ratio,
          static_cast<double>(counts.del_comma),
          static_cast<double>(counts.ins_comma),
          static_cast<double>(counts.rep_comma),
          static_cast<double>(counts.del_period),
          static_cast<double>(counts.ins_period),
          static_cast<double>(counts.rep_period)};
}

struct FeatureRow {
  std::string essay_id;
  FeatureVector x{};
  std::optional<CoherenceLevel> level;
};

inline Matrix feature_matrix(std::span<const FeatureRow> rows) {
  Matrix m(rows.size(), kNumFeatures);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy(rows[i].x.begin(), rows[i].x.end(), m.row(i).begin());
  }
  return m;
}

struct TrainOptions {
  ModelKind kind = ModelKind::kGbrt;
  TrainConfig gbrt;  // 30 rounds, depth 4, learning rate 1
  bool monotone = true;
  int rf_trees = 30;
  std::optional<std::uint64_t> seed;  // required for rf
};

struct TrainReport {
  double rmse = 0.0;
  std::vector<double> per_round_rmse;
  EvalReport metrics;
};

struct TrainResult {
  Model model;
  TrainReport report;
};

struct Prediction {
  std::string essay_id;
  double raw_score = 0.0;
  CoherenceLevel level = CoherenceLevel::kPoor;
};

inline std::vector<Prediction> predict_pipeline(std::span<const FeatureRow> rows,
                                                const Model& model) {
  if (feature_names(model) != coherence_feature_names()) {
    throw InputError("model feature names do not match the features.csv columns");
  }
  std::vector<Prediction> out;
  out.reserve(rows.size());
  for (const FeatureRow& r : rows) {
    const double s = predict(model, r.x);
    out.push_back({r.essay_id, s, score_to_level(s)});
  }
  return out;
}

inline TrainResult train_pipeline(std::span<const FeatureRow> rows, const TrainOptions& opts) {
  if (rows.empty()) throw InputError("no training rows");
  std::vector<double> y;
  std::vector<CoherenceLevel> gold;
  for (const FeatureRow& r : rows) {
    if (!r.level) throw InputError("training row '" + r.essay_id + "' has no gold level");
    y.push_back(static_cast<double>(*r.level));
    gold.push_back(*r.level);
  }
  const Matrix x = feature_matrix(rows);
  const auto& names = coherence_feature_names();

  TrainResult result;
  switch (opts.kind) {
    case ModelKind::kGbrt: {
      TrainTrace trace;
      const std::vector<Monotone> constraints =
          opts.monotone ? coherence_constraints()
                        : std::vector<Monotone>(kNumFeatures, Monotone::kFree);
      result.model = fit_gbrt(x, y, opts.gbrt, constraints, names, &trace);
      result.report.per_round_rmse = std::move(trace.per_round_rmse);
      break;
    }
    case ModelKind::kForest: {
      if (!opts.seed) throw InputError("random forest training requires a seed");
      ForestConfig fc;
      fc.n_trees = opts.rf_trees;
      result.model = fit_rf(x, y, *opts.seed, fc, names);
      break;
    }
    case ModelKind::kLinear:
      result.model = fit_linear(x, y, names);
      break;
  }

  const std::vector<Prediction> preds = predict_pipeline(rows, result.model);
  std::vector<double> scores;
  std::vector<CoherenceLevel> levels;
  for (const auto& p : preds) {
    scores.push_back(p.raw_score);
    levels.push_back(p.level);
  }
  result.report.rmse = rmse(scores, y);
  if (result.report.per_round_rmse.empty()) result.report.per_round_rmse.push_back(result.report.rmse);
  result.report.metrics = evaluate(levels, gold);
  return result;
}

inline nlohmann::json to_json(const TrainReport& r) {
  return {{"rmse", r.rmse}, {"per_round_rmse", r.per_round_rmse}, {"metrics", to_json(r.metrics)}};
}

}  // namespace essaycoh

#endif  // ESSAYCOH_SCORER_HPP_
