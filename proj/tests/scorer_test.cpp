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

#include "essaycoh/scorer.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "essaycoh/experiment.hpp"
#include "essaycoh/featurize.hpp"
#include "essaycoh/model_io.hpp"
#include "essaycoh/random.hpp"
#include "essaycoh/synth.hpp"

namespace essaycoh {
namespace {

using CL = CoherenceLevel;

std::vector<CL> levels(std::initializer_list<int> v) {
  std::vector<CL> out;
  for (int x : v) out.push_back(static_cast<CL>(x));
  return out;
}

TEST(AssembleFeaturesTest, PerfectEssay) {
  EXPECT_EQ(assemble_features(1.0, PunctErrorCounts{}), (FeatureVector{1, 0, 0, 0, 0, 0, 0}));
}

TEST(AssembleFeaturesTest, PositionalPlacement) {
  PunctErrorCounts c;
  c.rep_comma = 1;
  const FeatureVector v = assemble_features(2.0 / 3.0, c);
  EXPECT_DOUBLE_EQ(v[0], 2.0 / 3.0);
  EXPECT_EQ(v[3], 1.0);
  for (std::size_t k : {1u, 2u, 4u, 5u, 6u}) EXPECT_EQ(v[k], 0.0);
}

TEST(AssembleFeaturesTest, RatioOutOfRange) {
  EXPECT_THROW(assemble_features(1.01, {}), InputError);
  EXPECT_THROW(assemble_features(-0.01, {}), InputError);
  EXPECT_THROW(assemble_features(std::nan(""), {}), InputError);
}

TEST(AssembleFeaturesTest, ConstraintVector) {
  const auto c = coherence_constraints();
  ASSERT_EQ(c.size(), 7u);
  EXPECT_EQ(c[0], Monotone::kIncreasing);
  for (std::size_t k = 1; k < 7; ++k) EXPECT_EQ(c[k], Monotone::kDecreasing);
  EXPECT_EQ(coherence_feature_names()[0], "num_coh_norm");
  EXPECT_EQ(coherence_feature_names()[6], "num_rep_period");
}

TEST(ScoreToLevelTest, RoundHalfUpAndClamp) {
  EXPECT_EQ(score_to_level(1.49), CL::kModerate);
  EXPECT_EQ(score_to_level(-3.0), CL::kPoor);
  EXPECT_EQ(score_to_level(2.5), CL::kExcellent);
  EXPECT_EQ(score_to_level(0.5), CL::kModerate);
  EXPECT_EQ(score_to_level(0.49999), CL::kPoor);
  EXPECT_EQ(score_to_level(1.5), CL::kExcellent);
  EXPECT_EQ(score_to_level(1e300), CL::kExcellent);
  EXPECT_THROW(score_to_level(std::nan("")), InputError);
}

TEST(ScoreToLevelTest, Monotone) {
  CL prev = CL::kPoor;
  for (int i = -400; i <= 400; ++i) {
    const CL l = score_to_level(i / 100.0);
    EXPECT_GE(static_cast<int>(l), static_cast<int>(prev));
    prev = l;
  }
}

TEST(EvaluateTest, PerfectPredictions) {
  const auto g = levels({0, 1, 2, 2, 1});
  const EvalReport r = evaluate(g, g);
  EXPECT_EQ(r.macro_precision, 1.0);
  EXPECT_EQ(r.macro_recall, 1.0);
  EXPECT_EQ(r.macro_f1, 1.0);
  EXPECT_FALSE(r.any_undefined);
}

TEST(EvaluateTest, AllPoorAgainstBalancedThirds) {
  const auto gold = levels({0, 0, 0, 1, 1, 1, 2, 2, 2});
  const auto pred = levels({0, 0, 0, 0, 0, 0, 0, 0, 0});
  const EvalReport r = evaluate(pred, gold);
  EXPECT_NEAR(r.macro_precision, 1.0 / 9.0, 1e-12);
  EXPECT_NEAR(r.macro_recall, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.macro_f1, 0.5 / 3.0, 1e-12);
  EXPECT_TRUE(r.any_undefined);
  EXPECT_TRUE(r.per_class[1].precision_undefined);
  EXPECT_FALSE(r.per_class[1].recall_undefined);
}

TEST(EvaluateTest, TenEssayFixture) {
  const auto gold = levels({0, 0, 0, 0, 1, 1, 1, 2, 2, 2});
  const auto pred = levels({0, 0, 1, 2, 1, 1, 0, 2, 1, 1});
  const EvalReport r = evaluate(pred, gold);
  using Row = std::array<std::size_t, 3>;
  EXPECT_EQ(r.confusion[0], (Row{2, 1, 1}));
  EXPECT_EQ(r.confusion[1], (Row{1, 2, 0}));
  EXPECT_EQ(r.confusion[2], (Row{0, 2, 1}));
  const double p[] = {2.0 / 3.0, 2.0 / 5.0, 1.0 / 2.0};
  const double rc[] = {1.0 / 2.0, 2.0 / 3.0, 1.0 / 3.0};
  const double f[] = {4.0 / 7.0, 1.0 / 2.0, 2.0 / 5.0};
  for (std::size_t c = 0; c < 3; ++c) {
    EXPECT_NEAR(r.per_class[c].precision, p[c], 1e-12);
    EXPECT_NEAR(r.per_class[c].recall, rc[c], 1e-12);
    EXPECT_NEAR(r.per_class[c].f1, f[c], 1e-12);
  }
  EXPECT_NEAR(r.macro_precision, 47.0 / 90.0, 1e-12);
  EXPECT_NEAR(r.macro_recall, 0.5, 1e-12);
  EXPECT_NEAR(r.macro_f1, 103.0 / 210.0, 1e-12);
}

TEST(EvaluateTest, PermutationInvariant) {
  auto gold = levels({0, 0, 0, 0, 1, 1, 1, 2, 2, 2});
  auto pred = levels({0, 0, 1, 2, 1, 1, 0, 2, 1, 1});
  const EvalReport a = evaluate(pred, gold);
  std::vector<std::size_t> idx = {9, 3, 1, 7, 0, 5, 2, 8, 4, 6};
  std::vector<CL> g2, p2;
  for (auto i : idx) {
    g2.push_back(gold[i]);
    p2.push_back(pred[i]);
  }
  const EvalReport b = evaluate(p2, g2);
  EXPECT_EQ(a.confusion, b.confusion);
  EXPECT_EQ(a.macro_f1, b.macro_f1);
}

TEST(EvaluateTest, Errors) {
  EXPECT_THROW(evaluate(levels({0}), levels({0, 1})), InputError);
  EXPECT_THROW(evaluate(levels({}), levels({})), InputError);
}

std::vector<FeatureRow> synthetic_rows(std::size_t n, std::uint64_t seed) {
  SynthConfig cfg;
  cfg.n_essays = n;
  cfg.seed = seed;
  const SynthCorpus corpus = synth_corpus(cfg);
  FeaturizeOptions opts;
  opts.heuristic = true;
  return featurize(corpus.essays, nullptr, corpus.reference_labels, opts);
}

TEST(TrainPipelineTest, ConstrainedModelIsMonotoneInDecodedLevel) {
  const auto rows = synthetic_rows(150, 3);
  const TrainResult res = train_pipeline(rows, TrainOptions{});
  const Model& m = res.model;
  Rng rng(1);
  const auto c = coherence_constraints();
  for (int ctx = 0; ctx < 50; ++ctx) {
    FeatureVector x = rows[uniform_index(rng, rows.size())].x;
    for (std::size_t f = 0; f < kNumFeatures; ++f) {
      FeatureVector p = x;
      const double hi = f == 0 ? 1.0 : 10.0;
      int prev = -1;
      double prev_raw = 0.0;
      for (int g = 0; g <= 100; ++g) {
        p[f] = hi * g / 100.0;
        const double raw = predict(m, p);
        const int lvl = static_cast<int>(score_to_level(raw));
        if (g > 0) {
          EXPECT_GE(sign(c[f]) * (raw - prev_raw), 0.0);
          EXPECT_GE(sign(c[f]) * (lvl - prev), 0);
        }
        prev = lvl;
        prev_raw = raw;
      }
    }
  }
}

TEST(TrainPipelineTest, ReportRmseMatchesReloadedModel) {
  const auto rows = synthetic_rows(80, 4);
  const TrainResult res = train_pipeline(rows, TrainOptions{});
  const Model back = model_from_json(model_to_json(res.model));
  const auto preds = predict_pipeline(rows, back);
  std::vector<double> s, y;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    s.push_back(preds[i].raw_score);
    y.push_back(static_cast<double>(*rows[i].level));
  }
  EXPECT_EQ(rmse(s, y), res.report.rmse);
  EXPECT_EQ(res.report.per_round_rmse.size(), 30u);
  EXPECT_EQ(res.report.per_round_rmse.back(), res.report.rmse);
}

TEST(TrainPipelineTest, MonotoneOffEqualsUnconstrainedBuild) {
  const auto rows = synthetic_rows(80, 5);
  TrainOptions opts;
  opts.monotone = false;
  const Model a = train_pipeline(rows, opts).model;
  std::vector<double> y;
  for (const auto& r : rows) y.push_back(static_cast<double>(*r.level));
  const Model b = fit_gbrt_unconstrained(feature_matrix(rows), y, TrainConfig{},
                                         coherence_feature_names());
  for (const auto& r : rows) EXPECT_EQ(predict(a, r.x), predict(b, r.x));
}

TEST(TrainPipelineTest, OtherKinds) {
  const auto rows = synthetic_rows(60, 6);
  TrainOptions opts;
  opts.kind = ModelKind::kLinear;
  EXPECT_EQ(kind_of(train_pipeline(rows, opts).model), ModelKind::kLinear);
  opts.kind = ModelKind::kForest;
  EXPECT_THROW(train_pipeline(rows, opts), InputError);
  opts.seed = 1;
  const auto res = train_pipeline(rows, opts);
  EXPECT_EQ(kind_of(res.model), ModelKind::kForest);
  EXPECT_EQ(std::get<TreeEnsemble>(res.model).trees.size(), 30u);
}

TEST(TrainPipelineTest, RowsNeedLevels) {
  std::vector<FeatureRow> rows(2);
  rows[0].level = CL::kPoor;
  EXPECT_THROW(train_pipeline(rows, TrainOptions{}), InputError);
  EXPECT_THROW(train_pipeline(std::vector<FeatureRow>{}, TrainOptions{}), InputError);
}

TEST(PredictPipelineTest, PermutedRowsPermuteOutput) {
  const auto rows = synthetic_rows(40, 7);
  const Model m = train_pipeline(rows, TrainOptions{}).model;
  std::vector<FeatureRow> rev(rows.rbegin(), rows.rend());
  const auto a = predict_pipeline(rows, m);
  const auto b = predict_pipeline(rev, m);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].essay_id, b[a.size() - 1 - i].essay_id);
    EXPECT_EQ(a[i].raw_score, b[a.size() - 1 - i].raw_score);
  }
  EXPECT_TRUE(predict_pipeline(std::vector<FeatureRow>{}, m).empty());
}

TEST(PredictPipelineTest, FeatureNameMismatch) {
  const Model m = fit_linear(Matrix::from_rows({{0}, {1}}), std::vector<double>{0, 1});
  EXPECT_THROW(predict_pipeline(std::vector<FeatureRow>{}, m), InputError);
}

TEST(SynthTest, DeterministicAndLabelled) {
  SynthConfig cfg;
  cfg.n_essays = 30;
  const auto a = synth_corpus(cfg);
  const auto b = synth_corpus(cfg);
  ASSERT_EQ(a.essays.size(), 30u);
  for (std::size_t i = 0; i < a.essays.size(); ++i) {
    EXPECT_EQ(a.essays[i].paragraphs, b.essays[i].paragraphs);
    EXPECT_EQ(a.essays[i].level, b.essays[i].level);
    EXPECT_TRUE(a.essays[i].level.has_value());
    EXPECT_NO_THROW(io::reference_for(a.essays[i], a.reference_labels.at(a.essays[i].id)));
  }
}

TEST(CompareModelsTest, SixRows) {
  const auto rows3 = synthetic_rows(90, 8);
  FeatureSplit tri{{rows3.begin(), rows3.begin() + 60}, {rows3.begin() + 60, rows3.end()}};
  const auto rows = compare_models(tri, tri, TrainConfig{}, 1);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].model, "Linear Regression");
  EXPECT_EQ(rows[5].model, "GBRT w/ MC");
  EXPECT_EQ(rows[5].features, "trisent");
  EXPECT_NE(format_comparison(rows).find("Random Forest Regression"), std::string::npos);
}

}  // namespace
}  // namespace essaycoh
