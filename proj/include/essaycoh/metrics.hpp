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

#ifndef ESSAYCOH_METRICS_HPP_
#define ESSAYCOH_METRICS_HPP_

#include <array>
#include <cmath>
#include <span>
#include <string>

#include "json.hpp"

#include "essaycoh/corpus.hpp"
#include "essaycoh/errors.hpp"

namespace essaycoh {

// Round half up, clamp to [POOR, EXCELLENT].
inline CoherenceLevel score_to_level(double score) {
  if (std::isnan(score)) throw InputError("cannot decode a NaN score");
  const double r = std::floor(score + 0.5);
  if (r <= 0.0) return CoherenceLevel::kPoor;
  if (r >= 2.0) return CoherenceLevel::kExcellent;
  return CoherenceLevel::kModerate;
}

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // Set when a zero denominator forced the 0 convention.
  bool precision_undefined = false;
  bool recall_undefined = false;
};

struct EvalReport {
  // confusion[gold][predicted]
  std::array<std::array<std::size_t, kNumLevels>, kNumLevels> confusion{};
  std::array<ClassMetrics, kNumLevels> per_class{};
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  std::size_t total = 0;
  bool any_undefined = false;
};

inline EvalReport evaluate(std::span<const CoherenceLevel> predicted,
                           std::span<const CoherenceLevel> gold) {
  if (predicted.size() != gold.size()) {
    throw InputError("predicted and gold level lists differ in length (" +
                     std::to_string(predicted.size()) + " vs " + std::to_string(gold.size()) + ")");
  }
  if (gold.empty()) throw InputError("cannot evaluate an empty prediction list");

  EvalReport r;
  r.total = gold.size();
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ++r.confusion[static_cast<std::size_t>(gold[i])][static_cast<std::size_t>(predicted[i])];
  }
  for (std::size_t c = 0; c < kNumLevels; ++c) {
    const std::size_t tp = r.confusion[c][c];
    std::size_t predicted_c = 0, gold_c = 0;
    for (std::size_t k = 0; k < kNumLevels; ++k) {
      predicted_c += r.confusion[k][c];
      gold_c += r.confusion[c][k];
    }
    ClassMetrics& m = r.per_class[c];
    if (predicted_c == 0) {
      m.precision_undefined = true;
    } else {
      m.precision = static_cast<double>(tp) / static_cast<double>(predicted_c);
    }
    if (gold_c == 0) {
      m.recall_undefined = true;
    } else {
      m.recall = static_cast<double>(tp) / static_cast<double>(gold_c);
    }
    if (m.precision + m.recall > 0.0) {
      m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    }
    r.any_undefined = r.any_undefined || m.precision_undefined || m.recall_undefined;
    r.macro_precision += m.precision;
    r.macro_recall += m.recall;
    r.macro_f1 += m.f1;
  }
  r.macro_precision /= kNumLevels;
  r.macro_recall /= kNumLevels;
  r.macro_f1 /= kNumLevels;
  return r;
}

inline nlohmann::json to_json(const EvalReport& r) {
  static constexpr const char* kNames[] = {"poor", "moderate", "excellent"};
  nlohmann::json j;
  j["total"] = r.total;
  j["macro_precision"] = r.macro_precision;
  j["macro_recall"] = r.macro_recall;
  j["macro_f1"] = r.macro_f1;
  j["zero_denominator"] = r.any_undefined;
  nlohmann::json per = nlohmann::json::object();
  for (std::size_t c = 0; c < kNumLevels; ++c) {
    const auto& m = r.per_class[c];
    per[kNames[c]] = {{"precision", m.precision},
                      {"recall", m.recall},
                      {"f1", m.f1},
                      {"precision_undefined", m.precision_undefined},
                      {"recall_undefined", m.recall_undefined}};
  }
  j["per_class"] = per;
  nlohmann::json conf = nlohmann::json::array();
  for (const auto& row : r.confusion) conf.push_back(row);
  j["confusion"] = conf;
  return j;
}

}  // namespace essaycoh

#endif  // ESSAYCOH_METRICS_HPP_
