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

// Sentence windows for the local coherence discriminator, balanced
// positive/negative training samples, and the coherent-window ratio feature.

#ifndef ESSAYCOH_SAMPLING_HPP_
#define ESSAYCOH_SAMPLING_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "essaycoh/corpus.hpp"
#include "essaycoh/errors.hpp"
#include "essaycoh/random.hpp"
#include "essaycoh/utf8.hpp"

namespace essaycoh {

struct Window {
  std::string essay_id;
  std::size_t index = 0;
  std::vector<std::string> sentences;

  bool operator==(const Window&) const = default;
};

enum class SampleLabel : std::uint8_t { kIncoherent = 0, kCoherent = 1 };

struct LabeledSample {
  std::vector<std::string> sentences;
  SampleLabel label = SampleLabel::kCoherent;
  std::string essay_id;
  std::optional<std::size_t> replaced_pos;  // negatives only

  bool operator==(const LabeledSample&) const = default;
};

struct SampleSet {
  std::vector<LabeledSample> samples;
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

inline void check_window_size(int k) {
  if (k != 2 && k != 3) {
    throw InputError("window size must be 2 or 3, got " + std::to_string(k));
  }
}

// Consecutive k-sentence windows. An essay shorter than k yields a single
// undersized window so that it can still be scored.
inline std::vector<Window> make_windows(const std::string& essay_id,
                                        std::span<const std::string> sentences, int k) {
  check_window_size(k);
  const std::size_t n = sentences.size();
  const auto width = static_cast<std::size_t>(k);
  std::vector<Window> out;
  if (n == 0) return out;
  if (n < width) {
    out.push_back({essay_id, 0, {sentences.begin(), sentences.end()}});
    return out;
  }
  for (std::size_t i = 0; i + width <= n; ++i) {
    out.push_back({essay_id, i, {sentences.begin() + i, sentences.begin() + i + width}});
  }
  return out;
}

inline std::vector<Window> essay_windows(const Essay& essay, int k) {
  const auto sentences = essay_sentences(essay);
  return make_windows(essay.id, sentences, k);
}

inline constexpr int kMaxRedraws = 10;

// One corrupted copy of the window starting at window_start: a uniformly
// chosen slot is overwritten with a uniformly chosen sentence from outside
// the window. Returns nothing when no sentence outside the window exists or
// every draw matched the replaced text.
inline std::optional<LabeledSample> gen_negative(std::span<const std::string> sentences,
                                                 std::size_t window_start, int k, Rng& rng,
                                                 const std::string& essay_id = {}) {
  check_window_size(k);
  const auto width = static_cast<std::size_t>(k);
  const std::size_t n = sentences.size();
  if (window_start + width > n || n < width + 1) return std::nullopt;

  const auto pos = static_cast<std::size_t>(uniform_index(rng, width));
  const std::size_t outside = n - width;
  const std::string& replaced = sentences[window_start + pos];
  for (int attempt = 0; attempt <= kMaxRedraws; ++attempt) {
    std::size_t j = static_cast<std::size_t>(uniform_index(rng, outside));
    if (j >= window_start) j += width;
    if (sentences[j] == replaced) continue;
    LabeledSample sample;
    sample.sentences.assign(sentences.begin() + window_start,
                            sentences.begin() + window_start + width);
    sample.sentences[pos] = sentences[j];
    sample.label = SampleLabel::kIncoherent;
    sample.essay_id = essay_id;
    sample.replaced_pos = pos;
    return sample;
  }
  return std::nullopt;
}

// Positives are all full-size windows; each positive is followed by at most
// one negative drawn from the essay's own generator, seeded by (seed, id).
inline SampleSet gen_dataset(std::span<const Essay> essays, int k, std::uint64_t seed) {
  check_window_size(k);
  const auto width = static_cast<std::size_t>(k);
  SampleSet out;
  for (const Essay& essay : essays) {
    const auto sentences = essay_sentences(essay);
    if (sentences.size() < width) continue;
    Rng rng = derive_rng(seed, essay.id);
    for (std::size_t i = 0; i + width <= sentences.size(); ++i) {
      LabeledSample pos;
      pos.sentences.assign(sentences.begin() + i, sentences.begin() + i + width);
      pos.label = SampleLabel::kCoherent;
      pos.essay_id = essay.id;
      out.samples.push_back(std::move(pos));
      ++out.positives;
      if (auto neg = gen_negative(sentences, i, k, rng, essay.id)) {
        out.samples.push_back(std::move(*neg));
        ++out.negatives;
      }
    }
  }
  return out;
}

struct CohRatioOptions {
  double threshold = 0.5;
  double empty_default = 1.0;
};

// Fraction of windows whose coherence probability reaches the threshold.
inline double coh_ratio(std::span<const double> window_probs, const CohRatioOptions& opts = {}) {
  if (window_probs.empty()) return opts.empty_default;
  std::size_t coherent = 0;
  for (double p : window_probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InputError("window probability outside [0, 1]: " + std::to_string(p));
    }
    if (p >= opts.threshold) ++coherent;
  }
  return static_cast<double>(coherent) / static_cast<double>(window_probs.size());
}

namespace detail {

inline std::u32string strip_marks(const std::string& sentence) {
  std::u32string cps;
  for (char32_t cp : utf8::decode(sentence)) {
    if (cp != kComma && cp != kPeriod) cps.push_back(cp);
  }
  return cps;
}

// Sorted (bigram, count) pairs.
inline std::vector<std::pair<std::uint64_t, double>> bigram_counts(const std::u32string& cps) {
  std::vector<std::uint64_t> keys;
  for (std::size_t i = 0; i + 1 < cps.size(); ++i) {
    keys.push_back((static_cast<std::uint64_t>(cps[i]) << 32) | cps[i + 1]);
  }
  std::sort(keys.begin(), keys.end());
  std::vector<std::pair<std::uint64_t, double>> out;
  for (std::uint64_t key : keys) {
    if (!out.empty() && out.back().first == key) {
      out.back().second += 1.0;
    } else {
      out.emplace_back(key, 1.0);
    }
  }
  return out;
}

inline double bigram_cosine(const std::string& a, const std::string& b) {
  const std::u32string sa = strip_marks(a);
  const std::u32string sb = strip_marks(b);
  const auto va = bigram_counts(sa);
  const auto vb = bigram_counts(sb);
  // Too short for bigrams: only an exact match counts as similar.
  if (va.empty() || vb.empty()) return sa == sb ? 1.0 : 0.0;
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [key, c] : va) na += c * c;
  for (const auto& [key, c] : vb) nb += c * c;
  std::size_t i = 0, j = 0;
  while (i < va.size() && j < vb.size()) {
    if (va[i].first < vb[j].first) {
      ++i;
    } else if (vb[j].first < va[i].first) {
      ++j;
    } else {
      dot += va[i].second * vb[j].second;
      ++i;
      ++j;
    }
  }
  return std::clamp(dot / std::sqrt(na * nb), 0.0, 1.0);
}

}  // namespace detail

// Stand-in for the neural discriminator: minimum character-bigram cosine
// similarity over adjacent sentence pairs of the window.
inline double heuristic_discriminator(const Window& window) {
  if (window.sentences.empty()) throw InputError("empty window");
  double p = 1.0;
  for (std::size_t i = 0; i + 1 < window.sentences.size(); ++i) {
    p = std::min(p, detail::bigram_cosine(window.sentences[i], window.sentences[i + 1]));
  }
  return p;
}

}  // namespace essaycoh

#endif  // ESSAYCOH_SAMPLING_HPP_
