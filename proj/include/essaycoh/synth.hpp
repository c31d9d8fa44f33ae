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

// Synthetic essay corpus with known structure, for exercising the pipeline
// without external discriminators or restorers.
//
// Each essay draws a writer tier and, within it, two latent traits: how
// often consecutive sentences stay on topic, and how often punctuation is
// corrupted. Every clause is a topic
// key phrase followed by one of the topic's short phrases; topics use
// disjoint character ranges, so on-topic neighbours share most character
// bigrams and off-topic neighbours share none. The clean text supplies the reference punctuation; the author's text
// is the clean text with marks dropped, swapped or inserted. The gold level
// is a noisy monotone function of the measured features: higher coherent-
// window ratio raises it, every error lowers it.

#ifndef ESSAYCOH_SYNTH_HPP_
#define ESSAYCOH_SYNTH_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "essaycoh/corpus.hpp"
#include "essaycoh/io.hpp"
#include "essaycoh/punct.hpp"
#include "essaycoh/random.hpp"
#include "essaycoh/sampling.hpp"
#include "essaycoh/utf8.hpp"

namespace essaycoh {

struct SynthConfig {
  std::size_t n_essays = 300;
  std::uint64_t seed = 1;
  std::size_t min_sentences = 10;
  std::size_t max_sentences = 16;
  std::size_t n_topics = 12;
  std::size_t phrases_per_topic = 4;
  double max_mark_error_rate = 0.3;    // per reference mark
  double max_insert_rate = 0.01;       // per unmarked slot
  double noise_sd = 0.15;              // on the latent quality score
  int gold_window = 3;                 // window size of the ratio the gold level uses
};

struct SynthCorpus {
  std::vector<Essay> essays;
  std::map<std::string, io::PunctLabelRecord> reference_labels;
  std::vector<double> quality;  // noisy latent score behind each gold level
};

namespace detail {

inline std::u32string synth_phrase(Rng& rng, std::size_t topic, std::size_t len) {
  // 64 code points per topic inside the CJK unified ideographs block.
  const char32_t base = U'一' + static_cast<char32_t>(topic * 64);
  std::u32string p;
  for (std::size_t i = 0; i < len; ++i) p.push_back(base + static_cast<char32_t>(uniform_index(rng, 64)));
  return p;
}

}  // namespace detail

// Quality score behind the gold level; thresholds are fixed so that the
// level is a pure function of (ratio, counts, noise).
inline double synth_quality(double ratio, const PunctErrorCounts& c, double noise) {
  const double comma_errors = static_cast<double>(c.del_comma + c.ins_comma + c.rep_comma);
  const double period_errors = static_cast<double>(c.del_period + c.ins_period + c.rep_period);
  return 3.0 * ratio - 0.15 * comma_errors - 0.25 * period_errors + noise;
}

inline CoherenceLevel synth_level(double quality) {
  if (quality < 0.0) return CoherenceLevel::kPoor;
  if (quality < 2.4) return CoherenceLevel::kModerate;
  return CoherenceLevel::kExcellent;
}

inline SynthCorpus synth_corpus(const SynthConfig& cfg) {
  Rng topic_rng = derive_rng(cfg.seed, std::string_view("topics"));
  std::vector<std::u32string> keys(cfg.n_topics);
  std::vector<std::vector<std::u32string>> phrases(cfg.n_topics);
  for (std::size_t t = 0; t < cfg.n_topics; ++t) {
    keys[t] = detail::synth_phrase(topic_rng, t, 4);
    for (std::size_t k = 0; k < cfg.phrases_per_topic; ++k) {
      phrases[t].push_back(detail::synth_phrase(topic_rng, t, 2));
    }
  }

  SynthCorpus corpus;
  for (std::size_t e = 0; e < cfg.n_essays; ++e) {
    Rng rng = derive_rng(cfg.seed, static_cast<std::uint64_t>(e) + 1);
    // Writers of a given tier tend to be both on topic and careful.
    static constexpr double kStay[3][2] = {{0.0, 0.35}, {0.65, 0.8}, {0.95, 1.0}};
    static constexpr double kErr[3][2] = {{0.6, 1.0}, {0.3, 0.45}, {0.0, 0.1}};
    const std::size_t tier = uniform_index(rng, 3);
    const double stay = uniform(rng, kStay[tier][0], kStay[tier][1]);
    const double err = uniform(rng, kErr[tier][0], kErr[tier][1]);
    const std::size_t n = cfg.min_sentences +
                          uniform_index(rng, cfg.max_sentences - cfg.min_sentences + 1);

    // Clean text.
    std::u32string clean;
    std::size_t topic = uniform_index(rng, cfg.n_topics);
    for (std::size_t s = 0; s < n; ++s) {
      if (s > 0 && !bernoulli(rng, stay)) {
        topic = (topic + 1 + uniform_index(rng, cfg.n_topics - 1)) % cfg.n_topics;
      }
      const std::size_t clauses = 1 + uniform_index(rng, 3);
      for (std::size_t c = 0; c < clauses; ++c) {
        clean += keys[topic];
        clean += phrases[topic][uniform_index(rng, cfg.phrases_per_topic)];
        clean.push_back(c + 1 == clauses ? kPeriod : kComma);
      }
    }
    const PunctLabelSeq reference = derive_labels(std::u32string_view(clean));

    // Author's corrupted punctuation.
    PunctLabelSeq author = reference;
    const double mark_rate = cfg.max_mark_error_rate * err;
    const double insert_rate = cfg.max_insert_rate * err;
    for (SlotLabel& l : author.labels) {
      const bool flip = bernoulli(rng, 0.5);
      if (l == SlotLabel::kNone) {
        if (bernoulli(rng, insert_rate)) l = flip ? SlotLabel::kComma : SlotLabel::kPeriod;
      } else if (bernoulli(rng, mark_rate)) {
        const SlotLabel other = l == SlotLabel::kComma ? SlotLabel::kPeriod : SlotLabel::kComma;
        l = flip ? SlotLabel::kNone : other;
      }
    }

    Essay essay;
    essay.id = "synth-" + std::to_string(e);
    essay.title = "synthetic essay " + std::to_string(e);
    essay.paragraphs = {author.render()};

    const std::vector<Window> windows = essay_windows(essay, cfg.gold_window);
    std::vector<double> probs;
    for (const Window& w : windows) probs.push_back(heuristic_discriminator(w));
    const double ratio = coh_ratio(probs);
    const PunctErrorCounts counts = align_and_count(author, reference);
    const double q = synth_quality(ratio, counts, cfg.noise_sd * normal(rng));
    essay.level = synth_level(q);

    corpus.reference_labels[essay.id] = {essay.id, base_sha256(reference), reference.labels};
    corpus.quality.push_back(q);
    corpus.essays.push_back(std::move(essay));
  }
  return corpus;
}

}  // namespace essaycoh

#endif  // ESSAYCOH_SYNTH_HPP_
