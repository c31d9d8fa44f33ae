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

// Feature wiring: the discriminator's window probabilities become the
// coherent-window ratio, the restorer's labels become six error counts.

#ifndef ESSAYCOH_FEATURIZE_HPP_
#define ESSAYCOH_FEATURIZE_HPP_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "essaycoh/corpus.hpp"
#include "essaycoh/errors.hpp"
#include "essaycoh/io.hpp"
#include "essaycoh/punct.hpp"
#include "essaycoh/sampling.hpp"
#include "essaycoh/scorer.hpp"

namespace essaycoh {

struct FeaturizeOptions {
  int window = 3;
  CohRatioOptions ratio;
  // Score windows without an external prediction with heuristic_discriminator.
  bool heuristic = false;
};

// Window probabilities for one essay. External predictions win; gaps are
// filled by the heuristic when allowed.
inline std::vector<double> window_probabilities(const Essay& essay, const io::CohPreds* preds,
                                                const FeaturizeOptions& opts) {
  const std::vector<Window> windows = essay_windows(essay, opts.window);
  const std::map<std::size_t, double>* mine = nullptr;
  if (preds) {
    if (auto it = preds->find(essay.id); it != preds->end()) mine = &it->second;
  }
  if (mine && !mine->empty() && mine->rbegin()->first >= windows.size()) {
    throw InputError("essay '" + essay.id + "': coherence prediction for window " +
                     std::to_string(mine->rbegin()->first) + " but the essay has " +
                     std::to_string(windows.size()) + " windows");
  }
  std::vector<double> probs;
  probs.reserve(windows.size());
  for (const Window& w : windows) {
    if (mine) {
      if (auto it = mine->find(w.index); it != mine->end()) {
        probs.push_back(it->second);
        continue;
      }
    }
    if (!opts.heuristic) {
      throw InputError("essay '" + essay.id + "': no coherence prediction for window " +
                       std::to_string(w.index) + " (pass --heuristic to fill gaps)");
    }
    probs.push_back(heuristic_discriminator(w));
  }
  return probs;
}

inline std::vector<FeatureRow> featurize(std::span<const Essay> essays, const io::CohPreds* preds,
                                         const std::map<std::string, io::PunctLabelRecord>& labels,
                                         const FeaturizeOptions& opts) {
  check_window_size(opts.window);
  std::vector<FeatureRow> rows;
  rows.reserve(essays.size());
  for (const Essay& essay : essays) {
    auto it = labels.find(essay.id);
    if (it == labels.end()) {
      throw InputError("essay '" + essay.id + "': no punctuation labels");
    }
    const PunctLabelSeq reference = io::reference_for(essay, it->second);
    const PunctErrorCounts counts = count_essay(essay_text(essay), reference);
    const double ratio = coh_ratio(window_probabilities(essay, preds, opts), opts.ratio);
    rows.push_back({essay.id, assemble_features(ratio, counts), essay.level});
  }
  return rows;
}

}  // namespace essaycoh

#endif  // ESSAYCOH_FEATURIZE_HPP_
