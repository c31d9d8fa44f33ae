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

// Essay ingestion: punctuation normalization, sentence segmentation and
// derivation of per-character punctuation slot labels.
//
// The unit of segmentation is the Unicode code point. After normalization
// only two marks survive, the full-width comma U+FF0C and the ideographic
// full stop U+3002; every other punctuation mark is either folded onto one of
// them or deleted.

#ifndef ESSAYCOH_CORPUS_HPP_
#define ESSAYCOH_CORPUS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "essaycoh/utf8.hpp"

namespace essaycoh {

inline constexpr char32_t kComma = U'，';
inline constexpr char32_t kPeriod = U'。';

enum class CoherenceLevel : std::uint8_t { kPoor = 0, kModerate = 1, kExcellent = 2 };

inline constexpr int kNumLevels = 3;

struct Essay {
  std::string id;
  std::optional<std::string> title;  // carried, not scored
  std::vector<std::string> paragraphs;
  std::optional<CoherenceLevel> level;
};

// Label of the slot after one character. Serialized as its integer value.
enum class SlotLabel : std::uint8_t { kNone = 0, kComma = 1, kPeriod = 2 };

struct PunctLabelSeq {
  std::u32string base;  // punctuation-free text
  std::vector<SlotLabel> labels;  // labels[i] is the mark following base[i]

  std::size_t size() const { return base.size(); }
  bool operator==(const PunctLabelSeq&) const = default;

  // Reinserts each label's mark after its character.
  std::string render() const {
    std::u32string out;
    out.reserve(base.size() * 2);
    for (std::size_t i = 0; i < base.size(); ++i) {
      out.push_back(base[i]);
      if (labels[i] == SlotLabel::kComma) out.push_back(kComma);
      if (labels[i] == SlotLabel::kPeriod) out.push_back(kPeriod);
    }
    return utf8::encode(out);
  }
};

namespace punct_table {

enum class Fold { kKeep, kComma, kPeriod, kDelete };

struct Range {
  char32_t lo, hi;
};

// Code points of Unicode general category P (punctuation) in the blocks
// student essays actually use. Symbols (category S) such as ~ + = are kept.
inline constexpr Range kPunctuation[] = {
    {0x21, 0x23},     {0x25, 0x2A},     {0x2C, 0x2F},     {0x3A, 0x3B},
    {0x3F, 0x40},     {0x5B, 0x5D},     {0x5F, 0x5F},     {0x7B, 0x7B},
    {0x7D, 0x7D},     {0xA1, 0xA1},     {0xA7, 0xA7},     {0xAB, 0xAB},
    {0xB6, 0xB7},     {0xBB, 0xBB},     {0xBF, 0xBF},     {0x2010, 0x2027},
    {0x2030, 0x2043}, {0x2045, 0x2051}, {0x2053, 0x205E}, {0x3001, 0x3003},
    {0x3008, 0x3011}, {0x3014, 0x301F}, {0x3030, 0x3030}, {0x303D, 0x303D},
    {0x30A0, 0x30A0}, {0x30FB, 0x30FB}, {0xFE10, 0xFE19}, {0xFE30, 0xFE4F},
    {0xFE50, 0xFE52}, {0xFE54, 0xFE61}, {0xFE63, 0xFE63}, {0xFE68, 0xFE68},
    {0xFE6A, 0xFE6B}, {0xFF01, 0xFF03}, {0xFF05, 0xFF0A}, {0xFF0C, 0xFF0F},
    {0xFF1A, 0xFF1B}, {0xFF1F, 0xFF20}, {0xFF3B, 0xFF3D}, {0xFF3F, 0xFF3F},
    {0xFF5B, 0xFF5B}, {0xFF5D, 0xFF5D}, {0xFF5F, 0xFF65},
};

inline constexpr bool is_punctuation(char32_t cp) {
  for (const Range& r : kPunctuation) {
    if (cp >= r.lo && cp <= r.hi) return true;
  }
  return false;
}

inline constexpr Fold fold(char32_t cp) {
  switch (cp) {
    // commas and colons
    case U'，': case U',': case U'﹐': case U'︐':
    case U'：': case U':': case U'﹕': case U'︓':
      return Fold::kComma;
    // full stops, semicolons, question and exclamation marks
    case U'。': case U'.': case U'．': case U'｡': case U'﹒': case U'︒':
    case U'；': case U';': case U'﹔': case U'︔':
    case U'？': case U'?': case U'﹖': case U'︖': case U'⁇':
    case U'！': case U'!': case U'﹗': case U'︕': case U'‼': case U'⁈': case U'⁉':
      return Fold::kPeriod;
    default:
      return is_punctuation(cp) ? Fold::kDelete : Fold::kKeep;
  }
}

}  // namespace punct_table

inline std::u32string normalize_punct(std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size());
  for (char32_t cp : text) {
    switch (punct_table::fold(cp)) {
      case punct_table::Fold::kKeep: out.push_back(cp); break;
      case punct_table::Fold::kComma: out.push_back(kComma); break;
      case punct_table::Fold::kPeriod: out.push_back(kPeriod); break;
      case punct_table::Fold::kDelete: break;
    }
  }
  return out;
}

inline std::string normalize_punct(std::string_view text) {
  return utf8::encode(normalize_punct(utf8::decode(text)));
}

// Splits normalized text after every full stop. A trailing segment without
// a full stop becomes the last sentence, unless it is whitespace only, in
// which case it is glued onto the previous sentence (or dropped when there
// is none). Concatenating the result gives back the input for any input that
// is not entirely whitespace.
inline std::vector<std::string> split_sentences(std::string_view text) {
  const std::u32string cps = utf8::decode(text);
  std::vector<std::string> out;
  std::u32string current;
  for (char32_t cp : cps) {
    current.push_back(cp);
    if (cp == kPeriod) {
      out.push_back(utf8::encode(current));
      current.clear();
    }
  }
  if (!current.empty()) {
    bool blank = true;
    for (char32_t cp : current) blank = blank && utf8::is_space(cp);
    if (!blank) {
      out.push_back(utf8::encode(current));
    } else if (!out.empty()) {
      out.back() += utf8::encode(current);
    }
  }
  return out;
}

// Strips commas and full stops and labels each remaining character with the
// mark that immediately follows it. In a run of marks the first one wins;
// marks before the first character are dropped.
inline PunctLabelSeq derive_labels(std::u32string_view text) {
  PunctLabelSeq seq;
  seq.base.reserve(text.size());
  seq.labels.reserve(text.size());
  bool in_run = false;
  for (char32_t cp : text) {
    if (cp == kComma || cp == kPeriod) {
      if (!seq.base.empty() && !in_run) {
        seq.labels.back() = cp == kComma ? SlotLabel::kComma : SlotLabel::kPeriod;
      }
      in_run = true;
      continue;
    }
    in_run = false;
    seq.base.push_back(cp);
    seq.labels.push_back(SlotLabel::kNone);
  }
  return seq;
}

inline PunctLabelSeq derive_labels(std::string_view text) {
  return derive_labels(std::u32string_view(utf8::decode(text)));
}

// Full scoring text of an essay: paragraphs concatenated, title excluded.
inline std::string essay_text(const Essay& essay) {
  std::string out;
  for (const auto& p : essay.paragraphs) out += p;
  return out;
}

// Sentences of an essay in order. Paragraph ends also close a sentence.
inline std::vector<std::string> essay_sentences(const Essay& essay) {
  std::vector<std::string> out;
  for (const auto& p : essay.paragraphs) {
    for (auto& s : split_sentences(normalize_punct(p))) out.push_back(std::move(s));
  }
  return out;
}

// Author-side labels for an essay.
inline PunctLabelSeq essay_labels(const Essay& essay) {
  return derive_labels(std::u32string_view(normalize_punct(utf8::decode(essay_text(essay)))));
}

}  // namespace essaycoh

#endif  // ESSAYCOH_CORPUS_HPP_
