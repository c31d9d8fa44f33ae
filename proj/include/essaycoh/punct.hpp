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

// Misused-punctuation counting. The author's slot labels are compared with
// the labels of a punctuation restorer run over the same stripped text.
// Both sequences share one base, so alignment is positional.
//
//   author \ reference   NONE        COMMA       PERIOD
//   NONE                 -           ins_comma   ins_period
//   COMMA                del_comma   -           rep_period
//   PERIOD               del_period  rep_comma   -
//
// "rep" counters are named after the reference mark: rep_comma is a comma
// slot the author realized as a period.

#ifndef ESSAYCOH_PUNCT_HPP_
#define ESSAYCOH_PUNCT_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include <openssl/evp.h>

#include "essaycoh/corpus.hpp"
#include "essaycoh/errors.hpp"
#include "essaycoh/utf8.hpp"

namespace essaycoh {

struct PunctErrorCounts {
  std::int64_t del_comma = 0;
  std::int64_t ins_comma = 0;
  std::int64_t rep_comma = 0;
  std::int64_t del_period = 0;
  std::int64_t ins_period = 0;
  std::int64_t rep_period = 0;

  bool operator==(const PunctErrorCounts&) const = default;

  std::int64_t total() const {
    return del_comma + ins_comma + rep_comma + del_period + ins_period + rep_period;
  }

  PunctErrorCounts& operator+=(const PunctErrorCounts& o) {
    del_comma += o.del_comma;
    ins_comma += o.ins_comma;
    rep_comma += o.rep_comma;
    del_period += o.del_period;
    ins_period += o.ins_period;
    rep_period += o.rep_period;
    return *this;
  }

  friend PunctErrorCounts operator+(PunctErrorCounts a, const PunctErrorCounts& b) {
    return a += b;
  }
};

inline PunctErrorCounts align_and_count(const PunctLabelSeq& original,
                                        const PunctLabelSeq& reference) {
  if (original.labels.size() != original.base.size() ||
      reference.labels.size() != reference.base.size()) {
    throw InvariantError("label sequence length differs from its base");
  }
  const std::size_t n = std::min(original.base.size(), reference.base.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (original.base[i] != reference.base[i]) {
      throw AlignmentError(i, "base texts differ at character " + std::to_string(i));
    }
  }
  if (original.base.size() != reference.base.size()) {
    throw AlignmentError(n, "base texts differ in length (" +
                                std::to_string(original.base.size()) + " vs " +
                                std::to_string(reference.base.size()) + ")");
  }

  PunctErrorCounts c;
  for (std::size_t i = 0; i < n; ++i) {
    const SlotLabel o = original.labels[i];
    const SlotLabel r = reference.labels[i];
    if (o == r) continue;
    switch (o) {
      case SlotLabel::kNone:
        (r == SlotLabel::kComma ? c.ins_comma : c.ins_period)++;
        break;
      case SlotLabel::kComma:
        (r == SlotLabel::kNone ? c.del_comma : c.rep_period)++;
        break;
      case SlotLabel::kPeriod:
        (r == SlotLabel::kNone ? c.del_period : c.rep_comma)++;
        break;
    }
  }
  return c;
}

// Normalizes raw essay text, derives the author's labels and counts errors
// against the reference.
inline PunctErrorCounts count_essay(std::string_view essay_text,
                                    const PunctLabelSeq& reference_labels) {
  const PunctLabelSeq original =
      derive_labels(std::u32string_view(normalize_punct(utf8::decode(essay_text))));
  return align_and_count(original, reference_labels);
}

// Lowercase hex SHA-256 of a byte string.
inline std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw InvariantError("SHA-256 computation failed");
  }
  std::string hex;
  hex.reserve(len * 2);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

// Hash carried in punct_labels.jsonl: SHA-256 of the UTF-8 base text.
inline std::string base_sha256(const PunctLabelSeq& seq) {
  return sha256_hex(utf8::encode(seq.base));
}

}  // namespace essaycoh

#endif  // ESSAYCOH_PUNCT_HPP_
