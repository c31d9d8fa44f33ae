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

// Readers and writers for the pipeline's staging files.
//
//   essays.jsonl        {"id", "title": str|null, "paragraphs": [str], "level": 0|1|2|null}
//   windows.jsonl       {"essay_id", "window_id", "sentences": [str]}
//   samples.jsonl       {"essay_id", "sentences": [str], "label": 0|1, "replaced_pos": int|null}
//   coh_preds.jsonl     {"essay_id", "window_id", "p_coherent": f}
//   punct_labels.jsonl  {"essay_id", "base_sha256": hex, "labels": [0|1|2]}
//   punct_counts.csv    essay_id,num_del_comma,...,num_rep_period
//   features.csv        essay_id,num_coh_norm,...,num_rep_period,level
//   predictions.csv     essay_id,raw_score,level
//
// Every reader reports problems as InputError prefixed with the 1-based line
// number. Blank lines in JSONL files are skipped.

#ifndef ESSAYCOH_IO_HPP_
#define ESSAYCOH_IO_HPP_

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "essaycoh/corpus.hpp"
#include "essaycoh/csv.hpp"
#include "essaycoh/errors.hpp"
#include "essaycoh/punct.hpp"
#include "essaycoh/sampling.hpp"
#include "essaycoh/scorer.hpp"

namespace essaycoh::io {

using nlohmann::json;
using ojson = nlohmann::ordered_json;  // writers keep schema key order

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return in;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path);
  return out;
}

inline std::string line_prefix(std::size_t line) { return "line " + std::to_string(line) + ": "; }

// Calls fn(parsed_object, line_number) for every non-blank line.
inline void for_each_jsonl(std::istream& in,
                           const std::function<void(const json&, std::size_t)>& fn) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InputError(line_prefix(lineno) + "malformed JSON (" + e.what() + ")");
    }
    if (!j.is_object()) throw InputError(line_prefix(lineno) + "expected a JSON object");
    try {
      fn(j, lineno);
    } catch (const AlignmentError&) {
      throw;
    } catch (const InputError& e) {
      const std::string what = e.what();
      if (what.rfind("line ", 0) == 0) throw;
      throw InputError(line_prefix(lineno) + what);
    } catch (const json::exception& e) {
      throw InputError(line_prefix(lineno) + e.what());
    }
  }
}

template <class Json>
std::string dump_line(const Json& j) {
  return j.dump(-1, ' ', false, Json::error_handler_t::strict) + "\n";
}

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string string_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw InputError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

inline std::int64_t int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw InputError(std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

inline std::vector<std::string> string_list(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array()) throw InputError(std::string("field '") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& s : v) {
    if (!s.is_string()) throw InputError(std::string("field '") + key + "' must hold strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

inline std::optional<CoherenceLevel> level_from_int(std::int64_t v) {
  if (v < 0 || v > 2) throw InputError("level must be 0, 1, 2 or null");
  return static_cast<CoherenceLevel>(v);
}

}  // namespace detail

// ---------------------------------------------------------------- essays

inline Essay parse_essay(const json& j) {
  Essay e;
  e.id = detail::string_field(j, "id");
  if (e.id.empty()) throw InputError("essay id is empty");
  if (j.contains("title") && !j.at("title").is_null()) e.title = detail::string_field(j, "title");
  e.paragraphs = detail::string_list(j, "paragraphs");
  for (const auto& p : e.paragraphs) {
    if (p.empty()) throw InputError("essay '" + e.id + "' has an empty paragraph");
  }
  if (j.contains("level") && !j.at("level").is_null()) {
    e.level = detail::level_from_int(detail::int_field(j, "level"));
  }
  return e;
}

inline std::vector<Essay> read_essays(std::istream& in) {
  std::vector<Essay> out;
  std::set<std::string> ids;
  for_each_jsonl(in, [&](const json& j, std::size_t) {
    Essay e = parse_essay(j);
    if (!ids.insert(e.id).second) throw InputError("duplicate essay id '" + e.id + "'");
    out.push_back(std::move(e));
  });
  return out;
}

inline std::vector<Essay> read_essays(const std::string& path) {
  auto in = open_in(path);
  return read_essays(in);
}

inline void write_essay(std::ostream& out, const Essay& e) {
  ojson j;
  j["id"] = e.id;
  j["title"] = e.title ? ojson(*e.title) : ojson(nullptr);
  j["paragraphs"] = e.paragraphs;
  j["level"] = e.level ? ojson(static_cast<int>(*e.level)) : ojson(nullptr);
  out << dump_line(j);
}

// ---------------------------------------------------------------- windows

inline void write_window(std::ostream& out, const Window& w) {
  ojson j;
  j["essay_id"] = w.essay_id;
  j["window_id"] = w.index;
  j["sentences"] = w.sentences;
  out << dump_line(j);
}

inline std::vector<Window> read_windows(std::istream& in) {
  std::vector<Window> out;
  for_each_jsonl(in, [&](const json& j, std::size_t) {
    Window w;
    w.essay_id = detail::string_field(j, "essay_id");
    const auto id = detail::int_field(j, "window_id");
    if (id < 0) throw InputError("window_id must be non-negative");
    w.index = static_cast<std::size_t>(id);
    w.sentences = detail::string_list(j, "sentences");
    if (w.sentences.empty() || w.sentences.size() > 3) {
      throw InputError("a window holds 1 to 3 sentences");
    }
    out.push_back(std::move(w));
  });
  return out;
}

// ---------------------------------------------------------------- samples

inline void write_sample(std::ostream& out, const LabeledSample& s) {
  ojson j;
  j["essay_id"] = s.essay_id;
  j["sentences"] = s.sentences;
  j["label"] = static_cast<int>(s.label);
  j["replaced_pos"] = s.replaced_pos ? ojson(*s.replaced_pos) : ojson(nullptr);
  out << dump_line(j);
}

inline std::vector<LabeledSample> read_samples(std::istream& in) {
  std::vector<LabeledSample> out;
  for_each_jsonl(in, [&](const json& j, std::size_t) {
    LabeledSample s;
    s.essay_id = detail::string_field(j, "essay_id");
    s.sentences = detail::string_list(j, "sentences");
    const auto label = detail::int_field(j, "label");
    if (label != 0 && label != 1) throw InputError("label must be 0 or 1");
    s.label = static_cast<SampleLabel>(label);
    const json& rp = detail::field(j, "replaced_pos");
    if (!rp.is_null()) {
      const auto p = detail::int_field(j, "replaced_pos");
      if (p < 0 || static_cast<std::size_t>(p) >= s.sentences.size()) {
        throw InputError("replaced_pos outside the window");
      }
      s.replaced_pos = static_cast<std::size_t>(p);
    }
    out.push_back(std::move(s));
  });
  return out;
}

// ---------------------------------------------------------------- coh_preds

// essay id -> (window id -> p_coherent)
using CohPreds = std::map<std::string, std::map<std::size_t, double>>;

inline CohPreds read_coh_preds(std::istream& in) {
  CohPreds out;
  for_each_jsonl(in, [&](const json& j, std::size_t) {
    const std::string id = detail::string_field(j, "essay_id");
    const auto w = detail::int_field(j, "window_id");
    if (w < 0) throw InputError("window_id must be non-negative");
    const json& p = detail::field(j, "p_coherent");
    if (!p.is_number()) throw InputError("p_coherent must be a number");
    const double prob = p.get<double>();
    if (!(prob >= 0.0 && prob <= 1.0)) throw InputError("p_coherent outside [0, 1]");
    if (!out[id].emplace(static_cast<std::size_t>(w), prob).second) {
      throw InputError("duplicate window " + std::to_string(w) + " for essay '" + id + "'");
    }
  });
  return out;
}

inline void write_coh_pred(std::ostream& out, const std::string& essay_id, std::size_t window_id,
                           double p) {
  ojson j;
  j["essay_id"] = essay_id;
  j["window_id"] = window_id;
  j["p_coherent"] = p;
  out << dump_line(j);
}

// ---------------------------------------------------------------- punct_labels

struct PunctLabelRecord {
  std::string essay_id;
  std::string base_sha256;
  std::vector<SlotLabel> labels;
};

inline std::map<std::string, PunctLabelRecord> read_punct_labels(std::istream& in) {
  std::map<std::string, PunctLabelRecord> out;
  for_each_jsonl(in, [&](const json& j, std::size_t) {
    PunctLabelRecord r;
    r.essay_id = detail::string_field(j, "essay_id");
    r.base_sha256 = detail::string_field(j, "base_sha256");
    if (r.base_sha256.size() != 64 ||
        r.base_sha256.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos) {
      throw InputError("base_sha256 must be 64 hex digits");
    }
    for (char& c : r.base_sha256) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    const json& labels = detail::field(j, "labels");
    if (!labels.is_array()) throw InputError("labels must be an array");
    for (const auto& l : labels) {
      if (!l.is_number_integer() || l.get<int>() < 0 || l.get<int>() > 2) {
        throw InputError("labels must be 0, 1 or 2");
      }
      r.labels.push_back(static_cast<SlotLabel>(l.get<int>()));
    }
    const std::string id = r.essay_id;
    if (!out.emplace(id, std::move(r)).second) {
      throw InputError("duplicate punctuation labels for essay '" + id + "'");
    }
  });
  return out;
}

inline void write_punct_labels(std::ostream& out, const std::string& essay_id,
                               const PunctLabelSeq& seq) {
  ojson j;
  j["essay_id"] = essay_id;
  j["base_sha256"] = base_sha256(seq);
  ojson labels = ojson::array();
  for (SlotLabel l : seq.labels) labels.push_back(static_cast<int>(l));
  j["labels"] = labels;
  out << dump_line(j);
}

// Rebuilds the reference sequence of an essay from its label record, after
// checking the record against the essay's own stripped text.
inline PunctLabelSeq reference_for(const Essay& essay, const PunctLabelRecord& rec) {
  PunctLabelSeq author = essay_labels(essay);
  if (base_sha256(author) != rec.base_sha256) {
    throw InputError("essay '" + essay.id + "': base_sha256 does not match the essay text");
  }
  if (rec.labels.size() != author.base.size()) {
    throw InputError("essay '" + essay.id + "': " + std::to_string(rec.labels.size()) +
                     " labels for " + std::to_string(author.base.size()) + " characters");
  }
  return {std::move(author.base), rec.labels};
}

// ---------------------------------------------------------------- csv files

inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline double parse_real(const std::string& s, std::size_t line, const std::string& column) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw InputError(line_prefix(line) + "column " + column + ": not a finite number: '" + s + "'");
  }
  return v;
}

inline const std::vector<std::string>& punct_counts_header() {
  static const std::vector<std::string> h = {"essay_id",       "num_del_comma",  "num_ins_comma",
                                             "num_rep_comma",  "num_del_period", "num_ins_period",
                                             "num_rep_period"};
  return h;
}

inline void write_punct_counts(std::ostream& out,
                               const std::vector<std::pair<std::string, PunctErrorCounts>>& rows) {
  csv::write_row(out, punct_counts_header());
  for (const auto& [id, c] : rows) {
    csv::write_row(out, {id, std::to_string(c.del_comma), std::to_string(c.ins_comma),
                         std::to_string(c.rep_comma), std::to_string(c.del_period),
                         std::to_string(c.ins_period), std::to_string(c.rep_period)});
  }
}

inline std::vector<std::string> features_header() {
  std::vector<std::string> h = {"essay_id"};
  for (const auto& n : coherence_feature_names()) h.push_back(n);
  h.push_back("level");
  return h;
}

inline void write_features(std::ostream& out, std::span<const FeatureRow> rows) {
  csv::write_row(out, features_header());
  for (const FeatureRow& r : rows) {
    std::vector<std::string> f = {r.essay_id};
    for (double v : r.x) f.push_back(format_real(v));
    f.push_back(r.level ? std::to_string(static_cast<int>(*r.level)) : "");
    csv::write_row(out, f);
  }
}

inline std::vector<FeatureRow> read_features(std::istream& in) {
  csv::Reader reader(in);
  const auto header = reader.next();
  if (!header) throw InputError("features.csv: missing header");
  if (*header != features_header()) {
    throw InputError("features.csv: header does not match the expected feature columns");
  }
  const auto names = features_header();
  std::vector<FeatureRow> out;
  while (auto rec = reader.next()) {
    const std::size_t line = reader.line();
    if (rec->size() == 1 && rec->front().empty()) continue;
    if (rec->size() != names.size()) {
      throw InputError(line_prefix(line) + "expected " + std::to_string(names.size()) +
                       " columns, got " + std::to_string(rec->size()));
    }
    FeatureRow r;
    r.essay_id = (*rec)[0];
    if (r.essay_id.empty()) throw InputError(line_prefix(line) + "empty essay_id");
    for (std::size_t k = 0; k < kNumFeatures; ++k) {
      r.x[k] = parse_real((*rec)[k + 1], line, names[k + 1]);
      if (k > 0 && r.x[k] < 0.0) {
        throw InputError(line_prefix(line) + names[k + 1] + " must be non-negative");
      }
    }
    if (r.x[0] < 0.0 || r.x[0] > 1.0) {
      throw InputError(line_prefix(line) + "num_coh_norm must lie in [0, 1]");
    }
    const std::string& lv = rec->back();
    if (!lv.empty()) {
      if (lv != "0" && lv != "1" && lv != "2") {
        throw InputError(line_prefix(line) + "level must be 0, 1, 2 or blank");
      }
      r.level = static_cast<CoherenceLevel>(lv[0] - '0');
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<FeatureRow> read_features(const std::string& path) {
  auto in = open_in(path);
  return read_features(in);
}

inline void write_predictions(std::ostream& out, std::span<const Prediction> preds) {
  csv::write_row(out, {"essay_id", "raw_score", "level"});
  for (const auto& p : preds) {
    csv::write_row(out, {p.essay_id, format_real(p.raw_score),
                         std::to_string(static_cast<int>(p.level))});
  }
}

inline std::vector<Prediction> read_predictions(std::istream& in) {
  csv::Reader reader(in);
  const auto header = reader.next();
  if (!header || *header != std::vector<std::string>{"essay_id", "raw_score", "level"}) {
    throw InputError("predictions.csv: header must be essay_id,raw_score,level");
  }
  std::vector<Prediction> out;
  while (auto rec = reader.next()) {
    const std::size_t line = reader.line();
    if (rec->size() == 1 && rec->front().empty()) continue;
    if (rec->size() != 3) throw InputError(line_prefix(line) + "expected 3 columns");
    Prediction p;
    p.essay_id = (*rec)[0];
    p.raw_score = parse_real((*rec)[1], line, "raw_score");
    const std::string& lv = (*rec)[2];
    if (lv != "0" && lv != "1" && lv != "2") {
      throw InputError(line_prefix(line) + "level must be 0, 1 or 2");
    }
    p.level = static_cast<CoherenceLevel>(lv[0] - '0');
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace essaycoh::io

#endif  // ESSAYCOH_IO_HPP_
