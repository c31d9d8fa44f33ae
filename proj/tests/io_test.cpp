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

#include "essaycoh/io.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "essaycoh/csv.hpp"
#include "essaycoh/featurize.hpp"

namespace essaycoh {
namespace {

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

TEST(EssaysIoTest, RoundTrip) {
  const Essay e{"e1", "标题", {"春天来了。", "花开了, \"好\"。"}, CoherenceLevel::kModerate};
  std::stringstream ss;
  io::write_essay(ss, e);
  io::write_essay(ss, Essay{"e2", std::nullopt, {"x"}, std::nullopt});
  EXPECT_EQ(ss.str().rfind(R"({"id":"e1","title":"标题","paragraphs":)", 0), 0u);
  const auto back = io::read_essays(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].paragraphs, e.paragraphs);
  EXPECT_EQ(back[0].title, e.title);
  EXPECT_EQ(back[0].level, e.level);
  EXPECT_FALSE(back[1].level);
}

TEST(EssaysIoTest, SchemaViolationsCarryLineNumbers) {
  auto read = [](const std::string& text) {
    return error_of([&] {
      std::istringstream in(text);
      io::read_essays(in);
    });
  };
  EXPECT_EQ(read("{\"id\":\"a\",\"paragraphs\":[\"x\"]}\n\nnot json\n").rfind("line 3:", 0), 0u);
  EXPECT_EQ(read("{\"paragraphs\":[\"x\"]}\n").rfind("line 1:", 0), 0u);
  EXPECT_NE(read("{\"id\":\"a\",\"paragraphs\":[\"x\"],\"level\":3}\n"), "");
  EXPECT_NE(read("{\"id\":\"a\",\"paragraphs\":\"x\"}\n"), "");
  EXPECT_NE(read("{\"id\":\"a\",\"paragraphs\":[\"x\"]}\n{\"id\":\"a\",\"paragraphs\":[\"y\"]}\n"),
            "");
  EXPECT_EQ(read(""), "");
}

TEST(SamplesIoTest, RoundTrip) {
  std::stringstream ss;
  io::write_sample(ss, {{"a", "b"}, SampleLabel::kCoherent, "e", std::nullopt});
  io::write_sample(ss, {{"c", "b"}, SampleLabel::kIncoherent, "e", 0});
  EXPECT_EQ(ss.str(),
            "{\"essay_id\":\"e\",\"sentences\":[\"a\",\"b\"],\"label\":1,\"replaced_pos\":null}\n"
            "{\"essay_id\":\"e\",\"sentences\":[\"c\",\"b\"],\"label\":0,\"replaced_pos\":0}\n");
  const auto back = io::read_samples(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].replaced_pos, std::optional<std::size_t>(0));
  std::istringstream bad(R"({"essay_id":"e","sentences":["a"],"label":0,"replaced_pos":3})");
  EXPECT_THROW(io::read_samples(bad), InputError);
}

TEST(WindowsIoTest, RoundTrip) {
  std::stringstream ss;
  io::write_window(ss, {"e", 2, {"a", "b", "c"}});
  const auto back = io::read_windows(ss);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].index, 2u);
  EXPECT_EQ(back[0].sentences.size(), 3u);
}

TEST(CohPredsIoTest, ParsesAndValidates) {
  std::stringstream ss;
  io::write_coh_pred(ss, "e", 0, 0.25);
  io::write_coh_pred(ss, "e", 1, 1.0);
  const auto p = io::read_coh_preds(ss);
  EXPECT_EQ(p.at("e").at(0), 0.25);
  std::istringstream bad(R"({"essay_id":"e","window_id":0,"p_coherent":1.5})");
  EXPECT_THROW(io::read_coh_preds(bad), InputError);
  std::istringstream dup(
      "{\"essay_id\":\"e\",\"window_id\":0,\"p_coherent\":0.5}\n"
      "{\"essay_id\":\"e\",\"window_id\":0,\"p_coherent\":0.5}\n");
  EXPECT_THROW(io::read_coh_preds(dup), InputError);
}

TEST(PunctLabelsIoTest, RoundTripAndHashCheck) {
  const Essay e{"e", std::nullopt, {"有一次我上学要迟到了。闷着头硬闯红灯。"}, std::nullopt};
  const PunctLabelSeq reference = derive_labels("有一次我上学要迟到了，闷着头硬闯红灯。");
  std::stringstream ss;
  io::write_punct_labels(ss, "e", reference);
  const auto recs = io::read_punct_labels(ss);
  const PunctLabelSeq back = io::reference_for(e, recs.at("e"));
  EXPECT_EQ(back.labels, reference.labels);
  EXPECT_EQ(count_essay(essay_text(e), back).rep_comma, 1);

  const Essay other{"e", std::nullopt, {"完全不同的文字。"}, std::nullopt};
  EXPECT_THROW(io::reference_for(other, recs.at("e")), InputError);
  auto short_rec = recs.at("e");
  short_rec.labels.pop_back();
  EXPECT_THROW(io::reference_for(e, short_rec), InputError);

  std::istringstream bad(R"({"essay_id":"e","base_sha256":"xyz","labels":[0]})");
  EXPECT_THROW(io::read_punct_labels(bad), InputError);
}

TEST(CsvTest, QuotingRoundTrip) {
  std::stringstream ss;
  csv::write_row(ss, {"plain", "with,comma", "with \"quote\"", "multi\nline", ""});
  csv::Reader r(ss);
  const auto rec = r.next();
  ASSERT_TRUE(rec);
  EXPECT_EQ(*rec, (std::vector<std::string>{"plain", "with,comma", "with \"quote\"",
                                            "multi\nline", ""}));
  EXPECT_FALSE(r.next());
}

TEST(CsvTest, UnterminatedQuote) {
  std::istringstream in("a,\"b\n");
  csv::Reader r(in);
  EXPECT_THROW(r.next(), InputError);
}

TEST(FeaturesIoTest, RoundTripIsExact) {
  std::vector<FeatureRow> rows(2);
  rows[0] = {"a,1", {1.0 / 3.0, 1, 0, 2, 0, 0, 5}, CoherenceLevel::kExcellent};
  rows[1] = {"b", {0.1, 0, 0, 0, 0, 0, 0}, std::nullopt};
  std::stringstream ss;
  io::write_features(ss, rows);
  EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')),
            "essay_id,num_coh_norm,num_del_comma,num_ins_comma,num_rep_comma,num_del_period,"
            "num_ins_period,num_rep_period,level");
  const auto back = io::read_features(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].essay_id, "a,1");
  EXPECT_EQ(back[0].x, rows[0].x);
  EXPECT_EQ(back[0].level, rows[0].level);
  EXPECT_FALSE(back[1].level);
}

TEST(FeaturesIoTest, Violations) {
  const std::string header =
      "essay_id,num_coh_norm,num_del_comma,num_ins_comma,num_rep_comma,num_del_period,"
      "num_ins_period,num_rep_period,level\n";
  auto read = [](const std::string& text) {
    return error_of([&] {
      std::istringstream in(text);
      io::read_features(in);
    });
  };
  EXPECT_EQ(read(header), "");
  EXPECT_NE(read("essay_id,x\n"), "");
  EXPECT_NE(read(""), "");
  EXPECT_EQ(read(header + "a,1.5,0,0,0,0,0,0,1\n").rfind("line 2:", 0), 0u);
  EXPECT_NE(read(header + "a,0.5,-1,0,0,0,0,0,1\n"), "");
  EXPECT_NE(read(header + "a,0.5,x,0,0,0,0,0,1\n"), "");
  EXPECT_NE(read(header + "a,0.5,0,0,0,0,0,0,3\n"), "");
  EXPECT_NE(read(header + "a,0.5,0,0,0,0,0,1\n"), "");
  EXPECT_NE(read(header + "a,nan,0,0,0,0,0,0,1\n"), "");
}

TEST(PredictionsIoTest, RoundTrip) {
  std::vector<Prediction> p = {{"a", 1.4999999999999998, CoherenceLevel::kModerate}};
  std::stringstream ss;
  io::write_predictions(ss, p);
  const auto back = io::read_predictions(ss);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].raw_score, p[0].raw_score);
  EXPECT_EQ(back[0].level, p[0].level);
}

TEST(FeaturizeTest, ExternalPredictionsAndHeuristicFill) {
  const Essay e{"e", std::nullopt, {"春天来了。春天真美。我们去玩。秋天到了。"}, std::nullopt};
  std::stringstream ss;
  io::write_punct_labels(ss, "e", derive_labels(essay_text(e)));
  const auto labels = io::read_punct_labels(ss);

  io::CohPreds preds;
  preds["e"][0] = 0.9;
  preds["e"][1] = 0.1;
  FeaturizeOptions opts;
  opts.window = 2;
  EXPECT_THROW(featurize(std::vector<Essay>{e}, &preds, labels, opts), InputError);
  preds["e"][2] = 0.7;
  auto rows = featurize(std::vector<Essay>{e}, &preds, labels, opts);
  EXPECT_DOUBLE_EQ(rows[0].x[0], 2.0 / 3.0);
  EXPECT_EQ(rows[0].x[1] + rows[0].x[6], 0.0);

  preds["e"].erase(2);
  opts.heuristic = true;
  rows = featurize(std::vector<Essay>{e}, &preds, labels, opts);
  EXPECT_DOUBLE_EQ(rows[0].x[0], 1.0 / 3.0);

  preds["e"][7] = 0.5;
  EXPECT_THROW(featurize(std::vector<Essay>{e}, &preds, labels, opts), InputError);
  EXPECT_THROW(featurize(std::vector<Essay>{e}, nullptr, {}, opts), InputError);
}

}  // namespace
}  // namespace essaycoh
