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

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "essaycoh/corpus.hpp"
#include "essaycoh/errors.hpp"
#include "essaycoh/experiment.hpp"
#include "essaycoh/featurize.hpp"
#include "essaycoh/io.hpp"
#include "essaycoh/metrics.hpp"
#include "essaycoh/model_io.hpp"
#include "essaycoh/punct.hpp"
#include "essaycoh/sampling.hpp"
#include "essaycoh/scorer.hpp"
#include "essaycoh/synth.hpp"

namespace {

using namespace essaycoh;

void write_json(const nlohmann::json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  auto out = io::open_out(path);
  out << j.dump(2) << "\n";
}

io::CohPreds load_coh(const std::string& path) {
  auto in = io::open_in(path);
  return io::read_coh_preds(in);
}

std::map<std::string, io::PunctLabelRecord> load_punct(const std::string& path) {
  auto in = io::open_in(path);
  return io::read_punct_labels(in);
}

// Gold levels either from a features.csv level column or an essays.jsonl
// level field, keyed by essay id.
std::map<std::string, CoherenceLevel> load_gold(const std::string& path) {
  std::map<std::string, CoherenceLevel> gold;
  auto add = [&](const std::string& id, std::optional<CoherenceLevel> level) {
    if (!level) throw InputError("gold file has no level for essay '" + id + "'");
    gold[id] = *level;
  };
  if (std::filesystem::path(path).extension() == ".jsonl") {
    for (const Essay& e : io::read_essays(path)) add(e.id, e.level);
  } else {
    for (const FeatureRow& r : io::read_features(path)) add(r.essay_id, r.level);
  }
  return gold;
}

int run(int argc, char** argv) {
  CLI::App app{"Essay coherence scoring: segmentation, negative sampling, features, "
               "monotone GBRT training and evaluation."};
  app.require_subcommand(1);
  app.set_version_flag("--version", "essaycoh 1.0.0");

  // segment
  std::string seg_in, seg_out;
  int seg_window = 2;
  auto* segment = app.add_subcommand("segment", "Split essays into sliding sentence windows");
  segment->add_option("--in", seg_in, "essays.jsonl")->required();
  segment->add_option("--out", seg_out, "windows.jsonl to write")->required();
  segment->add_option("--window", seg_window, "window size (2 or 3)")->capture_default_str();

  // gen-samples
  std::string gs_in, gs_out;
  int gs_window = 2;
  std::uint64_t gs_seed = 0;
  auto* gen = app.add_subcommand("gen-samples", "Generate coherent and incoherent window samples");
  gen->add_option("--in", gs_in, "essays.jsonl")->required();
  gen->add_option("--out", gs_out, "samples.jsonl to write")->required();
  gen->add_option("--window", gs_window, "window size (2 or 3)")->capture_default_str();
  gen->add_option("--seed", gs_seed, "random seed (mandatory)")->required();

  // featurize
  std::string fz_essays, fz_coh, fz_punct, fz_out;
  FeaturizeOptions fz_opts;
  auto* feat = app.add_subcommand("featurize", "Build the 7-column feature table");
  feat->add_option("--essays", fz_essays, "essays.jsonl")->required();
  feat->add_option("--coh", fz_coh, "coh_preds.jsonl with window probabilities");
  feat->add_flag("--heuristic", fz_opts.heuristic,
                 "score windows lacking a prediction with the bigram-overlap heuristic");
  feat->add_option("--punct", fz_punct, "punct_labels.jsonl with reference labels")->required();
  feat->add_option("--out", fz_out, "features.csv to write")->required();
  feat->add_option("--threshold", fz_opts.ratio.threshold,
                   "probability at or above which a window counts as coherent")
      ->capture_default_str();
  feat->add_option("--window", fz_opts.window, "window size the predictions refer to (2 or 3)")
      ->capture_default_str();
  feat->add_option("--empty-ratio", fz_opts.ratio.empty_default,
                   "coherence ratio assigned to an essay with no windows")
      ->capture_default_str();

  // count-punct
  std::string cp_essays, cp_punct, cp_out;
  auto* countp = app.add_subcommand("count-punct", "Count punctuation errors per essay");
  countp->add_option("--essays", cp_essays, "essays.jsonl")->required();
  countp->add_option("--punct", cp_punct, "punct_labels.jsonl with reference labels")->required();
  countp->add_option("--out", cp_out, "punct_counts.csv to write")->required();

  // train
  std::string tr_features, tr_out, tr_report, tr_kind = "gbrt", tr_monotone = "on";
  TrainOptions tr_opts;
  std::optional<std::uint64_t> tr_seed;
  auto* train = app.add_subcommand("train", "Train a coherence scorer");
  train->add_option("--features", tr_features, "features.csv with a level column")->required();
  train->add_option("--out", tr_out, "model.json to write")->required();
  train->add_option("--report", tr_report, "report.json to write (default: standard output)");
  train->add_option("--model", tr_kind, "gbrt, rf or linear")
      ->check(CLI::IsMember({"gbrt", "rf", "linear"}))
      ->capture_default_str();
  train->add_option("--monotone", tr_monotone, "monotone constraints for gbrt: on or off")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  train->add_option("--rounds", tr_opts.gbrt.n_rounds, "boosting rounds")->capture_default_str();
  train->add_option("--depth", tr_opts.gbrt.max_depth, "maximum tree depth")->capture_default_str();
  train->add_option("--lr", tr_opts.gbrt.learning_rate, "learning rate")->capture_default_str();
  train->add_option("--min-samples-leaf", tr_opts.gbrt.min_samples_leaf, "minimum leaf size")
      ->capture_default_str();
  train->add_option("--trees", tr_opts.rf_trees, "random forest size")->capture_default_str();
  train->add_option("--seed", tr_seed, "random seed (required for rf)");

  // predict
  std::string pr_features, pr_model, pr_out;
  auto* pred = app.add_subcommand("predict", "Score essays with a trained model");
  pred->add_option("--features", pr_features, "features.csv")->required();
  pred->add_option("--model-file", pr_model, "model.json")->required();
  pred->add_option("--out", pr_out, "predictions.csv to write")->required();

  // evaluate
  std::string ev_pred, ev_gold, ev_out;
  auto* eval = app.add_subcommand("evaluate", "Precision, recall and macro F1 against gold levels");
  eval->add_option("--pred", ev_pred, "predictions.csv")->required();
  eval->add_option("--gold", ev_gold, "features.csv or essays.jsonl holding gold levels")
      ->required();
  eval->add_option("--out", ev_out, "report.json to write (default: standard output)");

  // synth
  std::string sy_dir;
  SynthConfig sy_cfg;
  auto* synth = app.add_subcommand("synth", "Write a synthetic labelled corpus");
  synth->add_option("--out-dir", sy_dir, "directory for essays.jsonl and punct_labels.jsonl")
      ->required();
  synth->add_option("--n", sy_cfg.n_essays, "number of essays")->capture_default_str();
  synth->add_option("--seed", sy_cfg.seed, "random seed (mandatory)")->required();

  // compare
  std::string cm_essays, cm_punct, cm_coh2, cm_coh3, cm_out;
  std::size_t cm_train = 0;
  std::uint64_t cm_seed = 0;
  bool cm_heuristic = false;
  TrainConfig cm_cfg;
  auto* compare = app.add_subcommand(
      "compare", "Train linear, random forest and GBRT variants on one split and tabulate");
  compare->add_option("--essays", cm_essays, "essays.jsonl with gold levels")->required();
  compare->add_option("--punct", cm_punct, "punct_labels.jsonl")->required();
  compare->add_option("--coh-bisent", cm_coh2, "coh_preds.jsonl for 2-sentence windows");
  compare->add_option("--coh-trisent", cm_coh3, "coh_preds.jsonl for 3-sentence windows");
  compare->add_flag("--heuristic", cm_heuristic, "fill missing window predictions heuristically");
  compare->add_option("--train", cm_train, "number of leading essays used for training")
      ->required();
  compare->add_option("--seed", cm_seed, "random seed for the forest (mandatory)")->required();
  compare->add_option("--out", cm_out, "comparison JSON to write");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (*segment) {
    check_window_size(seg_window);
    const auto essays = io::read_essays(seg_in);
    auto out = io::open_out(seg_out);
    std::size_t count = 0;
    for (const Essay& e : essays) {
      for (const Window& w : essay_windows(e, seg_window)) {
        io::write_window(out, w);
        ++count;
      }
    }
    std::cout << "essays: " << essays.size() << "\nwindows: " << count << "\n";
  } else if (*gen) {
    check_window_size(gs_window);
    const auto essays = io::read_essays(gs_in);
    const SampleSet set = gen_dataset(essays, gs_window, gs_seed);
    auto out = io::open_out(gs_out);
    for (const auto& s : set.samples) io::write_sample(out, s);
    if (set.samples.empty()) {
      std::cerr << "warning: no essay has at least " << gs_window << " sentences; no samples\n";
    }
    std::cout << "positives: " << set.positives << "\nnegatives: " << set.negatives << "\n";
  } else if (*feat) {
    if (fz_coh.empty() && !fz_opts.heuristic) {
      throw InputError("featurize needs --coh, --heuristic or both");
    }
    const auto essays = io::read_essays(fz_essays);
    const auto labels = load_punct(fz_punct);
    std::optional<io::CohPreds> preds;
    if (!fz_coh.empty()) preds = load_coh(fz_coh);
    const auto rows = featurize(essays, preds ? &*preds : nullptr, labels, fz_opts);
    auto out = io::open_out(fz_out);
    io::write_features(out, rows);
    std::cout << "rows: " << rows.size() << "\n";
  } else if (*countp) {
    const auto essays = io::read_essays(cp_essays);
    const auto labels = load_punct(cp_punct);
    std::vector<std::pair<std::string, PunctErrorCounts>> rows;
    for (const Essay& e : essays) {
      auto it = labels.find(e.id);
      if (it == labels.end()) throw InputError("essay '" + e.id + "': no punctuation labels");
      rows.emplace_back(e.id, count_essay(essay_text(e), io::reference_for(e, it->second)));
    }
    auto out = io::open_out(cp_out);
    io::write_punct_counts(out, rows);
    std::cout << "essays: " << rows.size() << "\n";
  } else if (*train) {
    tr_opts.kind = model_kind_from_string(tr_kind);
    tr_opts.monotone = tr_monotone == "on";
    tr_opts.seed = tr_seed;
    const auto rows = io::read_features(tr_features);
    const TrainResult result = train_pipeline(rows, tr_opts);
    save_model(result.model, tr_out);
    write_json(to_json(result.report), tr_report);
  } else if (*pred) {
    const auto rows = io::read_features(pr_features);
    const Model model = load_model(pr_model);
    const auto preds = predict_pipeline(rows, model);
    auto out = io::open_out(pr_out);
    io::write_predictions(out, preds);
    std::cout << "rows: " << preds.size() << "\n";
  } else if (*eval) {
    auto in = io::open_in(ev_pred);
    const auto preds = io::read_predictions(in);
    const auto gold = load_gold(ev_gold);
    std::vector<CoherenceLevel> p, g;
    for (const auto& row : preds) {
      auto it = gold.find(row.essay_id);
      if (it == gold.end()) throw InputError("no gold level for essay '" + row.essay_id + "'");
      p.push_back(row.level);
      g.push_back(it->second);
    }
    write_json(to_json(evaluate(p, g)), ev_out);
  } else if (*synth) {
    const SynthCorpus corpus = synth_corpus(sy_cfg);
    std::filesystem::create_directories(sy_dir);
    auto essays_out = io::open_out(sy_dir + "/essays.jsonl");
    auto labels_out = io::open_out(sy_dir + "/punct_labels.jsonl");
    for (const Essay& e : corpus.essays) {
      io::write_essay(essays_out, e);
      const auto& rec = corpus.reference_labels.at(e.id);
      io::write_punct_labels(labels_out, e.id, io::reference_for(e, rec));
    }
    std::cout << "essays: " << corpus.essays.size() << "\n";
  } else if (*compare) {
    const auto essays = io::read_essays(cm_essays);
    if (cm_train == 0 || cm_train >= essays.size()) {
      throw InputError("--train must leave at least one essay on each side of the split");
    }
    const auto labels = load_punct(cm_punct);
    auto split_for = [&](int k, const std::string& coh_path) {
      if (coh_path.empty() && !cm_heuristic) {
        throw InputError("compare needs --coh-bisent/--coh-trisent or --heuristic");
      }
      std::optional<io::CohPreds> preds;
      if (!coh_path.empty()) preds = load_coh(coh_path);
      FeaturizeOptions opts;
      opts.window = k;
      opts.heuristic = cm_heuristic;
      auto rows = featurize(essays, preds ? &*preds : nullptr, labels, opts);
      FeatureSplit split;
      split.train.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(cm_train));
      split.test.assign(rows.begin() + static_cast<std::ptrdiff_t>(cm_train), rows.end());
      return split;
    };
    const auto rows = compare_models(split_for(2, cm_coh2), split_for(3, cm_coh3), cm_cfg, cm_seed);
    std::cout << format_comparison(rows);
    if (!cm_out.empty()) write_json(to_json(rows), cm_out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const essaycoh::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const essaycoh::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
