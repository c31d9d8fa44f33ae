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

// model.json, format_version 1:
//
//   {"format_version": 1, "kind": "gbrt"|"rf"|"linear",
//    "base_score": f, "learning_rate": f,
//    "feature_names": [...], "constraints": [-1|0|1, ...],
//    "trees": [{"nodes": [{"feature": i, "threshold": f, "left": j, "right": k}
//                         | {"value": f}]}],
//    "coefficients": [f, ...]}            (linear only)
//
// Node 0 is the root. Reals are written with 17 significant digits so that
// a reloaded model predicts bit-identically. A linear model stores its
// intercept in base_score and has no trees.

#ifndef ESSAYCOH_MODEL_IO_HPP_
#define ESSAYCOH_MODEL_IO_HPP_

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "essaycoh/errors.hpp"
#include "essaycoh/model.hpp"

namespace essaycoh {

inline constexpr int kModelFormatVersion = 1;

namespace detail {

inline std::string format_real(double v) {
  if (!std::isfinite(v)) throw InvariantError("cannot serialize non-finite number");
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

template <class Seq, class Fn>
std::string json_array(const Seq& seq, Fn&& fn) {
  std::string out = "[";
  bool first = true;
  for (const auto& v : seq) {
    if (!first) out += ", ";
    first = false;
    out += fn(v);
  }
  return out + "]";
}

inline std::string tree_json(const RegressionTree& tree) {
  return "{\"nodes\": " + json_array(tree.nodes(), [](const TreeNode& n) {
           if (n.is_leaf()) return "{\"value\": " + format_real(n.value) + "}";
           return "{\"feature\": " + std::to_string(n.feature) +
                  ", \"threshold\": " + format_real(n.threshold) +
                  ", \"left\": " + std::to_string(n.left) +
                  ", \"right\": " + std::to_string(n.right) + "}";
         }) + "}";
}

inline const nlohmann::json& require(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string("model.json: missing field '") + key + "'");
  }
  return j.at(key);
}

inline double require_number(const nlohmann::json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_number()) throw InputError(std::string("model.json: '") + key + "' is not a number");
  return v.get<double>();
}

inline int require_int(const nlohmann::json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_number_integer()) {
    throw InputError(std::string("model.json: '") + key + "' is not an integer");
  }
  return v.get<int>();
}

}  // namespace detail

inline std::string model_to_json(const Model& model) {
  using detail::format_real;
  using detail::json_array;
  std::ostringstream out;
  const auto& names = feature_names(model);
  out << "{\"format_version\": " << kModelFormatVersion << ",\n";
  out << " \"kind\": \"" << to_string(kind_of(model)) << "\",\n";
  if (const auto* e = std::get_if<TreeEnsemble>(&model)) {
    out << " \"base_score\": " << format_real(e->base_score) << ",\n";
    out << " \"learning_rate\": " << format_real(e->learning_rate) << ",\n";
    out << " \"feature_names\": " << json_array(names, detail::json_string) << ",\n";
    out << " \"constraints\": "
        << json_array(e->constraints, [](Monotone m) { return std::to_string(sign(m)); })
        << ",\n";
    out << " \"trees\": [";
    for (std::size_t t = 0; t < e->trees.size(); ++t) {
      out << (t ? ",\n  " : "\n  ") << detail::tree_json(e->trees[t]);
    }
    out << (e->trees.empty() ? "]\n" : "\n ]\n");
  } else {
    const auto& lin = std::get<LinearModel>(model);
    out << " \"base_score\": " << format_real(lin.intercept) << ",\n";
    out << " \"learning_rate\": 1,\n";
    out << " \"feature_names\": " << json_array(names, detail::json_string) << ",\n";
    out << " \"constraints\": "
        << json_array(names, [](const std::string&) { return std::string("0"); }) << ",\n";
    out << " \"trees\": [],\n";
    out << " \"coefficients\": " << json_array(lin.coefficients, format_real) << "\n";
  }
  out << "}\n";
  return out.str();
}

inline Model model_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("model.json: ") + e.what());
  }
  using detail::require;
  if (detail::require_int(j, "format_version") != kModelFormatVersion) {
    throw InputError("model.json: unsupported format_version");
  }
  const auto& kind_j = require(j, "kind");
  if (!kind_j.is_string()) throw InputError("model.json: 'kind' is not a string");
  const ModelKind kind = model_kind_from_string(kind_j.get<std::string>());

  std::vector<std::string> names;
  for (const auto& n : require(j, "feature_names")) {
    if (!n.is_string()) throw InputError("model.json: feature name is not a string");
    names.push_back(n.get<std::string>());
  }
  std::vector<Monotone> constraints;
  for (const auto& c : require(j, "constraints")) {
    if (!c.is_number_integer()) throw InputError("model.json: constraint is not an integer");
    constraints.push_back(monotone_from_int(c.get<int>()));
  }
  if (constraints.size() != names.size()) {
    throw InputError("model.json: constraints and feature_names differ in length");
  }
  const double base = detail::require_number(j, "base_score");
  const double lr = detail::require_number(j, "learning_rate");

  if (kind == ModelKind::kLinear) {
    LinearModel m;
    m.intercept = base;
    m.feature_names = std::move(names);
    for (const auto& c : require(j, "coefficients")) {
      if (!c.is_number()) throw InputError("model.json: coefficient is not a number");
      m.coefficients.push_back(c.get<double>());
    }
    if (m.coefficients.size() != m.feature_names.size()) {
      throw InputError("model.json: coefficient count does not match feature_names");
    }
    return m;
  }

  TreeEnsemble m;
  m.kind = kind;
  m.base_score = base;
  m.learning_rate = lr;
  m.feature_names = std::move(names);
  m.constraints = std::move(constraints);
  const auto& trees = require(j, "trees");
  if (!trees.is_array()) throw InputError("model.json: 'trees' is not an array");
  for (const auto& t : trees) {
    std::vector<TreeNode> nodes;
    for (const auto& nj : require(t, "nodes")) {
      TreeNode node;
      if (nj.contains("value")) {
        node.value = detail::require_number(nj, "value");
      } else {
        node.feature = detail::require_int(nj, "feature");
        node.threshold = detail::require_number(nj, "threshold");
        node.left = detail::require_int(nj, "left");
        node.right = detail::require_int(nj, "right");
        if (node.feature < 0) throw InputError("model.json: negative feature index");
      }
      nodes.push_back(node);
    }
    RegressionTree tree(std::move(nodes));
    tree.validate(m.feature_names.size());
    m.trees.push_back(std::move(tree));
  }
  return m;
}

inline void save_model(const Model& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << model_to_json(model);
  if (!out) throw InputError("failed writing " + path);
}

inline Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

}  // namespace essaycoh

#endif  // ESSAYCOH_MODEL_IO_HPP_
