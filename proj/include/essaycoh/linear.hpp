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

// Ordinary least squares with intercept.
//
// The normal equations are formed on centered data and solved with a
// Cholesky factorization of (C + eps * I), eps = 1e-8, which stays positive
// definite for duplicated or constant columns. A few rounds of iterated
// refinement against the unregularized system then remove the ridge bias
// along well-conditioned directions, while directions in the null space of
// C stay at zero (minimum-norm behaviour).

#ifndef ESSAYCOH_LINEAR_HPP_
#define ESSAYCOH_LINEAR_HPP_

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "essaycoh/errors.hpp"
#include "essaycoh/gbrt.hpp"
#include "essaycoh/model.hpp"
#include "essaycoh/tree.hpp"

namespace essaycoh {

inline constexpr double kRidgeEpsilon = 1e-8;
inline constexpr int kRefinementSteps = 4;

namespace detail {

// In-place Cholesky of a symmetric positive definite d x d matrix (row-major,
// lower triangle used).
inline void cholesky(std::vector<double>& a, std::size_t d) {
  for (std::size_t j = 0; j < d; ++j) {
    double diag = a[j * d + j];
    for (std::size_t k = 0; k < j; ++k) diag -= a[j * d + k] * a[j * d + k];
    if (!(diag > 0.0)) throw InvariantError("normal matrix is not positive definite");
    const double l = std::sqrt(diag);
    a[j * d + j] = l;
    for (std::size_t i = j + 1; i < d; ++i) {
      double s = a[i * d + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * d + k] * a[j * d + k];
      a[i * d + j] = s / l;
    }
  }
}

inline std::vector<double> cholesky_solve(const std::vector<double>& l, std::size_t d,
                                          std::vector<double> b) {
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < i; ++k) b[i] -= l[i * d + k] * b[k];
    b[i] /= l[i * d + i];
  }
  for (std::size_t i = d; i-- > 0;) {
    for (std::size_t k = i + 1; k < d; ++k) b[i] -= l[k * d + i] * b[k];
    b[i] /= l[i * d + i];
  }
  return b;
}

}  // namespace detail

inline LinearModel fit_linear(const Matrix& x, std::span<const double> y,
                              std::vector<std::string> feature_names = {}) {
  check_training_data(x, y);
  if (feature_names.empty()) feature_names = default_feature_names(x.cols());
  if (feature_names.size() != x.cols()) {
    throw InputError("feature name count does not match columns");
  }
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();

  std::vector<double> x_mean(d, 0.0);
  double y_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) x_mean[j] += x(i, j);
    y_mean += y[i];
  }
  for (double& m : x_mean) m /= static_cast<double>(n);
  y_mean /= static_cast<double>(n);

  std::vector<double> gram(d * d, 0.0);
  std::vector<double> rhs(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double yc = y[i] - y_mean;
    for (std::size_t j = 0; j < d; ++j) {
      const double xj = x(i, j) - x_mean[j];
      rhs[j] += xj * yc;
      for (std::size_t k = 0; k <= j; ++k) gram[j * d + k] += xj * (x(i, k) - x_mean[k]);
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < j; ++k) gram[k * d + j] = gram[j * d + k];
  }

  std::vector<double> factor = gram;
  for (std::size_t j = 0; j < d; ++j) factor[j * d + j] += kRidgeEpsilon;
  detail::cholesky(factor, d);

  std::vector<double> beta = detail::cholesky_solve(factor, d, rhs);
  for (int step = 0; step < kRefinementSteps; ++step) {
    std::vector<double> r = rhs;
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) r[j] -= gram[j * d + k] * beta[k];
    }
    const std::vector<double> delta = detail::cholesky_solve(factor, d, r);
    for (std::size_t j = 0; j < d; ++j) beta[j] += delta[j];
  }

  LinearModel model;
  model.coefficients = beta;
  model.intercept = y_mean;
  for (std::size_t j = 0; j < d; ++j) model.intercept -= beta[j] * x_mean[j];
  model.feature_names = std::move(feature_names);
  return model;
}

}  // namespace essaycoh

#endif  // ESSAYCOH_LINEAR_HPP_
