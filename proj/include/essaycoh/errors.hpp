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

#ifndef ESSAYCOH_ERRORS_HPP_
#define ESSAYCOH_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace essaycoh {

// Bad user input: malformed files, schema violations, out-of-range values.
// The CLI maps this family to exit status 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Original and reference punctuation sequences do not share the same base
// text. Carries the first differing character index.
class AlignmentError : public InputError {
 public:
  AlignmentError(std::size_t index, const std::string& what)
      : InputError(what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// Broken internal invariant. The CLI maps this to exit status 2.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace essaycoh

#endif  // ESSAYCOH_ERRORS_HPP_
