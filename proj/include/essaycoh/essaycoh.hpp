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

// Umbrella header.

#ifndef ESSAYCOH_ESSAYCOH_HPP_
#define ESSAYCOH_ESSAYCOH_HPP_

#include "essaycoh/corpus.hpp"
#include "essaycoh/errors.hpp"
#include "essaycoh/experiment.hpp"
#include "essaycoh/featurize.hpp"
#include "essaycoh/forest.hpp"
#include "essaycoh/gbrt.hpp"
#include "essaycoh/io.hpp"
#include "essaycoh/linear.hpp"
#include "essaycoh/metrics.hpp"
#include "essaycoh/model.hpp"
#include "essaycoh/model_io.hpp"
#include "essaycoh/punct.hpp"
#include "essaycoh/random.hpp"
#include "essaycoh/sampling.hpp"
#include "essaycoh/scorer.hpp"
#include "essaycoh/synth.hpp"
#include "essaycoh/tree.hpp"
#include "essaycoh/utf8.hpp"

#endif  // ESSAYCOH_ESSAYCOH_HPP_
