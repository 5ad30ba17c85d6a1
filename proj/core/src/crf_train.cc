// Copyright 2026 The QEDL Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <vector>

#include "qedl/crf.h"
#include "qedl/errors.h"

namespace qedl {

CrfModel TrainCrf(const std::vector<LabeledSequence> &corpus,
                  const std::vector<std::string> &templates,
                  const CrfTrainingOptions &options,
                  std::vector<double> *history) {
  if (corpus.empty()) throw InvalidArgument("empty CRF training corpus");
  if (options.l2 < 0.0) throw InvalidArgument("l2 must be non-negative");
  if (options.epochs < 0) throw InvalidArgument("epochs must be >= 0");
  if (!(options.step_size > 0.0)) {
    throw InvalidArgument("step_size must be positive");
  }

  CrfModel model(templates);
  std::vector<EncodedExample> data;
  data.reserve(corpus.size());
  for (const LabeledSequence &seq : corpus) {
    if (seq.observations.size() != seq.labels.size()) {
      throw InvalidArgument("gold labels and observations differ in length");
    }
    if (seq.observations.empty()) continue;
    data.push_back({model.EncodeAndRegister(seq.observations), seq.labels});
  }
  model.l2 = options.l2;
  model.epochs = options.epochs;
  model.seed = options.seed;

  const double scale = 1.0 / static_cast<double>(corpus.size());
  std::vector<double> gradient;
  double current = CrfObjective(model, data, options.l2, &gradient);
  if (history) history->assign(1, current);

  std::vector<double> previous;
  double step = options.step_size;
  std::span<double> params = model.parameters();
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    previous.assign(params.begin(), params.end());
    for (size_t i = 0; i < params.size(); ++i) {
      params[i] += step * scale * gradient[i];
    }
    std::vector<double> next_gradient;
    double next = CrfObjective(model, data, options.l2, &next_gradient);
    if (next >= current && std::isfinite(next)) {
      current = next;
      gradient.swap(next_gradient);
    } else {
      // Overshot: undo and retry next epoch with half the step.
      std::copy(previous.begin(), previous.end(), params.begin());
      step *= 0.5;
    }
    if (history) history->push_back(current);
  }
  model.objective = current;
  return model;
}

}  // namespace qedl
