// Copyright 2026 The choreokit Authors
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

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace choreokit::testing {

// Pair counting over all element pairs: a = together in both, b = together
// only in pred, c = together only in truth, d = apart in both.
inline double OracleAri(const std::vector<std::size_t>& pred,
                        const std::vector<std::size_t>& truth) {
  double a = 0, b = 0, c = 0, d = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    for (std::size_t j = i + 1; j < pred.size(); ++j) {
      const bool p = pred[i] == pred[j], t = truth[i] == truth[j];
      if (p && t) a += 1;
      else if (p) b += 1;
      else if (t) c += 1;
      else d += 1;
    }
  }
  const double denom = (a + b) * (b + d) + (a + c) * (c + d);
  if (denom == 0.0) return 1.0;
  return 2.0 * (a * d - b * c) / denom;
}

// Entropies and mutual information summed element by element.
inline double OracleNmi(const std::vector<std::size_t>& pred,
                        const std::vector<std::size_t>& truth, bool geometric = false) {
  const double n = static_cast<double>(pred.size());
  auto count = [&](auto&& pred_fn) {
    double c = 0;
    for (std::size_t k = 0; k < pred.size(); ++k) c += pred_fn(k) ? 1 : 0;
    return c;
  };
  double hp = 0, ht = 0, mi = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double pi = count([&](std::size_t k) { return pred[k] == pred[i]; }) / n;
    const double ti = count([&](std::size_t k) { return truth[k] == truth[i]; }) / n;
    const double ji =
        count([&](std::size_t k) { return pred[k] == pred[i] && truth[k] == truth[i]; }) / n;
    // Each element contributes 1/n of its block's term.
    hp -= std::log(pi) / n;
    ht -= std::log(ti) / n;
    mi += std::log(ji / (pi * ti)) / n;
  }
  bool same = true;
  for (std::size_t i = 0; i < pred.size(); ++i)
    for (std::size_t j = 0; j < pred.size(); ++j)
      if ((pred[i] == pred[j]) != (truth[i] == truth[j])) same = false;
  if (same) return 1.0;
  if (hp == 0.0 || ht == 0.0) return 0.0;
  return mi / (geometric ? std::sqrt(hp * ht) : 0.5 * (hp + ht));
}

}  // namespace choreokit::testing
