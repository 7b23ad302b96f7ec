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

#include "choreokit/metrics.h"

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "choreokit/error.h"

namespace choreokit {
namespace {

double Choose2(double n) { return n * (n - 1.0) / 2.0; }

void CheckSameSize(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  if (a.size() != b.size()) {
    throw InvalidInput("partitions cover different element sets (" +
                       std::to_string(a.size()) + " vs " +
                       std::to_string(b.size()) + " elements)");
  }
}

struct Contingency {
  std::map<std::pair<std::size_t, std::size_t>, double> joint;
  std::map<std::size_t, double> rows;
  std::map<std::size_t, double> cols;
};

// Renumbers blocks by first occurrence so sums run in an id-free order.
std::vector<std::size_t> FirstOccurrenceIds(std::span<const std::size_t> p) {
  std::map<std::size_t, std::size_t> ids;
  std::vector<std::size_t> out;
  out.reserve(p.size());
  for (std::size_t x : p) out.push_back(ids.emplace(x, ids.size()).first->second);
  return out;
}

Contingency Tabulate(std::span<const std::size_t> pred, std::span<const std::size_t> truth) {
  const std::vector<std::size_t> a = FirstOccurrenceIds(pred);
  const std::vector<std::size_t> b = FirstOccurrenceIds(truth);
  Contingency t;
  for (std::size_t i = 0; i < a.size(); ++i) {
    t.joint[{a[i], b[i]}] += 1.0;
    t.rows[a[i]] += 1.0;
    t.cols[b[i]] += 1.0;
  }
  return t;
}

// Same blocks up to renaming.
bool SamePartition(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  std::map<std::size_t, std::size_t> ab, ba;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto [it1, new1] = ab.emplace(a[i], b[i]);
    const auto [it2, new2] = ba.emplace(b[i], a[i]);
    if (it1->second != b[i] || it2->second != a[i]) return false;
  }
  return true;
}

double Entropy(const std::map<std::size_t, double>& counts, double n) {
  double h = 0.0;
  for (const auto& [id, c] : counts) {
    const double p = c / n;
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

double AdjustedRandIndex(std::span<const std::size_t> pred,
                         std::span<const std::size_t> truth) {
  CheckSameSize(pred, truth);
  const double n = static_cast<double>(pred.size());
  const Contingency t = Tabulate(pred, truth);
  double index = 0.0;
  for (const auto& [key, c] : t.joint) index += Choose2(c);
  double sum_rows = 0.0, sum_cols = 0.0;
  for (const auto& [id, c] : t.rows) sum_rows += Choose2(c);
  for (const auto& [id, c] : t.cols) sum_cols += Choose2(c);
  const double pairs = Choose2(n);
  const double expected = pairs > 0.0 ? sum_rows * sum_cols / pairs : 0.0;
  const double max_index = 0.5 * (sum_rows + sum_cols);
  const double denom = max_index - expected;
  if (denom == 0.0) return 1.0;
  return (index - expected) / denom;
}

double NormalizedMutualInformation(std::span<const std::size_t> pred,
                                   std::span<const std::size_t> truth,
                                   NmiNormalization normalization) {
  CheckSameSize(pred, truth);
  if (SamePartition(pred, truth)) return 1.0;
  const double n = static_cast<double>(pred.size());
  const Contingency t = Tabulate(pred, truth);
  const double h_pred = Entropy(t.rows, n);
  const double h_truth = Entropy(t.cols, n);
  if (h_pred == 0.0 || h_truth == 0.0) return 0.0;
  double mi = 0.0;
  for (const auto& [key, c] : t.joint) {
    const double pij = c / n;
    const double pi = t.rows.at(key.first) / n;
    const double pj = t.cols.at(key.second) / n;
    mi += pij * std::log(pij / (pi * pj));
  }
  const double norm = normalization == NmiNormalization::kArithmetic
                          ? 0.5 * (h_pred + h_truth)
                          : std::sqrt(h_pred * h_truth);
  return mi / norm;
}

PrecisionRecall MirrorPairPrf(const std::set<SegmentPair>& pred,
                              const std::set<SegmentPair>& truth) {
  if (pred.empty() && truth.empty()) return {1.0, 1.0, 1.0};
  std::size_t hits = 0;
  for (const SegmentPair& p : pred) hits += truth.count(p);
  PrecisionRecall r;
  r.precision = pred.empty() ? 0.0 : static_cast<double>(hits) / pred.size();
  r.recall = truth.empty() ? 0.0 : static_cast<double>(hits) / truth.size();
  r.f1 = r.precision + r.recall > 0.0
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  return r;
}

std::set<SegmentPair> MirrorSegmentPairs(const ChoreoPattern& pattern) {
  std::set<SegmentPair> out;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    for (std::size_t j = i + 1; j < pattern.size(); ++j) {
      if (pattern[i].base == pattern[j].base &&
          pattern[i].primed != pattern[j].primed) {
        out.emplace(i, j);
      }
    }
  }
  return out;
}

Partition TokenPartition(const ChoreoPattern& pattern) {
  std::map<PatternToken, std::size_t> ids;
  Partition out;
  out.reserve(pattern.size());
  for (const PatternToken& t : pattern.labels()) {
    const auto [it, inserted] = ids.emplace(t, ids.size());
    out.push_back(it->second);
  }
  return out;
}

LabelMetrics EvaluatePattern(const ChoreoPattern& pred, const ChoreoPattern& truth,
                             NmiNormalization normalization) {
  if (pred.size() != truth.size()) {
    throw InvalidInput("patterns differ in length (" + std::to_string(pred.size()) +
                       " vs " + std::to_string(truth.size()) + ")");
  }
  const Partition p = TokenPartition(pred);
  const Partition t = TokenPartition(truth);
  LabelMetrics m;
  m.ari = AdjustedRandIndex(p, t);
  m.nmi = NormalizedMutualInformation(p, t, normalization);
  const PrecisionRecall prf =
      MirrorPairPrf(MirrorSegmentPairs(pred), MirrorSegmentPairs(truth));
  m.mirror_precision = prf.precision;
  m.mirror_recall = prf.recall;
  m.mirror_f1 = prf.f1;
  return m;
}

}  // namespace choreokit
