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

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace choreokit {

// One choreography label such as "B" or "B'". The base is one or more
// uppercase ASCII letters.
struct PatternToken {
  std::string base;
  bool primed = false;

  std::string ToString() const { return primed ? base + "'" : base; }
  PatternToken Mirrored() const { return {base, !primed}; }

  friend auto operator<=>(const PatternToken&, const PatternToken&) = default;
  friend bool operator==(const PatternToken&, const PatternToken&) = default;
};

// A label sequence such as A-A'-B-C. Every primed base must also occur
// unprimed unless it is listed as mirror-only.
class ChoreoPattern {
 public:
  ChoreoPattern() = default;
  // Throws InvalidInput on a token that breaks the grammar or a primed base
  // that never occurs unprimed and is not mirror-only.
  explicit ChoreoPattern(std::vector<PatternToken> labels,
                         std::set<std::string> mirror_only = {});

  const std::vector<PatternToken>& labels() const { return labels_; }
  const std::set<std::string>& mirror_only() const { return mirror_only_; }
  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  const PatternToken& operator[](std::size_t i) const { return labels_[i]; }

  // Distinct bases in order of first occurrence.
  std::vector<std::string> Bases() const;
  // Bases that occur primed at least once.
  std::set<std::string> PrimedBases() const;

  // "A-A'-B".
  std::string ToString() const;

  // Every token's prime flipped. Bases that end up primed-only are declared
  // mirror-only.
  ChoreoPattern WithPrimesToggled() const;

  // Flips primes per base so that each base's first occurrence is unprimed.
  ChoreoPattern Canonicalized() const;

  friend bool operator==(const ChoreoPattern&, const ChoreoPattern&) = default;

 private:
  std::vector<PatternToken> labels_;
  std::set<std::string> mirror_only_;
};

// 0 -> "A", 25 -> "Z", 26 -> "AA", 27 -> "AB", ...
std::string LetterLabel(std::size_t index);

// Parses one token. `position` is the 1-based token index reported on error.
PatternToken ParseToken(std::string_view text, std::size_t position = 1);

// Parses a dash-separated label sequence. Whitespace around tokens is
// ignored. Errors name the 1-based position of the offending token.
ChoreoPattern ParsePattern(std::string_view text,
                           std::set<std::string> mirror_only = {});

}  // namespace choreokit
