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

#include "choreokit/pattern.h"

#include <map>
#include <utility>

#include "choreokit/error.h"

namespace choreokit {
namespace {

bool IsValidBase(std::string_view base) {
  if (base.empty()) return false;
  for (char c : base) {
    if (c < 'A' || c > 'Z') return false;
  }
  return true;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\n' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\n' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

ChoreoPattern::ChoreoPattern(std::vector<PatternToken> labels,
                             std::set<std::string> mirror_only)
    : labels_(std::move(labels)), mirror_only_(std::move(mirror_only)) {
  std::set<std::string> unprimed;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!IsValidBase(labels_[i].base)) {
      throw InvalidInput("malformed label '" + labels_[i].ToString() +
                         "' at token " + std::to_string(i + 1));
    }
    if (!labels_[i].primed) unprimed.insert(labels_[i].base);
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const PatternToken& t = labels_[i];
    if (t.primed && !unprimed.count(t.base) && !mirror_only_.count(t.base)) {
      throw InvalidInput("primed label " + t.ToString() + " at token " +
                         std::to_string(i + 1) + " has no unprimed base " +
                         t.base);
    }
  }
}

std::vector<std::string> ChoreoPattern::Bases() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const PatternToken& t : labels_) {
    if (seen.insert(t.base).second) out.push_back(t.base);
  }
  return out;
}

std::set<std::string> ChoreoPattern::PrimedBases() const {
  std::set<std::string> out;
  for (const PatternToken& t : labels_) {
    if (t.primed) out.insert(t.base);
  }
  return out;
}

std::string ChoreoPattern::ToString() const {
  std::string out;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i) out += '-';
    out += labels_[i].ToString();
  }
  return out;
}

ChoreoPattern ChoreoPattern::WithPrimesToggled() const {
  std::vector<PatternToken> toggled;
  std::set<std::string> unprimed;
  toggled.reserve(labels_.size());
  for (const PatternToken& t : labels_) {
    toggled.push_back(t.Mirrored());
    if (!toggled.back().primed) unprimed.insert(t.base);
  }
  std::set<std::string> mirror_only;
  for (const PatternToken& t : toggled) {
    if (t.primed && !unprimed.count(t.base)) mirror_only.insert(t.base);
  }
  return ChoreoPattern(std::move(toggled), std::move(mirror_only));
}

ChoreoPattern ChoreoPattern::Canonicalized() const {
  std::map<std::string, bool> flip;
  for (const PatternToken& t : labels_) flip.emplace(t.base, t.primed);
  std::vector<PatternToken> out;
  out.reserve(labels_.size());
  for (const PatternToken& t : labels_) {
    out.push_back({t.base, t.primed != flip[t.base]});
  }
  return ChoreoPattern(std::move(out));
}

std::string LetterLabel(std::size_t index) {
  std::string out;
  std::size_t n = index + 1;
  while (n > 0) {
    --n;
    out.insert(out.begin(), static_cast<char>('A' + n % 26));
    n /= 26;
  }
  return out;
}

PatternToken ParseToken(std::string_view text, std::size_t position) {
  std::string_view s = Trim(text);
  PatternToken token;
  if (!s.empty() && s.back() == '\'') {
    token.primed = true;
    s.remove_suffix(1);
  }
  if (!IsValidBase(s)) {
    throw InvalidInput("malformed label '" + std::string(Trim(text)) +
                       "' at token " + std::to_string(position) +
                       " (expected uppercase letters with an optional ')");
  }
  token.base = std::string(s);
  return token;
}

ChoreoPattern ParsePattern(std::string_view text,
                           std::set<std::string> mirror_only) {
  std::vector<PatternToken> labels;
  if (Trim(text).empty()) return ChoreoPattern({}, std::move(mirror_only));
  std::size_t position = 1;
  std::size_t start = 0;
  for (;;) {
    const std::size_t dash = text.find('-', start);
    const std::string_view piece =
        text.substr(start, dash == std::string_view::npos ? std::string_view::npos
                                                          : dash - start);
    labels.push_back(ParseToken(piece, position));
    if (dash == std::string_view::npos) break;
    start = dash + 1;
    ++position;
  }
  return ChoreoPattern(std::move(labels), std::move(mirror_only));
}

}  // namespace choreokit
