// Copyright 2026 The pgc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pgc/qubit_set.hpp"

#include <algorithm>
#include <bit>

namespace pgc {

QubitSet::QubitSet(std::initializer_list<QubitId> qs) {
  for (QubitId q : qs) insert(q);
}

QubitSet::QubitSet(const std::vector<QubitId>& qs) {
  for (QubitId q : qs) insert(q);
}

bool QubitSet::contains(QubitId q) const {
  std::size_t w = q / 64;
  return w < words_.size() && ((words_[w] >> (q % 64)) & 1U);
}

void QubitSet::insert(QubitId q) {
  std::size_t w = q / 64;
  if (w >= words_.size()) words_.resize(w + 1, 0);
  words_[w] |= std::uint64_t{1} << (q % 64);
}

void QubitSet::erase(QubitId q) {
  std::size_t w = q / 64;
  if (w >= words_.size()) return;
  words_[w] &= ~(std::uint64_t{1} << (q % 64));
  trim();
}

void QubitSet::toggle(QubitId q) {
  if (contains(q)) {
    erase(q);
  } else {
    insert(q);
  }
}

std::size_t QubitSet::size() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::optional<QubitId> QubitSet::min() const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] != 0) return static_cast<QubitId>(i * 64 + std::countr_zero(words_[i]));
  }
  return std::nullopt;
}

std::optional<QubitId> QubitSet::max() const {
  if (words_.empty()) return std::nullopt;
  std::size_t i = words_.size() - 1;
  return static_cast<QubitId>(i * 64 + 63 - std::countl_zero(words_[i]));
}

std::vector<QubitId> QubitSet::to_vector() const {
  std::vector<QubitId> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w != 0) {
      out.push_back(static_cast<QubitId>(i * 64 + std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

std::size_t QubitSet::intersection_size(const QubitSet& other) const {
  std::size_t n = 0;
  std::size_t m = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < m; ++i) n += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
  return n;
}

QubitSet QubitSet::operator^(const QubitSet& other) const {
  QubitSet out = *this;
  out ^= other;
  return out;
}

QubitSet& QubitSet::operator^=(const QubitSet& other) {
  if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
  for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] ^= other.words_[i];
  trim();
  return *this;
}

QubitSet& QubitSet::operator|=(const QubitSet& other) {
  if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
  for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

bool QubitSet::intersects(const QubitSet& other) const {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

QubitSet QubitSet::operator|(const QubitSet& other) const {
  QubitSet out = *this;
  if (other.words_.size() > out.words_.size()) out.words_.resize(other.words_.size(), 0);
  for (std::size_t i = 0; i < other.words_.size(); ++i) out.words_[i] |= other.words_[i];
  return out;
}

QubitSet QubitSet::operator&(const QubitSet& other) const {
  QubitSet out;
  std::size_t m = std::min(words_.size(), other.words_.size());
  out.words_.assign(words_.begin(), words_.begin() + static_cast<std::ptrdiff_t>(m));
  for (std::size_t i = 0; i < m; ++i) out.words_[i] &= other.words_[i];
  out.trim();
  return out;
}

std::string QubitSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (QubitId q : to_vector()) {
    if (!first) s += ",";
    s += std::to_string(q);
    first = false;
  }
  return s + "}";
}

void QubitSet::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

}  // namespace pgc
