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

#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace pgc {

using QubitId = std::uint32_t;

/// Sorted set of qubit indices backed by a dynamic bitset. Trailing zero
/// words are trimmed so equal sets compare equal regardless of history.
class QubitSet {
 public:
  QubitSet() = default;
  QubitSet(std::initializer_list<QubitId> qs);
  explicit QubitSet(const std::vector<QubitId>& qs);

  bool contains(QubitId q) const;
  void insert(QubitId q);
  void erase(QubitId q);
  void toggle(QubitId q);

  bool empty() const { return words_.empty(); }
  std::size_t size() const;
  std::optional<QubitId> min() const;
  std::optional<QubitId> max() const;
  std::vector<QubitId> to_vector() const;

  std::size_t intersection_size(const QubitSet& other) const;
  QubitSet operator^(const QubitSet& other) const;
  QubitSet operator|(const QubitSet& other) const;
  QubitSet operator&(const QubitSet& other) const;
  QubitSet& operator^=(const QubitSet& other);
  QubitSet& operator|=(const QubitSet& other);
  bool intersects(const QubitSet& other) const;

  /// Parity of the overlap with `other` (1 when odd).
  bool odd_overlap(const QubitSet& other) const { return intersection_size(other) % 2 == 1; }

  friend bool operator==(const QubitSet&, const QubitSet&) = default;
  friend bool operator<(const QubitSet& a, const QubitSet& b) { return a.to_vector() < b.to_vector(); }

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::string to_string() const;

 private:
  void trim();
  std::vector<std::uint64_t> words_;
};

}  // namespace pgc
