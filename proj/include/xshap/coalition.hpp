/*
 * Copyright 2026 The xshap Authors.
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

#ifndef XSHAP_COALITION_HPP
#define XSHAP_COALITION_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace xshap {

// A subset of the players {0, ..., n-1}, stored as a bitset. Two coalitions
// over the same n compare equal iff they have the same members, so the
// representation doubles as a memoization key.
class Coalition {
 public:
  explicit Coalition(std::size_t players);

  static Coalition full(std::size_t players);
  // Requires players <= 64 and no bits set at or above `players`.
  static Coalition from_mask(std::uint64_t mask, std::size_t players);
  // Throws InvalidCoalitionError on an out-of-range or repeated index.
  static Coalition of(std::span<const std::size_t> members, std::size_t players);
  static Coalition of(std::initializer_list<std::size_t> members, std::size_t players);

  std::size_t players() const noexcept { return players_; }
  std::size_t size() const noexcept;
  bool empty() const noexcept { return size() == 0; }
  bool contains(std::size_t i) const noexcept;

  void insert(std::size_t i);
  void erase(std::size_t i);
  Coalition with(std::size_t i) const;
  Coalition without(std::size_t i) const;

  // Same members, viewed as a coalition over the first `players` players.
  // Members at or above `players` are dropped.
  Coalition restricted(std::size_t players) const;
  // Same members over a larger universe.
  Coalition extended(std::size_t players) const;

  // Members in ascending order.
  std::vector<std::size_t> members() const;
  // Low 64 bits. Only meaningful when players() <= 64.
  std::uint64_t mask() const noexcept { return words()[0]; }
  // Comma-separated ascending indices; "" for the empty coalition.
  std::string key() const;

  std::span<const std::uint64_t> words() const noexcept;

  friend bool operator==(const Coalition& a, const Coalition& b) noexcept;

 private:
  std::span<std::uint64_t> mutable_words() noexcept;
  void check_index(std::size_t i) const;

  std::size_t players_;
  std::uint64_t inline_word_ = 0;
  std::vector<std::uint64_t> heap_words_;  // used when players_ > 64
};

struct CoalitionHash {
  std::size_t operator()(const Coalition& c) const noexcept;
};

}  // namespace xshap

#endif  // XSHAP_COALITION_HPP
