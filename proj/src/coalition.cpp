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

#include "xshap/coalition.hpp"

#include <algorithm>
#include <bit>

#include "xshap/error.hpp"

namespace xshap {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t players) {
  return std::max<std::size_t>(1, (players + kWordBits - 1) / kWordBits);
}

}  // namespace

Coalition::Coalition(std::size_t players) : players_(players) {
  if (players > kWordBits) heap_words_.assign(word_count(players), 0);
}

Coalition Coalition::full(std::size_t players) {
  Coalition c(players);
  auto words = c.mutable_words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    const std::size_t lo = w * kWordBits;
    const std::size_t bits = std::min(kWordBits, players - std::min(players, lo));
    words[w] = bits == kWordBits ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
  }
  return c;
}

Coalition Coalition::from_mask(std::uint64_t mask, std::size_t players) {
  if (players > kWordBits) {
    throw InvalidCoalitionError("mask construction requires at most 64 players");
  }
  if (players < kWordBits && (mask >> players) != 0) {
    throw InvalidCoalitionError("mask has members outside [0, " +
                                std::to_string(players) + ")");
  }
  Coalition c(players);
  c.inline_word_ = mask;
  return c;
}

Coalition Coalition::of(std::span<const std::size_t> members, std::size_t players) {
  Coalition c(players);
  for (std::size_t i : members) {
    c.check_index(i);
    if (c.contains(i)) {
      throw InvalidCoalitionError("repeated member " + std::to_string(i));
    }
    c.insert(i);
  }
  return c;
}

Coalition Coalition::of(std::initializer_list<std::size_t> members, std::size_t players) {
  return of(std::span<const std::size_t>(members.begin(), members.size()), players);
}

std::span<const std::uint64_t> Coalition::words() const noexcept {
  if (players_ > kWordBits) return heap_words_;
  return {&inline_word_, 1};
}

std::span<std::uint64_t> Coalition::mutable_words() noexcept {
  if (players_ > kWordBits) return heap_words_;
  return {&inline_word_, 1};
}

void Coalition::check_index(std::size_t i) const {
  if (i >= players_) {
    throw InvalidCoalitionError("player index " + std::to_string(i) +
                                " out of range for n=" + std::to_string(players_));
  }
}

std::size_t Coalition::size() const noexcept {
  std::size_t count = 0;
  for (std::uint64_t w : words()) count += static_cast<std::size_t>(std::popcount(w));
  return count;
}

bool Coalition::contains(std::size_t i) const noexcept {
  if (i >= players_) return false;
  return (words()[i / kWordBits] >> (i % kWordBits)) & 1u;
}

void Coalition::insert(std::size_t i) {
  check_index(i);
  mutable_words()[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits);
}

void Coalition::erase(std::size_t i) {
  check_index(i);
  mutable_words()[i / kWordBits] &= ~(std::uint64_t{1} << (i % kWordBits));
}

Coalition Coalition::with(std::size_t i) const {
  Coalition c = *this;
  c.insert(i);
  return c;
}

Coalition Coalition::without(std::size_t i) const {
  Coalition c = *this;
  c.erase(i);
  return c;
}

Coalition Coalition::restricted(std::size_t players) const {
  Coalition c(players);
  auto src = words();
  auto dst = c.mutable_words();
  const std::size_t n = std::min(src.size(), dst.size());
  std::copy_n(src.begin(), n, dst.begin());
  const std::size_t tail = players % kWordBits;
  if (players == 0) {
    dst[0] = 0;
  } else if (tail != 0 && dst.size() <= src.size()) {
    dst[dst.size() - 1] &= (std::uint64_t{1} << tail) - 1;
  }
  return c;
}

Coalition Coalition::extended(std::size_t players) const {
  if (players < players_) {
    throw InvalidCoalitionError("cannot extend to a smaller player set");
  }
  Coalition c(players);
  auto src = words();
  std::copy(src.begin(), src.end(), c.mutable_words().begin());
  return c;
}

std::vector<std::size_t> Coalition::members() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  auto ws = words();
  for (std::size_t w = 0; w < ws.size(); ++w) {
    std::uint64_t bits = ws[w];
    while (bits != 0) {
      out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::string Coalition::key() const {
  std::string out;
  for (std::size_t i : members()) {
    if (!out.empty()) out += ',';
    out += std::to_string(i);
  }
  return out;
}

bool operator==(const Coalition& a, const Coalition& b) noexcept {
  if (a.players_ != b.players_) return false;
  auto wa = a.words();
  auto wb = b.words();
  return std::equal(wa.begin(), wa.end(), wb.begin(), wb.end());
}

std::size_t CoalitionHash::operator()(const Coalition& c) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull ^ c.players();
  for (std::uint64_t w : c.words()) {
    h ^= w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace xshap
