// Copyright 2026 The Authors.
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

#include "ocrs/elem_set.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ocrs {
namespace {

int WordCount(int universe_size) { return (universe_size + 63) / 64; }

}  // namespace

void ElemSet::Iterator::Advance() {
  const int num_words = static_cast<int>(set_->words_.size());
  while (bits_ == 0 && word_ + 1 < num_words) {
    ++word_;
    bits_ = set_->words_[word_];
  }
  if (bits_ == 0) word_ = num_words;
}

ElemSet::ElemSet(int universe_size) : universe_size_(universe_size) {
  if (universe_size < 0) {
    throw std::invalid_argument("ElemSet: negative universe size");
  }
  words_.assign(WordCount(universe_size), 0);
}

ElemSet::ElemSet(int universe_size, std::initializer_list<ElementId> ids)
    : ElemSet(universe_size) {
  for (ElementId e : ids) Insert(e);
}

ElemSet::ElemSet(int universe_size, std::span<const ElementId> ids)
    : ElemSet(universe_size) {
  for (ElementId e : ids) Insert(e);
}

ElemSet ElemSet::Full(int universe_size) {
  ElemSet s(universe_size);
  std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
  if (universe_size % 64 != 0) {
    s.words_.back() = (std::uint64_t{1} << (universe_size % 64)) - 1;
  }
  return s;
}

ElemSet ElemSet::FromMask(int universe_size, std::uint64_t mask) {
  if (universe_size > 64) {
    throw std::invalid_argument("ElemSet::FromMask: universe exceeds 64");
  }
  ElemSet s(universe_size);
  if (universe_size == 0) return s;
  if (universe_size < 64 && (mask >> universe_size) != 0) {
    throw std::out_of_range("ElemSet::FromMask: bits outside the universe");
  }
  s.words_[0] = mask;
  return s;
}

void ElemSet::Insert(ElementId e) {
  if (e < 0 || e >= universe_size_) {
    throw std::out_of_range("element " + std::to_string(e) +
                            " outside universe of size " +
                            std::to_string(universe_size_));
  }
  words_[e >> 6] |= std::uint64_t{1} << (e & 63);
}

void ElemSet::Erase(ElementId e) {
  if (e < 0 || e >= universe_size_) return;
  words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63));
}

void ElemSet::Clear() { std::fill(words_.begin(), words_.end(), 0); }

int ElemSet::Size() const {
  int total = 0;
  for (std::uint64_t w : words_) total += std::popcount(w);
  return total;
}

bool ElemSet::Empty() const {
  return std::all_of(words_.begin(), words_.end(),
                     [](std::uint64_t w) { return w == 0; });
}

bool ElemSet::IsSubsetOf(const ElemSet& other) const {
  CheckSameUniverse(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

bool ElemSet::Intersects(const ElemSet& other) const {
  CheckSameUniverse(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

std::uint64_t ElemSet::Mask() const {
  if (universe_size_ > 64) {
    throw std::logic_error("ElemSet::Mask: universe exceeds 64");
  }
  return words_.empty() ? 0 : words_[0];
}

std::vector<ElementId> ElemSet::ToVector() const {
  std::vector<ElementId> out;
  out.reserve(Size());
  for (ElementId e : *this) out.push_back(e);
  return out;
}

std::string ElemSet::ToString() const {
  std::string out = "{";
  bool first = true;
  for (ElementId e : *this) {
    if (!first) out += ",";
    out += std::to_string(e);
    first = false;
  }
  return out + "}";
}

ElemSet::Iterator ElemSet::begin() const {
  if (words_.empty()) return end();
  return Iterator(this, 0, words_[0]);
}

ElemSet::Iterator ElemSet::end() const {
  return Iterator(this, static_cast<int>(words_.size()), 0);
}

ElemSet& ElemSet::operator|=(const ElemSet& other) {
  CheckSameUniverse(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

ElemSet& ElemSet::operator&=(const ElemSet& other) {
  CheckSameUniverse(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

ElemSet& ElemSet::operator-=(const ElemSet& other) {
  CheckSameUniverse(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    words_[i] &= ~other.words_[i];
  }
  return *this;
}

std::strong_ordering ElemSet::operator<=>(const ElemSet& other) const {
  if (auto c = universe_size_ <=> other.universe_size_; c != 0) return c;
  for (std::size_t i = words_.size(); i-- > 0;) {
    if (auto c = words_[i] <=> other.words_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

void ElemSet::CheckSameUniverse(const ElemSet& other) const {
  if (universe_size_ != other.universe_size_) {
    throw std::invalid_argument("ElemSet: universe size mismatch (" +
                                std::to_string(universe_size_) + " vs " +
                                std::to_string(other.universe_size_) + ")");
  }
}

bool LexicographicLess(const ElemSet& a, const ElemSet& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (*ia != *ib) return *ia < *ib;
  }
  return ia == a.end() && ib != b.end();
}

}  // namespace ocrs
