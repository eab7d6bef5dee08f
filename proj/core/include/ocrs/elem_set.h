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

#ifndef OCRS_ELEM_SET_H_
#define OCRS_ELEM_SET_H_

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <string>
#include <vector>

namespace ocrs {

// Dense index of an element of a ground set, in [0, universe_size).
using ElementId = int;

// A subset of the universe {0, ..., n-1}, stored as a packed bitset.
//
// Every set carries the size of its universe; binary operations require both
// operands to share it. Sets over universes of at most 64 elements occupy a
// single word, so rank and span loops on small matroids reduce to word
// operations.
class ElemSet {
 public:
  class Iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = ElementId;
    using difference_type = std::ptrdiff_t;
    using pointer = const ElementId*;
    using reference = ElementId;

    Iterator() = default;
    Iterator(const ElemSet* set, int word, std::uint64_t bits)
        : set_(set), word_(word), bits_(bits) {
      Advance();
    }

    ElementId operator*() const {
      return word_ * 64 + std::countr_zero(bits_);
    }
    Iterator& operator++() {
      bits_ &= bits_ - 1;
      Advance();
      return *this;
    }
    Iterator operator++(int) {
      Iterator copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const Iterator& other) const {
      return word_ == other.word_ && bits_ == other.bits_;
    }

   private:
    void Advance();

    const ElemSet* set_ = nullptr;
    int word_ = 0;
    std::uint64_t bits_ = 0;
  };

  ElemSet() = default;
  explicit ElemSet(int universe_size);
  ElemSet(int universe_size, std::initializer_list<ElementId> ids);
  ElemSet(int universe_size, std::span<const ElementId> ids);

  static ElemSet Full(int universe_size);
  // Requires universe_size <= 64; bit i of `mask` is element i.
  static ElemSet FromMask(int universe_size, std::uint64_t mask);

  int universe_size() const { return universe_size_; }

  bool Contains(ElementId e) const {
    return e >= 0 && e < universe_size_ &&
           ((words_[e >> 6] >> (e & 63)) & 1U) != 0;
  }
  // Throws std::out_of_range when e is outside the universe.
  void Insert(ElementId e);
  void Erase(ElementId e);
  void Clear();

  int Size() const;
  bool Empty() const;
  bool IsSubsetOf(const ElemSet& other) const;
  bool Intersects(const ElemSet& other) const;

  // Lowest bits of the set; requires universe_size <= 64.
  std::uint64_t Mask() const;
  std::vector<ElementId> ToVector() const;
  std::string ToString() const;

  Iterator begin() const;
  Iterator end() const;

  ElemSet& operator|=(const ElemSet& other);
  ElemSet& operator&=(const ElemSet& other);
  ElemSet& operator-=(const ElemSet& other);
  ElemSet& operator|=(ElementId e) {
    Insert(e);
    return *this;
  }

  friend ElemSet operator|(ElemSet a, const ElemSet& b) { return a |= b; }
  friend ElemSet operator&(ElemSet a, const ElemSet& b) { return a &= b; }
  friend ElemSet operator-(ElemSet a, const ElemSet& b) { return a -= b; }

  bool operator==(const ElemSet& other) const = default;
  // Total order on words, usable as a map key. Not the lexicographic order
  // on sorted id lists; see LexicographicLess for that.
  std::strong_ordering operator<=>(const ElemSet& other) const;

 private:
  void CheckSameUniverse(const ElemSet& other) const;

  int universe_size_ = 0;
  std::vector<std::uint64_t> words_;
};

// Compares the sorted id lists of two sets lexicographically.
bool LexicographicLess(const ElemSet& a, const ElemSet& b);

}  // namespace ocrs

#endif  // OCRS_ELEM_SET_H_
