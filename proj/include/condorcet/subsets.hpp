#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace condorcet {

// A subset of {0, ..., k-1} with k <= 32, one bit per element.
using Mask = std::uint32_t;

inline constexpr int kMaxGround = 24;

inline int popcount(Mask m) { return std::popcount(m); }
inline bool has(Mask m, int x) { return (m >> x) & 1U; }
inline Mask bit(int x) { return Mask{1} << x; }
inline Mask full_mask(int k) { return k >= 32 ? ~Mask{0} : (Mask{1} << k) - 1; }
inline bool is_subset(Mask a, Mask b) { return (a & ~b) == 0; }

std::vector<int> members_of(Mask m);
Mask mask_of(std::span<const int> members);
std::string format_mask(Mask m);  // "{0,2,5}"

// Extensional family of subsets of a ground set {0..k-1}. One bit per subset,
// indexed by the subset's mask, so membership is O(1) and iteration order is
// ascending mask order.
class SubsetFamily {
 public:
  SubsetFamily() = default;
  explicit SubsetFamily(int ground_size);

  // Families over k <= 6 fit in one word; bit s set means subset s belongs.
  static SubsetFamily from_bits(int ground_size, std::uint64_t bits);
  static SubsetFamily from_masks(int ground_size, std::span<const Mask> masks);

  template <class Pred>
  static SubsetFamily from_predicate(int ground_size, Pred&& pred) {
    SubsetFamily f(ground_size);
    for (std::size_t s = 0; s < f.universe(); ++s)
      if (pred(static_cast<Mask>(s))) f.insert(static_cast<Mask>(s));
    return f;
  }

  int ground_size() const { return k_; }
  std::size_t universe() const { return std::size_t{1} << k_; }

  bool contains(Mask s) const { return (words_[s >> 6] >> (s & 63)) & 1ULL; }
  void insert(Mask s) { words_[s >> 6] |= 1ULL << (s & 63); }
  void erase(Mask s) { words_[s >> 6] &= ~(1ULL << (s & 63)); }

  std::size_t count() const;
  bool empty() const { return count() == 0; }
  bool is_subfamily_of(const SubsetFamily& other) const;
  std::vector<Mask> members() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word) {
        int b = std::countr_zero(word);
        f(static_cast<Mask>(w * 64 + b));
        word &= word - 1;
      }
    }
  }

  SubsetFamily intersect(const SubsetFamily& other) const;
  SubsetFamily unite(const SubsetFamily& other) const;

  bool operator==(const SubsetFamily&) const = default;

 private:
  int k_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace condorcet
