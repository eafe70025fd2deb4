#include "condorcet/subsets.hpp"

#include <sstream>

#include "condorcet/errors.hpp"

namespace condorcet {

std::vector<int> members_of(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

Mask mask_of(std::span<const int> members) {
  Mask m = 0;
  for (int x : members) {
    if (x < 0 || x >= 32) throw InvalidArgument("member " + std::to_string(x) + " out of range");
    m |= bit(x);
  }
  return m;
}

std::string format_mask(Mask m) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int x : members_of(m)) {
    if (!first) os << ',';
    os << x;
    first = false;
  }
  os << '}';
  return os.str();
}

SubsetFamily::SubsetFamily(int ground_size) : k_(ground_size) {
  if (ground_size < 0 || ground_size > kMaxGround)
    throw InvalidArgument("ground size " + std::to_string(ground_size) + " outside 0.." +
                          std::to_string(kMaxGround));
  words_.assign((universe() + 63) / 64, 0);
}

SubsetFamily SubsetFamily::from_bits(int ground_size, std::uint64_t bits) {
  if (ground_size > 6) throw InvalidArgument("from_bits needs ground size <= 6");
  SubsetFamily f(ground_size);
  if (f.universe() < 64) bits &= (1ULL << f.universe()) - 1;
  f.words_[0] = bits;
  return f;
}

SubsetFamily SubsetFamily::from_masks(int ground_size, std::span<const Mask> masks) {
  SubsetFamily f(ground_size);
  const Mask full = full_mask(ground_size);
  for (Mask m : masks) {
    if (!is_subset(m, full)) throw InvalidArgument("subset " + format_mask(m) + " outside ground");
    f.insert(m);
  }
  return f;
}

std::size_t SubsetFamily::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

bool SubsetFamily::is_subfamily_of(const SubsetFamily& other) const {
  if (k_ != other.k_) return false;
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

std::vector<Mask> SubsetFamily::members() const {
  std::vector<Mask> out;
  out.reserve(count());
  for_each([&](Mask m) { out.push_back(m); });
  return out;
}

SubsetFamily SubsetFamily::intersect(const SubsetFamily& other) const {
  if (k_ != other.k_) throw InvalidArgument("ground size mismatch");
  SubsetFamily out = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= other.words_[i];
  return out;
}

SubsetFamily SubsetFamily::unite(const SubsetFamily& other) const {
  if (k_ != other.k_) throw InvalidArgument("ground size mismatch");
  SubsetFamily out = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] |= other.words_[i];
  return out;
}

}  // namespace condorcet
