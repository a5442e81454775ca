#pragma once

#include <cstdint>
#include <vector>

#include "sumprod/kernels.hpp"
#include "sumprod/util.hpp"

namespace sumprod {

/// Dense bitset over element indices [0, nbits). Tail bits past nbits are kept
/// zero so whole-word kernels need no masking.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::uint32_t nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

  std::uint32_t size_bits() const { return nbits_; }
  std::size_t words() const { return w_.size(); }

  bool test(std::uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(std::uint32_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void reset(std::uint32_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
  void clear() { std::fill(w_.begin(), w_.end(), 0); }

  std::uint64_t count() const { return k().popcount(w_.data(), w_.size()); }
  bool none() const {
    for (std::uint64_t x : w_)
      if (x) return false;
    return true;
  }
  bool any() const { return !none(); }

  Bitset& operator|=(const Bitset& o) {
    k().or_inplace(w_.data(), o.w_.data(), w_.size());
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    k().and_inplace(w_.data(), o.w_.data(), w_.size());
    return *this;
  }
  Bitset& and_not(const Bitset& o) {
    k().andnot_inplace(w_.data(), o.w_.data(), w_.size());
    return *this;
  }

  bool operator==(const Bitset& o) const {
    return nbits_ == o.nbits_ && k().equals(w_.data(), o.w_.data(), w_.size());
  }
  bool is_subset_of(const Bitset& o) const { return k().is_subset(w_.data(), o.w_.data(), w_.size()); }
  bool intersects(const Bitset& o) const { return k().intersects(w_.data(), o.w_.data(), w_.size()); }
  std::uint64_t and_count(const Bitset& o) const {
    return k().and_popcount(w_.data(), o.w_.data(), w_.size());
  }
  std::uint64_t and_not_count(const Bitset& o) const {
    return k().andnot_popcount(w_.data(), o.w_.data(), w_.size());
  }

  // smallest set index, or -1
  std::int64_t first_set() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return static_cast<std::int64_t>(i * 64 + static_cast<std::size_t>(__builtin_ctzll(w_[i])));
    return -1;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t word = w_[i];
      while (word) {
        std::uint32_t bit = static_cast<std::uint32_t>(__builtin_ctzll(word));
        f(static_cast<std::uint32_t>(i * 64 + bit));
        word &= word - 1;
      }
    }
  }

  std::vector<std::uint32_t> to_indices() const {
    std::vector<std::uint32_t> out;
    out.reserve(static_cast<std::size_t>(count()));
    for_each([&](std::uint32_t i) { out.push_back(i); });
    return out;
  }

  const std::uint64_t* data() const { return w_.data(); }

 private:
  static const kernels::Ops& k() {
    static const kernels::Ops& ops = kernels::active_ops();
    return ops;
  }

  std::uint32_t nbits_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace sumprod
