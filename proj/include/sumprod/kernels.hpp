#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sumprod::kernels {

/// Word-array kernels behind every bitset operation. All functions take the
/// word count, operands must alias only as documented (dst may equal src).
struct Ops {
  const char* name;
  void (*or_inplace)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
  void (*and_inplace)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
  void (*andnot_inplace)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
  std::uint64_t (*popcount)(const std::uint64_t* a, std::size_t n);
  std::uint64_t (*and_popcount)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
  std::uint64_t (*andnot_popcount)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
  bool (*equals)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
  bool (*is_subset)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);  // a & ~b == 0
  bool (*intersects)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
};

const Ops& scalar_ops();

// Null when the CPU (or build) lacks the instruction set.
const Ops* avx2_ops();
const Ops* neon_ops();

/// Kernel selected at startup: best available unless the SUMPROD_KERNEL
/// environment variable ("scalar", "avx2", "neon", "auto") says otherwise.
const Ops& active_ops();

/// Every implementation usable on this machine (scalar first).
std::vector<const Ops*> available_ops();

}  // namespace sumprod::kernels
